"""Descriptor state-space models, transfer-function evaluation and DOF counts."""

import json
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg as la

from .errors import DimensionError, SingularPencil

EPS = np.finfo(float).eps


def _as_matrix(M, rows=None, cols=None):
    M = np.asarray(M)
    if M.ndim == 0:
        M = M.reshape(1, 1)
    if M.size == 0:
        M = np.zeros((rows or 0, cols or 0), dtype=M.dtype if M.dtype.kind == "c" else float)
    if M.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {M.shape}")
    if M.dtype.kind not in "fc":
        M = M.astype(float)
    return M


@dataclass(frozen=True, eq=False)
class StateSpaceRealization:
    """Generalized state-space model ``Z(s) = C (sE - A)^{-1} B + D``.

    Inputs and outputs have the same dimension ``m``. ``E`` defaults to the
    identity. Matrices are copied and frozen on construction.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    E: Optional[np.ndarray] = None

    def __post_init__(self):
        D = _as_matrix(self.D)
        m = D.shape[0]
        A = _as_matrix(self.A)
        n = A.shape[0]
        B = _as_matrix(self.B, n, m)
        C = _as_matrix(self.C, m, n)
        E = np.eye(n) if self.E is None else _as_matrix(self.E, n, n)
        if m < 1 or D.shape != (m, m):
            raise DimensionError(f"D must be square with m >= 1, got shape {D.shape}")
        if A.shape != (n, n):
            raise DimensionError(f"A must be square, got shape {A.shape}")
        if E.shape != (n, n):
            raise DimensionError(f"E has shape {E.shape}, expected {(n, n)}")
        if B.shape != (n, m):
            raise DimensionError(f"B has shape {B.shape}, expected {(n, m)}")
        if C.shape != (m, n):
            raise DimensionError(f"C has shape {C.shape}, expected {(m, n)}")
        for name, val in zip("EABCD", (E, A, B, C, D)):
            val = np.array(val, copy=True)
            if not np.all(np.isfinite(val)):
                raise DimensionError(f"{name} contains non-finite entries")
            val.setflags(write=False)
            object.__setattr__(self, name, val)

    @property
    def n(self):
        return self.A.shape[0]

    @property
    def m(self):
        return self.D.shape[0]

    @property
    def scalar_field(self):
        mats = (self.E, self.A, self.B, self.C, self.D)
        return "complex" if any(np.iscomplexobj(M) and np.any(M.imag != 0) for M in mats) else "real"

    @property
    def is_real(self):
        return self.scalar_field == "real"

    @property
    def has_identity_E(self):
        return np.array_equal(self.E, np.eye(self.n))

    def real(self):
        """Return a copy with all imaginary parts dropped."""
        return StateSpaceRealization(
            self.A.real, self.B.real, self.C.real, self.D.real, self.E.real
        )

    def transform(self, T):
        """Apply the state transformation ``x -> T x`` (requires ``E = I``)."""
        T = np.asarray(T)
        Ti = np.linalg.inv(T)
        return StateSpaceRealization(T @ self.A @ Ti, T @ self.B, self.C @ Ti, self.D)

    def to_standard(self):
        """Return an equivalent model with ``E = I`` (``E`` must be invertible)."""
        if self.has_identity_E:
            return self
        lu = _lu_checked(self.E)
        return StateSpaceRealization(
            la.lu_solve(lu, self.A), la.lu_solve(lu, self.B), self.C, self.D
        )

    def poles(self):
        if self.n == 0:
            return np.zeros(0, dtype=complex)
        if self.has_identity_E:
            return np.linalg.eigvals(self.A)
        return la.eigvals(self.A, self.E)

    def __call__(self, s):
        return eval_transfer(self, s)

    def __repr__(self):
        return f"StateSpaceRealization(n={self.n}, m={self.m}, {self.scalar_field})"


def lu_rcond(M):
    """LU factors of ``M`` and the LAPACK estimate of ``1 / cond_1(M)``."""
    with warnings.catch_warnings():
        # singularity is reported through rcond
        warnings.simplefilter("ignore", la.LinAlgWarning)
        lu, piv = la.lu_factor(M, check_finite=False)
    anorm = np.linalg.norm(M, 1)
    (gecon,) = la.get_lapack_funcs(("gecon",), (lu,))
    rcond, info = gecon(lu, anorm, norm="1")
    return (lu, piv), float(rcond), float(anorm)


def _lu_checked(M):
    """LU factorization with partial pivoting; raise if cond_1(M) > 1/eps."""
    if M.shape[0] == 0:
        return None
    lu, rcond, anorm = lu_rcond(M)
    if anorm == 0 or not np.isfinite(rcond) or rcond < EPS:
        raise SingularPencil(f"matrix is numerically singular (rcond={rcond:.3e})")
    return lu


def _resolvent_apply(model, s, rhs):
    if model.n == 0:
        return np.zeros((0, rhs.shape[1]), dtype=complex)
    lu = _lu_checked(s * model.E - model.A)
    return la.lu_solve(lu, rhs.astype(complex), check_finite=False)


def eval_transfer(model, s):
    """Evaluate ``Z(s) = C (sE - A)^{-1} B + D``.

    Raises
    ------
    SingularPencil
        If ``sE - A`` is numerically singular, i.e. ``s`` is (close to) a pole.
    """
    s = complex(s)
    X = _resolvent_apply(model, s, model.B)
    return model.C @ X + model.D


def eval_phi(model, s):
    """Spectral density ``Phi(s) = Z(-s)^T + Z(s)``."""
    return eval_transfer(model, -s).T + eval_transfer(model, s)


def freqresp(model, omegas):
    """Stack ``Z(i w)`` for every ``w`` in ``omegas``; shape ``(k, m, m)``."""
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    out = np.empty((omegas.size, model.m, model.m), dtype=complex)
    for k, w in enumerate(omegas):
        out[k] = eval_transfer(model, 1j * w)
    return out


def relative_error(model, reference, omegas):
    """Per-frequency ``||Z(iw) - Zref(iw)||_2 / ||Zref(iw)||_2``."""
    Z = freqresp(model, omegas)
    Zr = freqresp(reference, omegas)
    num = np.linalg.norm(Z - Zr, ord=2, axis=(1, 2))
    den = np.linalg.norm(Zr, ord=2, axis=(1, 2))
    return num / den


@dataclass(frozen=True)
class DofQuery:
    """Degree ``n``, port dimension ``m`` and rank of ``Z(inf)``.

    ``rank=None`` encodes a strictly proper transfer function.
    """

    n: int
    m: int
    rank: Optional[int] = None

    def __post_init__(self):
        if self.n < 0 or self.m < 1:
            raise DimensionError(f"need n >= 0 and m >= 1, got n={self.n}, m={self.m}")
        if self.rank is not None and not 0 <= self.rank <= self.m:
            raise DimensionError(f"rank must lie in [0, m], got {self.rank}")


def dof_count(q):
    """Real degrees of freedom of an ``m x m`` real rational function of degree ``n``.

    ``2mn`` when strictly proper, ``2m(n + r) - r^2`` when proper with
    ``rank Z(inf) = r``.
    """
    if q.rank is None:
        return 2 * q.m * q.n
    r = q.rank
    return 2 * q.m * (q.n + r) - r * r


# --- JSON -----------------------------------------------------------------

def matrix_to_json(M):
    M = np.asarray(M)
    if np.iscomplexobj(M) and np.any(M.imag != 0):
        return [[[float(z.real), float(z.imag)] for z in row] for row in M]
    return [[float(x) for x in row] for row in np.real(M)]


def matrix_from_json(obj):
    """Parse a row-major nested list of numbers or ``[re, im]`` pairs."""
    if obj is None:
        return None
    if not isinstance(obj, list):
        return np.array([[obj]], dtype=float)
    if len(obj) == 0:
        return np.zeros((0, 0))
    rows = []
    is_complex = False
    for row in obj:
        if not isinstance(row, list):
            raise DimensionError("matrix rows must be lists")
        vals = []
        for x in row:
            if isinstance(x, list):
                if len(x) != 2:
                    raise DimensionError(f"complex entries must be [re, im] pairs, got {x}")
                vals.append(complex(x[0], x[1]))
                is_complex = True
            else:
                vals.append(x)
        rows.append(vals)
    if len({len(r) for r in rows}) > 1:
        raise DimensionError("ragged matrix rows")
    return np.array(rows, dtype=complex if is_complex else float)


def model_to_dict(model):
    d = {k: matrix_to_json(getattr(model, k)) for k in "ABCD"}
    if not model.has_identity_E:
        d["E"] = matrix_to_json(model.E)
    return d


def model_from_dict(d):
    missing = [k for k in "ABCD" if k not in d]
    if missing:
        raise DimensionError(f"model file lacks keys {missing}")
    D = matrix_from_json(d["D"])
    A = matrix_from_json(d["A"])
    n = A.shape[0]
    m = D.shape[0]
    B = matrix_from_json(d["B"])
    C = matrix_from_json(d["C"])
    if n == 0:
        B, C = np.zeros((0, m)), np.zeros((m, 0))
    E = matrix_from_json(d.get("E"))
    return StateSpaceRealization(A, B, C, D, E)


def save_model(model, path):
    with open(path, "w") as f:
        json.dump(model_to_dict(model), f, indent=1)


def load_model(path):
    with open(path) as f:
        return model_from_dict(json.load(f))
