"""Normalized port-Hamiltonian realizations.

A pH model ``dx/dt = (J - R) Q x + (G - P) u``, ``y = (G + P)^T Q x + (N + S) u``
with ``J``, ``N`` skew, ``[[R, P], [P^T, S]]`` PSD and ``Q`` PD. The main
entry point :func:`algorithm1` builds one in normalized form (``Q = I``)
directly from spectral-zero interpolation data.
"""

import json
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from .errors import (
    CertificateInvalid,
    DescriptorUnsupported,
    DimensionError,
    DNotStrictlyPositiveReal,
    InvalidSpectralData,
    NotPassiveRealization,
    PickNotPositiveDefinite,
    XNotPositiveDefinite,
)
from .loewner import assemble_realization, build_pencil
from .passivity import check_certificate
from .realification import build_realifier, realify_pencil
from .state_space import StateSpaceRealization, matrix_from_json, matrix_to_json
from .tangential import conjugate_closure, left_from_spectral

PSD_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class PortHamiltonianForm:
    J: np.ndarray
    R: np.ndarray
    G: np.ndarray
    P: np.ndarray
    N: np.ndarray
    S: np.ndarray
    Q: np.ndarray

    def __post_init__(self):
        S = np.atleast_2d(np.asarray(self.S, dtype=float))
        m = S.shape[0]
        n = np.atleast_2d(np.asarray(self.J)).shape[0] if np.size(self.J) else 0
        shapes = {"J": (n, n), "R": (n, n), "Q": (n, n), "G": (n, m), "P": (n, m),
                  "N": (m, m), "S": (m, m)}
        for name, shape in shapes.items():
            M = np.asarray(getattr(self, name), dtype=float)
            if M.size == 0:
                M = np.zeros(shape)
            elif M.size == shape[0] * shape[1]:
                M = M.reshape(shape)
            if M.shape != shape:
                raise DimensionError(f"{name} has shape {M.shape}, expected {shape}")
            M = np.array(M)
            M.setflags(write=False)
            object.__setattr__(self, name, M)

    @property
    def n(self):
        return self.J.shape[0]

    @property
    def m(self):
        return self.S.shape[0]

    @property
    def W_blk(self):
        return np.block([[self.R, self.P], [self.P.T, self.S]])

    @property
    def V_blk(self):
        return np.block([[self.J, self.G], [-self.G.T, self.N]])

    @property
    def is_normalized(self):
        return np.array_equal(self.Q, np.eye(self.n))

    def violations(self, tol=1e-10):
        """Names of broken structural invariants (empty when valid)."""
        out = []
        for name in ("J", "N"):
            M = getattr(self, name)
            if np.linalg.norm(M + M.T) > 1e-12 * max(1.0, np.linalg.norm(M)):
                out.append(f"{name} not skew-symmetric")
        W = self.W_blk
        wn = max(np.linalg.norm(W, 2), 1e-300)
        if np.linalg.norm(W - W.T) > 1e-12 * wn:
            out.append("dissipation block not symmetric")
        elif W.size and np.linalg.eigvalsh(W)[0] < -tol * wn:
            out.append("dissipation block not positive semidefinite")
        Q = self.Q
        if np.linalg.norm(Q - Q.T) > 1e-12 * max(1.0, np.linalg.norm(Q)):
            out.append("Q not symmetric")
        elif self.n and np.linalg.eigvalsh((Q + Q.T) / 2)[0] <= 0:
            out.append("Q not positive definite")
        return out


def pick_cholesky(Lhat):
    """Upper Cholesky factor ``Gamma`` with ``Lhat = Gamma^T Gamma``.

    Raises
    ------
    PickNotPositiveDefinite
        With the order of the first failing leading minor.
    """
    Lhat = np.atleast_2d(np.asarray(Lhat, dtype=float))
    if Lhat.size == 0:
        return np.zeros((0, 0))
    if np.linalg.norm(Lhat - Lhat.T) > 1e-12 * np.linalg.norm(Lhat):
        raise InvalidSpectralData("Pick matrix is not symmetric")
    Gam, info = la.lapack.dpotrf((Lhat + Lhat.T) / 2, lower=0, clean=1)
    if info > 0:
        raise PickNotPositiveDefinite(int(info))
    return np.triu(Gam)


def _left_inv_T(Gam, M):
    """``Gam^{-T} M`` for upper-triangular ``Gam``."""
    return la.solve_triangular(Gam, M, trans="T")


def _right_inv(Gam, M):
    """``M Gam^{-1}``."""
    return la.solve_triangular(Gam, M.T, trans="T").T


def normalize_realization(model, Gam):
    """``(I, Gam^{-T} A Gam^{-1}, Gam^{-T} B, C Gam^{-1}, D)``."""
    if model.n == 0:
        return model
    A = _right_inv(Gam, _left_inv_T(Gam, model.A))
    return StateSpaceRealization(A, _left_inv_T(Gam, model.B), _right_inv(Gam, model.C), model.D)


def extract_ph(model):
    """Read off the normalized pH form of a passive model with ``E = I``.

    ``J = skew(A)``, ``R = -sym(A)``, ``G = (B + C^T)/2``,
    ``P = (C^T - B)/2``, ``N = skew(D)``, ``S = sym(D)``, ``Q = I``.

    Raises
    ------
    NotPassiveRealization
        If ``[[R, P], [P^T, S]]`` has an eigenvalue below ``-1e-8`` times its norm.
    """
    if not model.has_identity_E:
        raise DescriptorUnsupported("extract_ph needs E = I; normalize the realization first")
    if not model.is_real:
        raise DimensionError("extract_ph needs a real model")
    A, B, C, D = (np.real(M) for M in (model.A, model.B, model.C, model.D))
    ph = PortHamiltonianForm(
        J=(A - A.T) / 2,
        R=-(A + A.T) / 2,
        G=(B + C.T) / 2,
        P=(C.T - B) / 2,
        N=(D - D.T) / 2,
        S=(D + D.T) / 2,
        Q=np.eye(model.n),
    )
    W = ph.W_blk
    lmin = np.linalg.eigvalsh(W)[0]
    if lmin < -PSD_TOL * np.linalg.norm(W, 2):
        raise NotPassiveRealization(f"dissipation block has eigenvalue {lmin:.3e} < 0")
    return ph


def reconstruct(ph):
    """``(I, (J - R) Q, G - P, (G + P)^T Q, N + S)``."""
    return StateSpaceRealization(
        (ph.J - ph.R) @ ph.Q, ph.G - ph.P, (ph.G + ph.P).T @ ph.Q, ph.N + ph.S
    )


def check_feedthrough(D):
    D = np.atleast_2d(np.asarray(D, dtype=float))
    lmin = np.linalg.eigvalsh(D + D.T)[0]
    if not lmin > 0:
        raise DNotStrictlyPositiveReal(f"D + D^T must be positive definite, smallest eigenvalue {lmin:.3e}")
    return D


@dataclass(frozen=True, eq=False)
class Construction:
    """Intermediate stages of :func:`algorithm1`, kept for diagnostics."""

    data: object
    pencil: object
    real_pencil: object
    descriptor: StateSpaceRealization
    gamma: np.ndarray
    normalized: StateSpaceRealization
    ph: PortHamiltonianForm

    @property
    def R_gamma(self):
        return _right_inv(self.gamma, self.real_pencil.R)

    @property
    def W_gamma(self):
        return _right_inv(self.gamma, self.real_pencil.W)

    @property
    def Ls_gamma(self):
        return _right_inv(self.gamma, _left_inv_T(self.gamma, self.real_pencil.Ls))

    @property
    def pick_condition(self):
        return float(np.linalg.cond(self.real_pencil.L)) if self.gamma.size else 1.0


def construct(rights, D):
    """Run every step of :func:`algorithm1` and keep the intermediates."""
    D = check_feedthrough(D)
    rights = conjugate_closure(rights)
    ds = left_from_spectral(rights, D)
    pencil = build_pencil(ds)
    real_pencil = realify_pencil(pencil, build_realifier(ds))
    gamma = pick_cholesky(real_pencil.L)
    descriptor = assemble_realization(real_pencil, D)
    normalized = normalize_realization(descriptor, gamma)
    ph = extract_ph(normalized)
    return Construction(ds, pencil, real_pencil, descriptor, gamma, normalized, ph)


def algorithm1(rights, D):
    """Normalized pH realization interpolating spectral-zero data.

    Parameters
    ----------
    rights : list of RightDatum
        ``(lam_j, r_j, w_j)`` with ``Re lam_j > 0`` and ``w_j = Z(lam_j) r_j``;
        missing conjugate partners are added.
    D : array_like
        Feedthrough ``Z(inf)``; ``D + D^T`` must be positive definite.

    Returns
    -------
    PortHamiltonianForm
        With ``Q = I``; its transfer function interpolates the data and has
        the ``lam_j`` (and their mirror images) as spectral zeros.
    """
    return construct(rights, D).ph


def from_certificate(model, X):
    """Normalized pH form obtained from the state transformation ``X = T^T T``.

    Raises
    ------
    XNotPositiveDefinite
        If the Cholesky factorization of ``X`` fails.
    CertificateInvalid
        If ``W(X)`` is not positive semidefinite (within tolerance).
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    X = (X + X.T) / 2
    T, info = la.lapack.dpotrf(X, lower=0, clean=1)
    if info != 0:
        raise XNotPositiveDefinite(f"certificate X is not positive definite (minor {info})")
    T = np.triu(T)
    report = check_certificate(model, X)
    if report.verdict == "invalid":
        raise CertificateInvalid(
            f"KYP matrix is indefinite: smallest eigenvalue {report.lambda_min_W:.3e}"
        )
    A, B, C = (np.real(M) for M in (model.A, model.B, model.C))
    transformed = StateSpaceRealization(_right_inv(T, T @ A), T @ B, _right_inv(T, C), model.D)
    return extract_ph(transformed)


# --- JSON -----------------------------------------------------------------

PH_KEYS = ("J", "R", "G", "P", "N", "S", "Q")


def ph_to_dict(ph):
    return {k: matrix_to_json(getattr(ph, k)) for k in PH_KEYS}


def ph_from_dict(d, tol=1e-10):
    missing = [k for k in PH_KEYS if k not in d]
    if missing:
        raise DimensionError(f"pH file lacks keys {missing}")
    S = matrix_from_json(d["S"])
    m = S.shape[0]
    J = matrix_from_json(d["J"])
    n = J.shape[0]
    mats = {}
    for k in PH_KEYS:
        M = matrix_from_json(d[k])
        if M.size == 0:
            M = np.zeros({"G": (n, m), "P": (n, m)}.get(k, (n, n) if k in "JRQ" else (m, m)))
        mats[k] = M
    ph = PortHamiltonianForm(**mats)
    bad = ph.violations(tol)
    if bad:
        raise NotPassiveRealization("invalid pH model: " + "; ".join(bad))
    return ph


def save_ph(ph, path):
    with open(path, "w") as f:
        json.dump(ph_to_dict(ph), f, indent=1)


def load_ph(path):
    with open(path) as f:
        return ph_from_dict(json.load(f))
