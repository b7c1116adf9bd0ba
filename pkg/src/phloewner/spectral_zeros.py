"""Spectral zeros and zero directions of a (descriptor) realization.

The zeros of ``Phi(s) = Z(-s)^T + Z(s)`` are the finite eigenvalues of the
even pencil::

    [[A,  0,    B      ],        [[E, 0,   0],
     [0, -A^T, -C^T    ],  - s    [0, E^T, 0],
     [C,  B^T,  D + D^T]]         [0, 0,   0]]

and the trailing ``m`` entries of an eigenvector give the zero direction.
"""

import csv
from dataclasses import dataclass, field
from typing import List

import numpy as np
import scipy.linalg as la

from .errors import ResidualCheckFailed, SingularEvenPencil, SingularPencil, UnexpectedZeroCount
from .state_space import eval_phi, eval_transfer, lu_rcond
from .tangential import RightDatum, conjugate_closure

INF_TOL = 1e-12
RESIDUAL_TOL = 1e-8
AXIS_TOL = 1e-8
# eigenvectors whose port block is this small belong to uncontrollable or
# unobservable modes, not to zeros of Phi
DIRECTION_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class SpectralZeroSet:
    zeros: np.ndarray
    directions: List[np.ndarray]
    source: str = ""
    residuals: np.ndarray = field(default=None)

    def __len__(self):
        return len(self.zeros)


def normalize_direction(r, tie_tol=1e-8):
    """Unit 2-norm, with the largest-modulus entry real and nonnegative.

    Entries within ``tie_tol`` (relative) of the maximum modulus count as
    ties; the lowest index wins.
    """
    r = np.asarray(r, dtype=complex)
    r = r / np.linalg.norm(r)
    mags = np.abs(r)
    k = int(np.nonzero(mags >= mags.max() * (1 - tie_tol))[0][0])
    r = r * (np.conj(r[k]) / abs(r[k]))
    r[k] = abs(r[k])
    return r


def even_pencil(model):
    n, m = model.n, model.m
    A, B, C, D, E = model.A, model.B, model.C, model.D, model.E
    Z = np.zeros
    M0 = np.block([
        [A, Z((n, n)), B],
        [Z((n, n)), -A.T, -C.T],
        [C, B.T, D + D.T],
    ])
    N0 = np.block([
        [E, Z((n, n)), Z((n, m))],
        [Z((n, n)), E.T, Z((n, m))],
        [Z((m, n)), Z((m, n)), Z((m, m))],
    ])
    return M0, N0


def phi_scale(model, lam):
    """1-norm size of the terms that make up ``Phi(lam)``.

    ``||D + D^T|| + ||C|| ||B|| (||(lam E - A)^{-1}|| + ||(-lam E - A)^{-1}||)``,
    with the inverse norms taken from the LU condition estimate. Near a pole
    the computed ``Phi`` carries an error proportional to this, not to
    ``||Phi||``.
    """
    scale = np.linalg.norm(model.D + model.D.T, 1)
    cb = np.linalg.norm(model.C, 1) * np.linalg.norm(model.B, 1)
    for s in (lam, -lam):
        _, rcond, anorm = lu_rcond(s * model.E - model.A)
        scale += cb / max(rcond * anorm, 1e-300)
    return scale


def phi_residual(model, lam, r):
    """``||Phi(lam) r||_1`` relative to ``max(1, ||Phi(lam)||_1, phi_scale)``."""
    P = eval_phi(model, lam)
    ref = max(1.0, np.linalg.norm(P, 1), phi_scale(model, lam))
    return np.linalg.norm(P @ r, 1) / ref


def compute_spectral_zeros(model, source=""):
    """All finite spectral zeros with normalized directions.

    Raises
    ------
    SingularEvenPencil
        If the even pencil is singular (an eigenvalue with ``alpha ~ beta ~ 0``).
    ResidualCheckFailed
        If some pair violates ``||Phi(lam) r|| <= 1e-8`` relative to
        :func:`phi_scale`.
    """
    if model.n == 0:
        return SpectralZeroSet(np.zeros(0, dtype=complex), [], source, np.zeros(0))
    M0, N0 = even_pencil(model)
    (alpha, beta), vecs = la.eig(M0, N0, homogeneous_eigvals=True)
    scale_m = np.linalg.norm(M0, 1)
    scale_n = max(np.linalg.norm(N0, 1), 1e-300)
    tiny = 1e-14
    if np.any((np.abs(alpha) <= tiny * scale_m) & (np.abs(beta) <= tiny * scale_n)):
        raise SingularEvenPencil("even pencil is numerically singular")
    finite = np.abs(beta) > INF_TOL * np.abs(alpha)
    n = model.n
    zeros, dirs, res, bad = [], [], [], []
    for k in np.nonzero(finite)[0]:
        lam = alpha[k] / beta[k]
        v = vecs[:, k]
        u = v[2 * n:]
        if np.linalg.norm(u) <= DIRECTION_TOL * np.linalg.norm(v):
            continue
        r = normalize_direction(u)
        try:
            rr = phi_residual(model, lam, r)
        except SingularPencil:
            rr = np.inf
        if not rr <= RESIDUAL_TOL:
            bad.append((lam, rr))
        zeros.append(lam)
        dirs.append(r)
        res.append(rr)
    if bad:
        raise ResidualCheckFailed(
            f"{len(bad)} spectral zero(s) fail the residual check: "
            + ", ".join(f"{z:.6g} ({e:.1e})" for z, e in bad),
            offending=bad,
        )
    return SpectralZeroSet(np.array(zeros, dtype=complex), dirs, source, np.array(res))


def _canonical_pairs(zeros, dirs):
    data = [RightDatum(z, r, r) for z, r in zip(zeros, dirs)]
    ordered = conjugate_closure(data)
    if len(ordered) != len(data):
        # QZ on real pencils returns exact conjugate pairs; a mismatch means
        # complex input, in which case keep what was found
        ordered = sorted(data, key=lambda d: (abs(d.lam.imag), d.lam.real, -d.lam.imag))
    return ordered


def filter_rhp(zs, n_expected=None):
    """Keep the open right half-plane zeros in canonical order.

    ``n_expected=None`` skips the count check.

    Raises
    ------
    UnexpectedZeroCount
        If a zero sits on the imaginary axis (``|Re| <= 1e-8 (1 + |lam|)``)
        or the number of right half-plane zeros differs from ``n_expected``.
    """
    zeros = np.asarray(zs.zeros)
    on_axis = np.abs(zeros.real) <= AXIS_TOL * (1 + np.abs(zeros))
    rhp = (zeros.real > 0) & ~on_axis
    found = int(rhp.sum())
    if np.any(on_axis):
        raise UnexpectedZeroCount(
            found, n_expected,
            f"{int(on_axis.sum())} spectral zero(s) on the imaginary axis; system not strictly passive",
        )
    if n_expected is not None and found != n_expected:
        raise UnexpectedZeroCount(found, n_expected)
    idx = np.nonzero(rhp)[0]
    ordered = _canonical_pairs(zeros[idx], [zs.directions[i] for i in idx])
    res_lookup = {}
    if zs.residuals is not None:
        for i in idx:
            res_lookup[complex(zeros[i])] = zs.residuals[i]
    return SpectralZeroSet(
        np.array([d.lam for d in ordered], dtype=complex),
        [d.r for d in ordered],
        zs.source,
        np.array([res_lookup.get(d.lam, np.nan) for d in ordered]),
    )


def spectral_data_from_model(model, n):
    """Right interpolation data ``(lam_j, r_j, Z(lam_j) r_j)`` at the RHP spectral zeros.

    The responses of the lower member of each conjugate pair are set to the
    exact conjugate of the upper member's response (the model is real).
    """
    zs = filter_rhp(compute_spectral_zeros(model), n)
    out = []
    prev = None
    for lam, r in zip(zs.zeros, zs.directions):
        if prev is not None and prev.lam == np.conj(lam) and lam.imag < 0 and model.is_real:
            out.append(prev.conj())
            prev = None
            continue
        d = RightDatum(lam, r, eval_transfer(model, lam) @ r)
        out.append(d)
        prev = d if lam.imag > 0 else None
    return conjugate_closure(out)


def write_zeros_csv(zs, path):
    m = len(zs.directions[0]) if zs.directions else 0
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        head = ["re", "im"]
        for k in range(1, m + 1):
            head += [f"re_r{k}", f"im_r{k}"]
        w.writerow(head)
        for z, r in zip(zs.zeros, zs.directions):
            row = [repr(float(z.real)), repr(float(z.imag))]
            for x in r:
                row += [repr(float(x.real)), repr(float(x.imag))]
            w.writerow(row)
