"""Loewner and shifted Loewner matrices and the interpolants they define."""

import csv
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import PointCollision, SingularLoewner, SingularPencil
from .state_space import StateSpaceRealization, _lu_checked
from .tangential import COLLISION_TOL, TangentialDataSet


@dataclass(frozen=True, eq=False)
class LoewnerPencil:
    """The pair ``(L, Ls)`` together with the matrices of its Sylvester equations.

    ``Lam`` and ``Mu`` are the (block-)diagonal point matrices, ``Lrows``
    and ``V`` stack the left directions/responses as rows, ``R`` and ``W``
    stack the right directions/responses as columns, so that::

        L  Lam - Mu L  = Lrows W - V R
        Ls Lam - Mu Ls = Lrows W Lam - Mu V R

    After realification all of these are real and ``Lam``/``Mu`` are block
    diagonal instead of diagonal.
    """

    L: np.ndarray
    Ls: np.ndarray
    Lam: np.ndarray
    Mu: np.ndarray
    Lrows: np.ndarray
    V: np.ndarray
    R: np.ndarray
    W: np.ndarray
    data: Optional[TangentialDataSet] = None
    symmetric_mode: bool = False
    realified: bool = False

    @property
    def n(self):
        return self.L.shape[0]

    @property
    def m(self):
        return self.R.shape[0]

    @property
    def is_real(self):
        return not np.iscomplexobj(self.L)


def build_pencil(ds):
    """Entrywise divided differences of the tangential data.

    ``L[i, j] = (ell_i w_j - v_i r_j) / (lam_j - mu_i)`` and
    ``Ls[i, j] = (lam_j ell_i w_j - mu_i v_i r_j) / (lam_j - mu_i)``.
    For mirrored spectral-zero data the numerators are formed from
    ``G = R^H W`` so that ``L`` is exactly Hermitian and ``Ls`` exactly
    skew-Hermitian.
    """
    lam, mu = ds.Lam, ds.Mu
    R, W, Lr, V = ds.R, ds.W, ds.L, ds.V
    den = lam[None, :] - mu[:, None]
    scale = np.maximum(1.0, np.maximum(np.abs(lam)[None, :], np.abs(mu)[:, None]))
    hit = np.abs(den) <= COLLISION_TOL * scale
    if np.any(hit):
        i, j = np.argwhere(hit)[0]
        raise PointCollision(f"right point {lam[j]} coincides with left point {mu[i]}")
    if ds.spectral:
        G = R.conj().T @ W
        L = (G + G.conj().T) / den
        Ls = (G * lam[None, :] - np.conj(lam)[:, None] * G.conj().T) / den
    else:
        LW = Lr @ W
        VR = V @ R
        L = (LW - VR) / den
        Ls = (LW * lam[None, :] - mu[:, None] * VR) / den
    return LoewnerPencil(
        L=L, Ls=Ls, Lam=np.diag(lam), Mu=np.diag(mu), Lrows=Lr, V=V, R=R, W=W,
        data=ds, symmetric_mode=ds.spectral,
    )


def _backward_error(X, Lam, Mu, rhs):
    """``||X Lam - Mu X - rhs|| / ((||Lam|| + ||Mu||) ||X|| + ||rhs||)`` in the 2-norm."""
    nrm = lambda M: np.linalg.norm(M, 2)
    den = (nrm(Lam) + nrm(Mu)) * nrm(X) + nrm(rhs)
    return float(nrm(X @ Lam - Mu @ X - rhs) / max(den, 1e-300))


def sylvester_residual(p):
    """Normwise relative residuals of the two Sylvester equations.

    ``L Lam - M L = Lrows W - V R`` and
    ``Ls Lam - M Ls = Lrows W Lam - M V R``, each measured as the backward
    error ``||res|| / ((||Lam|| + ||M||) ||X|| + ||rhs||)``.
    """
    if p.n == 0:
        return 0.0, 0.0
    LW, VR = p.Lrows @ p.W, p.V @ p.R
    r1 = _backward_error(p.L, p.Lam, p.Mu, LW - VR)
    r2 = _backward_error(p.Ls, p.Lam, p.Mu, LW @ p.Lam - p.Mu @ VR)
    return r1, r2


def _system_matrices(p, D):
    D = np.atleast_2d(np.asarray(D, dtype=float))
    A = p.Ls - p.Lrows @ D @ p.R
    B = p.V - p.Lrows @ D
    C = -p.W + D @ p.R
    return A, B, C, D


def assemble_realization(p, D):
    """Descriptor realization ``(E, A, B, C, D) = (L, Ls - Lrows D R, V - Lrows D, -W + D R, D)``.

    Raises
    ------
    SingularLoewner
        If the Loewner matrix is numerically singular.
    """
    D = np.atleast_2d(np.asarray(D, dtype=float))
    if p.n == 0:
        m = D.shape[0]
        return StateSpaceRealization(np.zeros((0, 0)), np.zeros((0, m)), np.zeros((m, 0)), D)
    if p.L.shape[0] != p.L.shape[1]:
        raise SingularLoewner("rectangular Loewner matrix; use svd_truncate")
    try:
        _lu_checked(p.L)
    except SingularPencil as exc:
        raise SingularLoewner(f"Loewner matrix is numerically singular: {exc}") from None
    A, B, C, D = _system_matrices(p, D)
    return StateSpaceRealization(A, B, C, D, E=p.L)


def truncation_order(sv, rel_tol):
    """Smallest ``r`` with ``sv[r] / sv[0] <= rel_tol``; ``len(sv)`` if none."""
    sv = np.asarray(sv)
    if sv.size == 0 or sv[0] == 0:
        return 0
    below = np.nonzero(sv[1:] / sv[0] <= rel_tol)[0]
    return int(below[0] + 1) if below.size else int(sv.size)


def svd_truncate(p, D, rel_tol, basis="loewner"):
    """Project the Loewner realization onto its dominant singular subspaces.

    Parameters
    ----------
    p : LoewnerPencil
        Complex self-conjugate pencils are realified first.
    D : array_like
        Value at infinity folded into the realization.
    rel_tol : float
        Relative singular-value threshold in ``[0, 1)``.
    basis : {"loewner", "stacked"}
        ``"loewner"`` takes the SVD of ``L`` alone; ``"stacked"`` uses
        ``[L, Ls]`` for the left and ``[L; Ls]`` for the right subspace.

    Returns
    -------
    model : StateSpaceRealization
        Order-``r`` model with ``E = diag(sv[:r])`` (``"loewner"`` basis).
    sv : ndarray
        All singular values of ``L``.
    """
    if not 0 <= rel_tol < 1:
        raise ValueError(f"rel_tol must lie in [0, 1), got {rel_tol}")
    if not p.is_real and p.data is not None:
        from .realification import build_realifier, realify_pencil
        from .tangential import validate

        if not any(v.kind == "MissingConjugate" for v in validate(p.data)):
            p = realify_pencil(p, build_realifier(p.data))
    A, B, C, D = _system_matrices(p, D)
    Y, sv, Xh = np.linalg.svd(p.L)
    r = truncation_order(sv, rel_tol)
    if basis == "stacked":
        Y, _, _ = np.linalg.svd(np.hstack([p.L, p.Ls]), full_matrices=False)
        _, _, Xh = np.linalg.svd(np.vstack([p.L, p.Ls]), full_matrices=False)
    elif basis != "loewner":
        raise ValueError(f"unknown basis {basis!r}")
    Yr = Y[:, :r]
    Xr = Xh[:r].conj().T
    Er = np.diag(sv[:r]).astype(p.L.dtype) if basis == "loewner" else Yr.conj().T @ p.L @ Xr
    model = StateSpaceRealization(Yr.conj().T @ A @ Xr, Yr.conj().T @ B, C @ Xr, D, E=Er)
    return model, sv


def write_singular_values(sv, path):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["index", "value"])
        for k, s in enumerate(sv, start=1):
            w.writerow([k, repr(float(s))])
