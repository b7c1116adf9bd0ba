"""KYP matrices, certificate checks and positive-realness sweeps."""

import csv
from dataclasses import dataclass

import numpy as np

from .errors import DescriptorUnsupported, SingularPencil
from .state_space import eval_transfer

VERDICT_TOL = 1e-8


def _sym(M):
    return (M + M.T) / 2


def kyp_matrix(model, X):
    """``W(X) = [[-A^T X - X A, C^T - X B], [C - B^T X, D + D^T]]``, exactly symmetric."""
    if not model.has_identity_E:
        raise DescriptorUnsupported("the KYP matrix needs a model with E = I")
    if not model.is_real:
        raise DescriptorUnsupported("the KYP matrix needs a real model")
    A, B, C, D = (np.real(M) for M in (model.A, model.B, model.C, model.D))
    X = _sym(np.atleast_2d(np.asarray(X, dtype=float)))
    W11 = _sym(-A.T @ X - X @ A)
    W12 = ((C.T - X @ B) + (C - B.T @ X).T) / 2
    return np.block([[W11, W12], [W12.T, D + D.T]])


@dataclass(frozen=True, eq=False)
class CertificateReport:
    X: np.ndarray
    lambda_min_X: float
    lambda_min_W: float
    verdict: str

    def to_dict(self):
        return {
            "lambda_min_X": self.lambda_min_X,
            "lambda_min_W": self.lambda_min_W,
            "verdict": self.verdict,
        }


def _lmin(M):
    return float(np.linalg.eigvalsh(M)[0]) if M.size else np.inf


def check_certificate(model, X):
    """Classify ``X`` as a ``strict``, ``nonstrict`` or ``invalid`` passivity certificate.

    Tolerances are ``1e-8`` times the 1-norm of ``X`` and of ``W(X)``
    respectively.
    """
    X = _sym(np.atleast_2d(np.asarray(X, dtype=float)))
    W = kyp_matrix(model, X)
    lx, lw = _lmin(X), _lmin(W)
    tx = VERDICT_TOL * max(np.linalg.norm(X, 1), 1e-300)
    tw = VERDICT_TOL * max(np.linalg.norm(W, 1), 1e-300)
    if model.n == 0:
        lx, tx = np.inf, 0.0
    if lx > tx and lw > tw:
        verdict = "strict"
    elif lx >= -tx and lw >= -tw:
        verdict = "nonstrict"
    else:
        verdict = "invalid"
    return CertificateReport(X, lx, lw, verdict)


def positive_real_sweep(model, omegas):
    """``[(w, lambda_min(Z(iw)^H + Z(iw))), ...]``; NaN marks a pole hit."""
    out = []
    for w in np.asarray(omegas, dtype=float):
        try:
            Z = eval_transfer(model, 1j * w)
        except SingularPencil:
            out.append((float(w), float("nan")))
            continue
        out.append((float(w), float(np.linalg.eigvalsh(Z.conj().T + Z)[0])))
    return out


def lambda_min_dissipation(ph):
    """Smallest eigenvalue of ``[[R, P], [P^T, S]]``, a robustness proxy.

    Values in ``[-1e-8 ||W||, 0)`` are roundoff on a singular block and are
    reported as 0.
    """
    W = ph.W_blk
    lmin = _lmin(W)
    if W.size and -VERDICT_TOL * np.linalg.norm(W, 2) <= lmin < 0:
        return 0.0
    return lmin


def write_sweep_csv(sweep, path):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["omega", "lambda_min"])
        for om, lm in sweep:
            w.writerow([repr(om), repr(lm)])
