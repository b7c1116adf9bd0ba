"""Unitary block transformation of self-conjugate data to real form.

Each adjacent conjugate pair is mapped by ``Q = [[1, -i], [1, i]] / sqrt(2)``;
``[v, conj(v)] Q = sqrt(2) [Re v, Im v]`` and
``Q^H diag(lam, conj(lam)) Q = [[a, b], [-b, a]]`` for ``lam = a + ib``.
"""

from dataclasses import dataclass
from typing import List

import numpy as np

from .errors import NotSelfConjugate
from .loewner import LoewnerPencil
from .tangential import is_conjugate_pair, is_self_conjugate

IMAG_RESIDUE_TOL = 1e-10

PAIR_BLOCK = np.array([[1, -1j], [1, 1j]]) / np.sqrt(2)


@dataclass(frozen=True, eq=False)
class RealifierMap:
    """Block-diagonal unitaries for the right (``U``) and left (``U_left``) data."""

    block_structure: List[str]
    U: np.ndarray
    left_block_structure: List[str]
    U_left: np.ndarray


def _blocks(data):
    tags = []
    k = 0
    while k < len(data):
        d = data[k]
        if is_self_conjugate(d):
            tags.append("real_point")
            k += 1
        elif k + 1 < len(data) and is_conjugate_pair(d, data[k + 1]):
            tags.append("conjugate_pair")
            k += 2
        else:
            raise NotSelfConjugate(
                f"datum {k} at point {d.point} is not followed by its conjugate partner"
            )
    return tags


def _unitary(tags):
    n = sum(2 if t == "conjugate_pair" else 1 for t in tags)
    U = np.zeros((n, n), dtype=complex)
    k = 0
    for t in tags:
        if t == "conjugate_pair":
            U[k:k + 2, k:k + 2] = PAIR_BLOCK
            k += 2
        else:
            U[k, k] = 1
            k += 1
    return U


def build_realifier(ds):
    """Block unitaries matching the (canonical) ordering of ``ds``.

    Raises
    ------
    NotSelfConjugate
        If a non-real datum is not immediately followed by its conjugate.
    """
    rtags = _blocks(ds.rights)
    if ds.spectral:
        ltags = list(rtags)
        U = _unitary(rtags)
        return RealifierMap(rtags, U, ltags, U)
    ltags = _blocks(ds.lefts)
    return RealifierMap(rtags, _unitary(rtags), ltags, _unitary(ltags))


def _real_part(name, M):
    if not np.iscomplexobj(M):
        return M
    if M.size:
        residue = np.max(np.abs(M.imag))
        if residue > IMAG_RESIDUE_TOL * max(1.0, np.max(np.abs(M.real))):
            raise NotSelfConjugate(f"realified {name} keeps an imaginary part of size {residue:.2e}")
    return np.ascontiguousarray(M.real)


def realify_pencil(p, rmap):
    """Congruence of ``p`` by the realifier: ``Lhat = U_left^H L U`` and so on."""
    if p.realified or not np.iscomplexobj(p.L):
        return p
    U, Ul = rmap.U, rmap.U_left
    if U.shape[0] != p.L.shape[1] or Ul.shape[0] != p.L.shape[0]:
        raise NotSelfConjugate("realifier does not match the pencil dimensions")
    UlH = Ul.conj().T
    parts = {
        "L": UlH @ p.L @ U,
        "Ls": UlH @ p.Ls @ U,
        "Lam": U.conj().T @ p.Lam @ U,
        "Mu": UlH @ p.Mu @ Ul,
        "Lrows": UlH @ p.Lrows,
        "V": UlH @ p.V,
        "R": p.R @ U,
        "W": p.W @ U,
    }
    parts = {k: _real_part(k, v) for k, v in parts.items()}
    return LoewnerPencil(**parts, data=p.data, symmetric_mode=p.symmetric_mode, realified=True)
