"""Tangential interpolation data and its conjugate-pair bookkeeping.

A right datum ``(lam, r, w)`` encodes ``Z(lam) r = w`` and a left datum
``(mu, ell, v)`` encodes ``ell Z(mu) = v``. All vectors are stored as 1-D
arrays of length ``m``; left vectors are understood as rows.
"""

import json
from dataclasses import dataclass, field
from typing import List

import numpy as np

from .errors import DimensionError, InvalidSpectralData

CONJ_TOL = 1e-10
COLLISION_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class RightDatum:
    lam: complex
    r: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "lam", complex(self.lam))
        r = np.atleast_1d(np.asarray(self.r, dtype=complex)).ravel()
        w = np.atleast_1d(np.asarray(self.w, dtype=complex)).ravel()
        if r.shape != w.shape:
            raise DimensionError(f"direction and response differ in length: {r.size} != {w.size}")
        if not np.any(r):
            raise DimensionError("right direction must be nonzero")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "w", w)

    @property
    def point(self):
        return self.lam

    @property
    def vectors(self):
        return self.r, self.w

    def conj(self):
        return RightDatum(np.conj(self.lam), np.conj(self.r), np.conj(self.w))


@dataclass(frozen=True, eq=False)
class LeftDatum:
    mu: complex
    ell: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mu", complex(self.mu))
        ell = np.atleast_1d(np.asarray(self.ell, dtype=complex)).ravel()
        v = np.atleast_1d(np.asarray(self.v, dtype=complex)).ravel()
        if ell.shape != v.shape:
            raise DimensionError(f"direction and response differ in length: {ell.size} != {v.size}")
        if not np.any(ell):
            raise DimensionError("left direction must be nonzero")
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "v", v)

    @property
    def point(self):
        return self.mu

    @property
    def vectors(self):
        return self.ell, self.v

    def conj(self):
        return LeftDatum(np.conj(self.mu), np.conj(self.ell), np.conj(self.v))


@dataclass(frozen=True, eq=False)
class TangentialDataSet:
    """Matched right and left interpolation data plus ``D = Z(inf)``.

    ``spectral`` is set when the left data mirror spectral-zero right data
    (``mu = -conj(lam)``, ``ell = r^H``, ``v = -w^H``), which makes the
    Loewner matrix Hermitian.
    """

    rights: List[RightDatum]
    lefts: List[LeftDatum]
    D: np.ndarray
    spectral: bool = False
    m: int = field(init=False)

    def __post_init__(self):
        D = np.atleast_2d(np.asarray(self.D, dtype=float))
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "m", D.shape[0])
        object.__setattr__(self, "rights", list(self.rights))
        object.__setattr__(self, "lefts", list(self.lefts))

    @property
    def n(self):
        return len(self.rights)

    # stacked forms: Lambda, R, W for the right data, M, L, V for the left data
    @property
    def Lam(self):
        return np.array([d.lam for d in self.rights], dtype=complex)

    @property
    def Mu(self):
        return np.array([d.mu for d in self.lefts], dtype=complex)

    @property
    def R(self):
        return np.array([d.r for d in self.rights], dtype=complex).reshape(-1, self.m).T

    @property
    def W(self):
        return np.array([d.w for d in self.rights], dtype=complex).reshape(-1, self.m).T

    @property
    def L(self):
        return np.array([d.ell for d in self.lefts], dtype=complex).reshape(-1, self.m)

    @property
    def V(self):
        return np.array([d.v for d in self.lefts], dtype=complex).reshape(-1, self.m)


def _scale(z):
    return max(1.0, abs(z))


def is_real_point(z):
    return abs(z.imag) <= CONJ_TOL * _scale(z)


def _close(a, b):
    return np.linalg.norm(a - b) <= CONJ_TOL * max(1.0, np.linalg.norm(a))


def is_conjugate_pair(d1, d2):
    """True when ``d2`` is the entrywise conjugate of ``d1`` up to tolerance."""
    z1, z2 = d1.point, d2.point
    if abs(z1 - np.conj(z2)) > CONJ_TOL * _scale(z1):
        return False
    return all(_close(a, np.conj(b)) for a, b in zip(d1.vectors, d2.vectors))


def is_self_conjugate(d):
    return is_real_point(d.point) and all(_close(x, np.conj(x)) for x in d.vectors)


def _vector_key(d):
    return tuple(float(t) for x in d.vectors for z in x for t in (z.real, z.imag))


def _group(data):
    """Split data into self-conjugate singletons and (upper, lower) pairs.

    Returns ``(singles, pairs, orphans)``; orphans have no partner.
    """
    singles, pending = [], []
    for d in data:
        (singles if is_self_conjugate(d) else pending).append(d)
    pairs, orphans = [], []
    used = [False] * len(pending)
    for i, d in enumerate(pending):
        if used[i]:
            continue
        used[i] = True
        partner = None
        for j in range(i + 1, len(pending)):
            if not used[j] and is_conjugate_pair(d, pending[j]):
                partner = j
                break
        if partner is None:
            orphans.append(d)
            continue
        used[partner] = True
        pairs.append(_order_pair(d, pending[partner]))
    return singles, pairs, orphans


def _order_pair(a, b):
    za, zb = a.point, b.point
    if za.imag > zb.imag or (za.imag == zb.imag and _vector_key(a) >= _vector_key(b)):
        return a, b
    return b, a


def _canonical(singles, pairs):
    singles = sorted(singles, key=lambda d: (d.point.real, _vector_key(d)))
    pairs = sorted(pairs, key=lambda p: (abs(p[0].point.imag), p[0].point.real, _vector_key(p[0])))
    out = list(singles)
    for a, b in pairs:
        out.extend((a, b))
    return out


def conjugate_closure(data):
    """Add missing conjugate partners and return the data in canonical order.

    Canonical order: self-conjugate data (real point, real vectors) first,
    sorted by point; then conjugate pairs sorted by ``(|Im|, Re)`` of the
    point, each pair with its ``Im >= 0`` member first. Works for right and
    left data alike.
    """
    singles, pairs, orphans = _group(data)
    for d in orphans:
        pairs.append(_order_pair(d, d.conj()))
    return _canonical(singles, pairs)


def left_from_spectral(rights, D=None):
    """Mirror spectral-zero right data into left data.

    ``mu_j = -conj(lam_j)``, ``ell_j = r_j^H``, ``v_j = -w_j^H``; left data
    keep the order of the right data so that the Loewner matrix is Hermitian.
    """
    rights = list(rights)
    bad = [d.lam for d in rights if d.lam.real <= 0]
    if bad:
        raise InvalidSpectralData(f"spectral interpolation points need Re > 0, got {bad}")
    if D is None:
        m = rights[0].r.size if rights else 1
        D = np.zeros((m, m))
    lefts = [LeftDatum(-np.conj(d.lam), np.conj(d.r), -np.conj(d.w)) for d in rights]
    return TangentialDataSet(rights, lefts, D, spectral=True)


@dataclass(frozen=True)
class Violation:
    kind: str
    side: str
    index: int
    detail: str = ""

    def to_dict(self):
        return {"kind": self.kind, "side": self.side, "index": self.index, "detail": self.detail}


def validate(ds):
    """Return the list of :class:`Violation` records (empty when ``ds`` is valid).

    Kinds: ``DimensionMismatch``, ``CountMismatch``, ``MissingConjugate``,
    ``PointCollision``, ``RepeatedPoint`` (spectral data only) and
    ``InvalidSpectralPoint`` (spectral data with ``Re lam <= 0``).
    """
    out = []
    m = ds.m
    if ds.D.shape != (m, m):
        out.append(Violation("DimensionMismatch", "D", -1, f"D has shape {ds.D.shape}"))
    for side, data in (("right", ds.rights), ("left", ds.lefts)):
        for i, d in enumerate(data):
            if any(x.size != m for x in d.vectors):
                out.append(Violation("DimensionMismatch", side, i, f"vectors must have length {m}"))
        _, _, orphans = _group(data)
        for d in orphans:
            i = next(k for k, e in enumerate(data) if e is d)
            out.append(Violation("MissingConjugate", side, i, f"no conjugate partner for point {d.point}"))
    if len(ds.rights) != len(ds.lefts):
        out.append(Violation("CountMismatch", "both", -1,
                             f"{len(ds.rights)} right vs {len(ds.lefts)} left data"))
    lam, mu = ds.Lam, ds.Mu
    if lam.size and mu.size:
        gap = np.abs(lam[None, :] - mu[:, None])
        scale = np.maximum(1.0, np.maximum(np.abs(lam)[None, :], np.abs(mu)[:, None]))
        for i, j in zip(*np.nonzero(gap <= COLLISION_TOL * scale)):
            out.append(Violation("PointCollision", "both", int(j),
                                 f"right point {lam[j]} coincides with left point {mu[i]}"))
    if ds.spectral:
        for j, d in enumerate(ds.rights):
            if d.lam.real <= 0:
                out.append(Violation("InvalidSpectralPoint", "right", j, f"Re({d.lam}) <= 0"))
        for j in range(lam.size):
            for k in range(j + 1, lam.size):
                if abs(lam[j] - lam[k]) <= COLLISION_TOL * _scale(lam[j]):
                    out.append(Violation("RepeatedPoint", "right", k,
                                         f"spectral zero {lam[k]} repeats index {j}"))
    return out


# --- JSON -----------------------------------------------------------------

def _cvec_to_json(x):
    return [[float(z.real), float(z.imag)] for z in np.asarray(x, dtype=complex)]


def _cvec_from_json(obj):
    return np.array([complex(p[0], p[1]) if isinstance(p, list) else complex(p) for p in obj])


def _cnum_from_json(obj):
    return complex(obj[0], obj[1]) if isinstance(obj, list) else complex(obj)


def dataset_to_dict(ds):
    out = {
        "m": ds.m,
        "D": [[float(x) for x in row] for row in ds.D],
        "rights": [
            {"lambda": [d.lam.real, d.lam.imag], "r": _cvec_to_json(d.r), "w": _cvec_to_json(d.w)}
            for d in ds.rights
        ],
    }
    if not ds.spectral:
        out["lefts"] = [
            {"mu": [d.mu.real, d.mu.imag], "ell": _cvec_to_json(d.ell), "v": _cvec_to_json(d.v)}
            for d in ds.lefts
        ]
    return out


def dataset_from_dict(obj):
    """Parse a tangential data file; left data are mirrored when absent."""
    D = np.asarray(obj["D"], dtype=float).reshape(obj["m"], obj["m"])
    rights = [
        RightDatum(_cnum_from_json(e["lambda"]), _cvec_from_json(e["r"]), _cvec_from_json(e["w"]))
        for e in obj["rights"]
    ]
    if "lefts" in obj:
        lefts = [
            LeftDatum(_cnum_from_json(e["mu"]), _cvec_from_json(e["ell"]), _cvec_from_json(e["v"]))
            for e in obj["lefts"]
        ]
        return TangentialDataSet(rights, lefts, D)
    return left_from_spectral(rights, D)


def load_dataset(path):
    with open(path) as f:
        return dataset_from_dict(json.load(f))


def save_dataset(ds, path):
    with open(path, "w") as f:
        json.dump(dataset_to_dict(ds), f, indent=1)
