"""Identification of a normalized pH model from samples on the imaginary axis.

Two stages: a (possibly reduced) Loewner model interpolating the samples,
then its right half-plane spectral zeros fed to :func:`~phloewner.ph.algorithm1`.
"""

import csv
import logging
import warnings
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from .errors import DimensionError, EmptyBand, TooFewSamples
from .loewner import build_pencil, svd_truncate
from .ph import check_feedthrough, construct
from .realification import build_realifier, realify_pencil
from .spectral_zeros import spectral_data_from_model
from .state_space import StateSpaceRealization, eval_transfer, freqresp, relative_error
from .tangential import LeftDatum, RightDatum, TangentialDataSet, conjugate_closure

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FrequencySampleSet:
    """Samples ``Z(i omega_k)``; ``Z`` has shape ``(k, m, m)``."""

    omegas: np.ndarray
    Z: np.ndarray
    band: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        om = np.asarray(self.omegas, dtype=float).ravel()
        Z = np.asarray(self.Z, dtype=complex)
        if Z.ndim == 1:
            Z = Z.reshape(-1, 1, 1)
        if Z.ndim != 3 or Z.shape[0] != om.size or Z.shape[1] != Z.shape[2]:
            raise DimensionError(f"samples must have shape (k, m, m) with k = {om.size}, got {Z.shape}")
        if np.any(om <= 0) or np.any(np.diff(om) <= 0):
            raise DimensionError("frequencies must be positive and strictly increasing")
        if not np.all(np.isfinite(Z)):
            raise DimensionError("samples contain non-finite values")
        object.__setattr__(self, "omegas", om)
        object.__setattr__(self, "Z", Z)

    @property
    def m(self):
        return self.Z.shape[1]

    def __len__(self):
        return self.omegas.size

    @classmethod
    def from_model(cls, model, omegas):
        omegas = np.asarray(omegas, dtype=float)
        return cls(omegas, freqresp(model, omegas))


@dataclass(frozen=True)
class PipelineConfig:
    """``D=None`` estimates the feedthrough from the highest-frequency sample."""

    svd_rel_tol: float = 1e-8
    D: Optional[np.ndarray] = None
    band: Optional[Tuple[float, float]] = None
    basis: str = "loewner"

    def __post_init__(self):
        if not 0 <= self.svd_rel_tol < 1:
            raise DimensionError(f"svd_rel_tol must lie in [0, 1), got {self.svd_rel_tol}")
        if self.band is not None and not self.band[0] < self.band[1]:
            raise DimensionError(f"band must satisfy lo < hi, got {self.band}")


def make_grid(lo, hi, count, scale="log"):
    if scale == "log":
        return np.logspace(np.log10(lo), np.log10(hi), int(count))
    if scale == "lin":
        return np.linspace(lo, hi, int(count))
    raise ValueError(f"unknown grid scale {scale!r}")


def split_samples(fs, D=None):
    """Alternate samples into right (1st, 3rd, ...) and left (2nd, 4th, ...) data.

    Directions cycle through the standard basis. Both sides are closed under
    conjugation (``Z(-i w) = conj(Z(i w))``), so ``2 * floor(k / 2)`` data
    land on each side; with an odd count the last sample is left out.
    """
    k = len(fs)
    if k < 2:
        raise TooFewSamples(f"need at least 2 samples, got {k}")
    if k % 2:
        log.warning("odd number of samples (%d); dropping the last one", k)
        k -= 1
    m = fs.m
    eye = np.eye(m)
    rights, lefts = [], []
    for j in range(k // 2):
        wr, Zr = fs.omegas[2 * j], fs.Z[2 * j]
        wl, Zl = fs.omegas[2 * j + 1], fs.Z[2 * j + 1]
        e = eye[j % m]
        rights.append(RightDatum(1j * wr, e, Zr @ e))
        lefts.append(LeftDatum(1j * wl, e, e @ Zl))
    if D is None:
        D = np.zeros((m, m))
    return TangentialDataSet(conjugate_closure(rights), conjugate_closure(lefts), D)


def estimate_D(fs, cfg=None):
    """Feedthrough: ``cfg.D`` when given, else ``Re Z`` at the highest frequency.

    Raises
    ------
    DNotStrictlyPositiveReal
        If ``D + D^T`` is not positive definite.
    """
    if len(fs) == 0:
        raise TooFewSamples("no samples")
    if cfg is not None and cfg.D is not None:
        D = np.atleast_2d(np.asarray(cfg.D, dtype=float))
    else:
        Ztop = fs.Z[-1]
        D = Ztop.real.copy()
        if np.linalg.norm(Ztop.imag) > 0.1 * np.linalg.norm(Ztop.real):
            warnings.warn(
                "imaginary part at the highest frequency is large; "
                "samples may not reach the flat high-frequency region",
                stacklevel=2,
            )
    return check_feedthrough(D)


def balance_diagonal(model):
    """Turn ``E = diag(e)``, ``e > 0``, into ``E = I`` by scaling with ``diag(e)^{-1/2}`` on both sides.

    Keeps the spectral-zero eigenproblem well scaled when ``e`` spans many
    decades (singular values of a Loewner matrix).
    """
    e = np.diag(model.E)
    if model.n == 0 or not np.array_equal(np.diag(e), model.E) or np.any(e.real <= 0):
        return model
    s = np.sqrt(e.real)
    return StateSpaceRealization(
        model.A / s[:, None] / s[None, :], model.B / s[:, None], model.C / s[None, :], model.D
    )


def identify_loewner(fs, cfg=None):
    """Real Loewner model with ``E = I`` (order from SVD truncation) and the singular values."""
    cfg = cfg or PipelineConfig()
    D = estimate_D(fs, cfg)
    ds = split_samples(fs, D)
    pencil = realify_pencil(build_pencil(ds), build_realifier(ds))
    model, sv = svd_truncate(pencil, D, cfg.svd_rel_tol, basis=cfg.basis)
    return balance_diagonal(model.real()), sv


@dataclass
class Diagnostics:
    order: int
    singular_values: np.ndarray
    zeros: np.ndarray
    pick_condition: float
    max_interpolation_residual: float
    loewner_model: object = None
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        out = {
            "order": self.order,
            "singular_values": [float(s) for s in self.singular_values],
            "spectral_zeros": [[float(z.real), float(z.imag)] for z in self.zeros],
            "pick_condition": self.pick_condition,
            "max_interpolation_residual": self.max_interpolation_residual,
        }
        out.update(self.extra)
        return out


def identify_ph(fs, cfg=None):
    """Normalized pH model from imaginary-axis samples.

    Returns
    -------
    ph : PortHamiltonianForm
    diag : Diagnostics
        Singular values, spectral zeros used, Pick conditioning and the largest
        relative interpolation residual at the spectral zeros.

    Raises
    ------
    UnexpectedZeroCount
        The intermediate Loewner model is not strictly passive.
    PickNotPositiveDefinite, DNotStrictlyPositiveReal
    """
    cfg = cfg or PipelineConfig()
    D = estimate_D(fs, cfg)
    loewner_model, sv = identify_loewner(fs, replace(cfg, D=D))
    r = loewner_model.n
    rights = spectral_data_from_model(loewner_model, r)
    built = construct(rights, D)
    ph_model = built.normalized
    resid = 0.0
    for d in rights:
        err = np.linalg.norm(eval_transfer(ph_model, d.lam) @ d.r - d.w)
        resid = max(resid, err / max(np.linalg.norm(d.w), 1e-300))
    diag = Diagnostics(
        order=r,
        singular_values=sv,
        zeros=np.array([d.lam for d in rights]),
        pick_condition=built.pick_condition,
        max_interpolation_residual=float(resid),
        loewner_model=loewner_model,
    )
    return built.ph, diag


def restrict_band(fs, band):
    lo, hi = band
    keep = (fs.omegas >= lo) & (fs.omegas <= hi)
    if not np.any(keep):
        raise EmptyBand(f"no samples inside the band [{lo}, {hi}]")
    return FrequencySampleSet(fs.omegas[keep], fs.Z[keep], band=(lo, hi))


def identify_ph_limited(fs, cfg, reference=None):
    """:func:`identify_ph` on the samples inside ``cfg.band``.

    When ``reference`` (a model) is given, the diagnostics report the largest
    relative in-band and out-of-band transfer errors on the sample grid.
    """
    if cfg.band is None:
        raise EmptyBand("no band configured")
    D = estimate_D(fs, cfg)
    sub = restrict_band(fs, cfg.band)
    ph, diag = identify_ph(sub, replace(cfg, D=D))
    diag.extra["band"] = list(cfg.band)
    if reference is not None:
        from .ph import reconstruct

        err = relative_error(reconstruct(ph), reference, fs.omegas)
        inside = (fs.omegas >= cfg.band[0]) & (fs.omegas <= cfg.band[1])
        diag.extra["in_band_error"] = float(err[inside].max())
        diag.extra["out_of_band_error"] = float(err[~inside].max()) if np.any(~inside) else 0.0
    return ph, diag


# --- CSV ------------------------------------------------------------------

def _z_columns(m):
    cols = []
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            cols += [f"re_Z{i}{j}", f"im_Z{i}{j}"]
    return cols


def write_samples_csv(fs, path):
    m = fs.m
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["omega"] + _z_columns(m))
        for om, Z in zip(fs.omegas, fs.Z):
            row = [repr(float(om))]
            for z in Z.ravel():
                row += [repr(float(z.real)), repr(float(z.imag))]
            w.writerow(row)


def read_samples_csv(path):
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    if not rows:
        raise TooFewSamples("empty sample file")
    head, body = rows[0], rows[1:]
    ncols = len(head) - 1
    m = int(round(np.sqrt(ncols / 2)))
    if ncols != 2 * m * m or head[0] != "omega":
        raise DimensionError(f"sample header must be omega followed by 2*m*m columns, got {head}")
    data = np.array([[float(x) for x in row] for row in body if row], dtype=float).reshape(-1, ncols + 1)
    Z = (data[:, 1::2] + 1j * data[:, 2::2]).reshape(-1, m, m)
    return FrequencySampleSet(data[:, 0], Z)


def write_bode_csv(model, omegas, path):
    Z = freqresp(model, omegas)
    m = model.m
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["omega"] + [f"mag_Z{i}{j}" for i in range(1, m + 1) for j in range(1, m + 1)])
        for om, Zk in zip(omegas, Z):
            w.writerow([repr(float(om))] + [repr(float(x)) for x in np.abs(Zk).ravel()])
