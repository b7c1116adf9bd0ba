"""Identification of port-Hamiltonian systems by spectral-zero Loewner interpolation."""

from .errors import *  # noqa: F401,F403
from .loewner import LoewnerPencil, assemble_realization, build_pencil, svd_truncate, sylvester_residual
from .passivity import (
    CertificateReport,
    check_certificate,
    kyp_matrix,
    lambda_min_dissipation,
    positive_real_sweep,
)
from .ph import (
    PortHamiltonianForm,
    algorithm1,
    construct,
    extract_ph,
    from_certificate,
    normalize_realization,
    pick_cholesky,
    reconstruct,
)
from .pipeline import (
    FrequencySampleSet,
    PipelineConfig,
    estimate_D,
    identify_loewner,
    identify_ph,
    identify_ph_limited,
    split_samples,
)
from .realification import RealifierMap, build_realifier, realify_pencil
from .spectral_zeros import (
    SpectralZeroSet,
    compute_spectral_zeros,
    filter_rhp,
    spectral_data_from_model,
)
from .state_space import DofQuery, StateSpaceRealization, dof_count, eval_phi, eval_transfer, freqresp
from .tangential import (
    LeftDatum,
    RightDatum,
    TangentialDataSet,
    conjugate_closure,
    left_from_spectral,
    validate,
)
from .zoo import LadderSpec, make_analytic, make_ladder, make_rlc5

__version__ = "0.1.0"
