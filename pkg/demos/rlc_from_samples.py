"""
Identifying a five-state RLC circuit from frequency samples
===========================================================

Samples of Z(i omega) on a logarithmic grid are all we hand to the
identification routine.  The returned model is port-Hamiltonian by
construction and reproduces the circuit's spectral zeros.
"""

import numpy as np

from phloewner import (
    FrequencySampleSet,
    PipelineConfig,
    compute_spectral_zeros,
    filter_rhp,
    identify_ph,
    make_rlc5,
    reconstruct,
)
from phloewner.pipeline import make_grid
from phloewner.state_space import relative_error

circuit = make_rlc5()
omegas = make_grid(1e-1, 1e3, 20)
samples = FrequencySampleSet.from_model(circuit, omegas)

# The feedthrough of this circuit is known, so we pass it in rather than
# estimating it from the highest sample.
ph, diag = identify_ph(samples, PipelineConfig(svd_rel_tol=1e-10, D=circuit.D))
print("identified order:", diag.order)
print("structural violations:", ph.violations())

fit = reconstruct(ph)
print("max relative error on the grid: %.2e" % relative_error(fit, circuit, omegas).max())

true_zeros = filter_rhp(compute_spectral_zeros(circuit), circuit.n).zeros
fit_zeros = filter_rhp(compute_spectral_zeros(fit), ph.n).zeros
print("spectral zeros of the circuit:", np.round(true_zeros, 6))
print("spectral zeros of the fit:    ", np.round(fit_zeros, 6))
