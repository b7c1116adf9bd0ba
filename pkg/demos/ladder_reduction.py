"""
Reducing a 100-section ladder network
=====================================

The ladder has 200 states but its response on [0.1, 1000] rad/s is
captured by a much smaller model.  SVD truncation of the Loewner matrix
picks the order; the result is still port-Hamiltonian.
"""

import numpy as np

from phloewner import (
    FrequencySampleSet,
    LadderSpec,
    PipelineConfig,
    identify_ph,
    make_ladder,
    positive_real_sweep,
    reconstruct,
)
from phloewner.pipeline import make_grid
from phloewner.state_space import relative_error

ladder = make_ladder(LadderSpec(sections=100))
omegas = make_grid(1e-1, 1e3, 200)
samples = FrequencySampleSet.from_model(ladder, omegas)
print("full order:", ladder.n)

ph, diag = identify_ph(samples, PipelineConfig(D=ladder.D))
fit = reconstruct(ph)
print("reduced order:", diag.order)
print("max relative error: %.2e" % relative_error(fit, ladder, omegas).max())

# Passivity of the reduced model on a dense sweep: the smallest eigenvalue
# of Z(i omega) + Z(i omega)^H should stay positive.
sweep = positive_real_sweep(fit, make_grid(1e-2, 1e4, 400))
print("min over sweep of lambda_min:", min(v for _, v in sweep))
