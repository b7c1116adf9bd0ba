"""
A two-port model recovered from its own spectral zeros
======================================================

The model Z(s) = C(sI - A)^{-1}B + D below has a closed-form spectral
density, so every intermediate quantity can be checked by eye.
"""

import numpy as np

from phloewner import (
    algorithm1,
    compute_spectral_zeros,
    filter_rhp,
    lambda_min_dissipation,
    make_analytic,
    reconstruct,
    spectral_data_from_model,
)

model = make_analytic()
print("A =\n", model.A)

# The spectral zeros come in mirrored pairs (z, -conj(z)).
zs = compute_spectral_zeros(model)
print("all spectral zeros:", np.round(zs.zeros, 6))

rhp = filter_rhp(zs, model.n)
print("right half-plane zeros:", np.round(rhp.zeros, 6))

# Interpolating at these points with the mirrored left data gives a
# port-Hamiltonian model directly.
data = spectral_data_from_model(model, model.n)
ph = algorithm1(data, model.D)
print("J =\n", np.round(ph.J, 12))
print("R =\n", np.round(ph.R, 12))
print("smallest eigenvalue of the dissipation block:", lambda_min_dissipation(ph))

fit = reconstruct(ph)
for s in (0.1j, 1j, 10j):
    err = np.linalg.norm(fit(s) - model(s)) / np.linalg.norm(model(s))
    print(f"relative error at s = {s}: {err:.2e}")
