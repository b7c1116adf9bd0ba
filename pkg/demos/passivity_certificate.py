"""
Changing the Hamiltonian with a passivity certificate
=====================================================

Any X > 0 satisfying the KYP inequality defines a port-Hamiltonian form
of the same transfer function.  Different certificates trade off how
much dissipation margin the form exhibits.
"""

import numpy as np

from phloewner import (
    algorithm1,
    check_certificate,
    extract_ph,
    from_certificate,
    lambda_min_dissipation,
    make_analytic,
    reconstruct,
    spectral_data_from_model,
)

model = make_analytic()
normalized = reconstruct(algorithm1(spectral_data_from_model(model, 2), model.D))

# The form produced by interpolation uses X = I and sits on the boundary.
print("X = I:      lambda_min =", lambda_min_dissipation(extract_ph(normalized)))

c = 1 + np.sqrt(2)
for X in (np.eye(2) / c**2, np.eye(2) / 4, 4 * np.eye(2)):
    report = check_certificate(normalized, X)
    print(f"X = {X[0, 0]:.4f} I: verdict {report.verdict}", end="")
    if report.verdict != "invalid":
        ph = from_certificate(normalized, X)
        print(f", lambda_min = {lambda_min_dissipation(ph):.6f}")
    else:
        print()
