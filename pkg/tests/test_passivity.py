import numpy as np
import pytest

from phloewner import (
    PortHamiltonianForm,
    StateSpaceRealization,
    algorithm1,
    check_certificate,
    extract_ph,
    kyp_matrix,
    make_analytic,
    positive_real_sweep,
    reconstruct,
    spectral_data_from_model,
)
from phloewner.errors import DescriptorUnsupported
from phloewner.passivity import lambda_min_dissipation, write_sweep_csv

from conftest import SQ2, random_ph, scalar_model

SCALAR = StateSpaceRealization([[-1.0]], [[-SQ2 - 1]], [[1 - SQ2]], [[1.0]])
ANALYTIC = StateSpaceRealization(
    [[-1.0, 1.0], [-1.0, -1.0]], -(1 + SQ2) * np.eye(2), (SQ2 - 1) * np.eye(2), 2 * np.eye(2)
)


def test_kyp_scalar_by_hand():
    np.testing.assert_allclose(kyp_matrix(SCALAR, [[1.0]]), [[2, 2], [2, 2]], atol=1e-15)


def test_kyp_analytic_identity_certificate():
    I = np.eye(2)
    expected = 2 * np.block([[I, SQ2 * I], [SQ2 * I, 2 * I]])
    np.testing.assert_allclose(kyp_matrix(ANALYTIC, I), expected, atol=1e-14)


def test_kyp_trivial_model():
    model = StateSpaceRealization(-np.eye(2), np.zeros((2, 2)), np.zeros((2, 2)), np.eye(2))
    np.testing.assert_allclose(kyp_matrix(model, np.eye(2)), 2 * np.eye(4))


def test_kyp_needs_identity_e():
    model = StateSpaceRealization([[-1.0]], [[1.0]], [[1.0]], [[1.0]], E=[[2.0]])
    with pytest.raises(DescriptorUnsupported):
        kyp_matrix(model, [[1.0]])


def test_verdicts():
    ph = PortHamiltonianForm(J=[[0, 1], [-1, 0]], R=np.eye(2), G=np.ones((2, 1)), P=np.zeros((2, 1)), N=0,
                             S=[[1.0]], Q=np.eye(2))
    assert check_certificate(reconstruct(ph), np.eye(2)).verdict == "strict"
    assert check_certificate(SCALAR, [[1.0]]).verdict == "nonstrict"
    rep = check_certificate(SCALAR, [[4.0]])
    assert rep.verdict == "invalid"
    # W(4) = [[8, 5 + 3 sqrt 2], [5 + 3 sqrt 2, 2]]
    w = np.array([[8, 5 + 3 * SQ2], [5 + 3 * SQ2, 2]])
    assert rep.lambda_min_W == pytest.approx(np.linalg.eigvalsh(w)[0])
    assert set(rep.to_dict()) == {"lambda_min_X", "lambda_min_W", "verdict"}


def test_congruence_law(rng):
    ph = random_ph(rng, 4, 2, normalized=False)
    model = reconstruct(ph)
    T = np.linalg.cholesky(ph.Q).T
    moved = model.transform(T)
    assert check_certificate(model, ph.Q).verdict == check_certificate(moved, np.eye(4)).verdict == "strict"


def test_sweep_scalar_values():
    vals = [lm for _, lm in positive_real_sweep(scalar_model(), [0, 1, 10])]
    np.testing.assert_allclose(vals, [4, 3, 2 + 2 / 101], rtol=1e-14)


def test_sweep_constant_and_analytic():
    model = StateSpaceRealization(-np.eye(2), np.zeros((2, 2)), np.zeros((2, 2)), np.eye(2))
    assert {lm for _, lm in positive_real_sweep(model, [0.1, 1, 10])} == {2.0}
    # Z(0) = [[1.5, -0.5], [0.5, 1.5]], so Z(0)^H + Z(0) = 3 I
    assert positive_real_sweep(make_analytic(), [0.0])[0][1] == pytest.approx(3.0)


def test_sweep_marks_poles_with_nan():
    model = StateSpaceRealization([[0.0, 1.0], [-1.0, 0.0]], [[1.0], [0.0]], [[1.0, 0.0]], [[1.0]])
    (_, lm), = positive_real_sweep(model, [1.0])
    assert np.isnan(lm)


def test_lambda_min_dissipation_examples():
    ph = PortHamiltonianForm(J=0, R=[[1.0]], G=0, P=0, N=0, S=[[1.0]], Q=[[1.0]])
    assert lambda_min_dissipation(ph) == 1.0
    assert lambda_min_dissipation(extract_ph(SCALAR)) == pytest.approx(0.0, abs=1e-14)


def test_algorithm1_output_positive_real(rng):
    model = reconstruct(random_ph(rng, 5, 2))
    fit = reconstruct(algorithm1(spectral_data_from_model(model, 5), model.D))
    sweep = positive_real_sweep(fit, np.logspace(-2, 3, 100))
    assert min(lm for _, lm in sweep) >= -1e-8


def test_sweep_csv(tmp_path):
    path = tmp_path / "sweep.csv"
    write_sweep_csv(positive_real_sweep(scalar_model(), [0.0, 1.0]), path)
    assert path.read_text().splitlines() == ["omega,lambda_min", "0.0,4.0", "1.0,3.0"]
