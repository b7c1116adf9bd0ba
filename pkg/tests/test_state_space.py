import numpy as np
import pytest

from phloewner import DofQuery, StateSpaceRealization, dof_count, eval_phi, eval_transfer, make_analytic
from phloewner.errors import DimensionError, SingularPencil
from phloewner.state_space import freqresp, load_model, model_from_dict, model_to_dict, save_model

from conftest import SQ2, random_passive_model, scalar_model


def test_scalar_transfer_matches_partial_fractions():
    # Z(s) = 1 + 1/(s + 1)
    assert eval_transfer(scalar_model(), SQ2)[0, 0] == pytest.approx(1 + 1 / (SQ2 + 1), rel=1e-15)
    assert eval_transfer(scalar_model(), SQ2)[0, 0] == pytest.approx(SQ2, rel=1e-15)


def test_zero_input_map_gives_feedthrough():
    model = StateSpaceRealization(-np.eye(3), np.zeros((3, 2)), np.ones((2, 3)), [[1, 2], [3, 4]])
    np.testing.assert_array_equal(eval_transfer(model, 0.3 + 2j), [[1, 2], [3, 4]])


def test_analytic_model_at_zero():
    np.testing.assert_allclose(eval_transfer(make_analytic(), 0), [[1.5, -0.5], [0.5, 1.5]], atol=1e-15)


def test_phi_examples():
    assert eval_phi(scalar_model(), 0)[0, 0] == pytest.approx(4)
    assert abs(eval_phi(scalar_model(), SQ2)[0, 0]) <= 1e-12
    static = StateSpaceRealization(-np.eye(2), np.zeros((2, 2)), np.zeros((2, 2)), np.eye(2))
    np.testing.assert_allclose(eval_phi(static, 1.7 - 0.2j), 2 * np.eye(2))


def test_pole_raises_singular_pencil():
    with pytest.raises(SingularPencil):
        eval_transfer(scalar_model(), -1.0)


def test_descriptor_matches_standard_form(rng):
    model = random_passive_model(rng, 4, 2)
    E = rng.standard_normal((4, 4)) + 4 * np.eye(4)
    desc = StateSpaceRealization(E @ model.A, E @ model.B, model.C, model.D, E)
    for s in (0.5j, 1 + 3j, 7.0):
        np.testing.assert_allclose(eval_transfer(desc, s), eval_transfer(model, s), rtol=1e-12)
    np.testing.assert_allclose(eval_transfer(desc.to_standard(), 2j), eval_transfer(model, 2j), rtol=1e-12)


@pytest.mark.parametrize("bad", [
    dict(A=np.eye(2), B=np.ones((3, 1)), C=np.ones((1, 2)), D=[[1.0]]),
    dict(A=np.ones((2, 3)), B=np.ones((2, 1)), C=np.ones((1, 2)), D=[[1.0]]),
    dict(A=np.eye(2), B=np.ones((2, 1)), C=np.ones((1, 2)), D=np.ones((1, 2))),
    dict(A=np.eye(2), B=np.ones((2, 1)), C=np.ones((1, 2)), D=[[1.0]], E=np.eye(3)),
])
def test_dimension_errors(bad):
    with pytest.raises(DimensionError):
        StateSpaceRealization(**bad)


def test_matrices_are_frozen():
    model = scalar_model()
    with pytest.raises(ValueError):
        model.A[0, 0] = 3.0


def test_empty_state_is_static():
    model = StateSpaceRealization(np.zeros((0, 0)), np.zeros((0, 2)), np.zeros((2, 0)), np.eye(2) * 5)
    assert model.n == 0
    np.testing.assert_allclose(eval_transfer(model, 1j), 5 * np.eye(2))


def test_conjugate_symmetry(rng):
    model = random_passive_model(rng, 5, 2)
    for s in (0.3 + 1.1j, 2 - 4j):
        Z = eval_transfer(model, s)
        assert np.linalg.norm(eval_transfer(model, np.conj(s)) - Z.conj()) <= 1e-12 * np.linalg.norm(Z)


def test_phi_on_axis_is_hermitian_part(rng):
    model = random_passive_model(rng, 4, 3)
    for w in (0.0, 0.7, 12.0):
        Z = eval_transfer(model, 1j * w)
        H = Z.conj().T + Z
        assert np.linalg.norm(eval_phi(model, 1j * w) - H) <= 1e-12 * np.linalg.norm(H)


def test_freqresp_shape():
    assert freqresp(make_analytic(), [1.0, 2.0, 3.0]).shape == (3, 2, 2)


def test_dof_examples():
    assert dof_count(DofQuery(5, 1)) == 10
    assert dof_count(DofQuery(5, 2, 2)) == 24
    assert dof_count(DofQuery(0, 3, 0)) == 0
    for n, m in [(3, 1), (7, 4)]:
        assert dof_count(DofQuery(n, m, 0)) == dof_count(DofQuery(n, m))


@pytest.mark.parametrize("args", [(-1, 1, None), (2, 0, None), (2, 2, 3), (2, 2, -1)])
def test_dof_rejects_bad_queries(args):
    with pytest.raises(DimensionError):
        DofQuery(*args)


def test_json_round_trip(tmp_path, rng):
    model = random_passive_model(rng, 3, 2)
    path = tmp_path / "model.json"
    save_model(model, path)
    back = load_model(path)
    for k in "EABCD":
        np.testing.assert_array_equal(getattr(back, k), getattr(model, k))
    assert "E" not in model_to_dict(model)


def test_json_complex_and_descriptor():
    model = StateSpaceRealization([[-1 + 1j]], [[1.0]], [[2j]], [[1.0]], E=[[2.0]])
    back = model_from_dict(model_to_dict(model))
    assert back.A[0, 0] == -1 + 1j and back.C[0, 0] == 2j and back.E[0, 0] == 2.0


def test_json_missing_key():
    with pytest.raises(DimensionError):
        model_from_dict({"A": [[1.0]], "B": [[1.0]], "C": [[1.0]]})
