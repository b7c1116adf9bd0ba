import numpy as np
import pytest

from phloewner import LeftDatum, RightDatum, TangentialDataSet, conjugate_closure, left_from_spectral, validate
from phloewner.errors import DimensionError, InvalidSpectralData
from phloewner.tangential import dataset_from_dict, dataset_to_dict, load_dataset, save_dataset

from conftest import SQ2, analytic_data, scalar_datum


def kinds(violations):
    return sorted(v.kind for v in violations)


def test_closure_keeps_real_singleton():
    out = conjugate_closure(scalar_datum())
    assert len(out) == 1 and out[0].lam == SQ2


def test_closure_adds_conjugate_after_upper_member():
    (d,) = analytic_data()
    out = conjugate_closure([d])
    assert [x.lam for x in out] == [d.lam, np.conj(d.lam)]
    np.testing.assert_array_equal(out[1].r, np.conj(d.r))
    np.testing.assert_array_equal(out[1].w, np.conj(d.w))


def test_closure_empty():
    assert conjugate_closure([]) == []


def test_closure_orders_lower_member_second():
    (d,) = analytic_data()
    out = conjugate_closure([d.conj(), RightDatum(3.0, [1, 0], [1, 1])])
    assert out[0].lam == 3.0
    assert out[1].lam.imag > 0 and out[2].lam.imag < 0


def test_left_from_scalar_spectral_datum():
    ds = left_from_spectral(scalar_datum(), [[1.0]])
    (left,) = ds.lefts
    assert left.mu == -SQ2
    np.testing.assert_allclose(left.ell, [1])
    np.testing.assert_allclose(left.v, [-SQ2])
    assert ds.spectral


def test_left_from_analytic_pair():
    rights = conjugate_closure(analytic_data())
    ds = left_from_spectral(rights, 2 * np.eye(2))
    for r, left in zip(rights, ds.lefts):
        assert left.mu == -np.conj(r.lam)
        np.testing.assert_array_equal(left.ell, np.conj(r.r))
        np.testing.assert_array_equal(left.v, -np.conj(r.w))
    assert validate(ds) == []


def test_left_rejects_left_half_plane():
    with pytest.raises(InvalidSpectralData):
        left_from_spectral([RightDatum(-1.0, [1.0], [1.0])])


def test_validate_missing_conjugate():
    rights = [RightDatum(1j, [1.0], [1.0])]
    lefts = [LeftDatum(2.0, [1.0], [1.0])]
    assert "MissingConjugate" in kinds(validate(TangentialDataSet(rights, lefts, [[1.0]])))


def test_validate_point_collision():
    ds = TangentialDataSet([RightDatum(1.0, [1.0], [1.0])], [LeftDatum(1.0, [1.0], [1.0])], [[1.0]])
    assert kinds(validate(ds)) == ["PointCollision"]


def test_validate_count_and_dimension():
    ds = TangentialDataSet(
        [RightDatum(1.0, [1.0, 0.0], [1.0, 0.0]), RightDatum(2.0, [1.0], [1.0])],
        [LeftDatum(-1.0, [1.0], [1.0])],
        [[1.0]],
    )
    assert kinds(validate(ds)) == ["CountMismatch", "DimensionMismatch"]


def test_validate_spectral_repeats():
    d = RightDatum(2.0, [1.0], [1.0])
    ds = TangentialDataSet([d, d], [LeftDatum(-2.0, [1.0], [-1.0])] * 2, [[1.0]], spectral=True)
    assert "RepeatedPoint" in kinds(validate(ds))


def test_datum_rejects_zero_direction_and_shape_mismatch():
    with pytest.raises(DimensionError):
        RightDatum(1.0, [0.0, 0.0], [1.0, 1.0])
    with pytest.raises(DimensionError):
        LeftDatum(1.0, [1.0, 0.0], [1.0])


def test_stacked_shapes():
    ds = left_from_spectral(conjugate_closure(analytic_data()), 2 * np.eye(2))
    assert ds.R.shape == (2, 2) and ds.W.shape == (2, 2)
    assert ds.L.shape == (2, 2) and ds.V.shape == (2, 2)


def test_dataset_json_round_trip(tmp_path):
    ds = left_from_spectral(conjugate_closure(analytic_data()), 2 * np.eye(2))
    path = tmp_path / "data.json"
    save_dataset(ds, path)
    back = load_dataset(path)
    assert back.spectral
    np.testing.assert_array_equal(back.Lam, ds.Lam)
    np.testing.assert_array_equal(back.V, ds.V)

    plain = TangentialDataSet([RightDatum(1.0, [1.0], [2.0])], [LeftDatum(-3.0, [1.0], [0.5])], [[1.0]])
    back = dataset_from_dict(dataset_to_dict(plain))
    assert not back.spectral and back.lefts[0].mu == -3.0
