import numpy as np
import pytest

from scenval import make_point_set
from scenval.core import Label, MeasureParams
from scenval.exceptions import DimensionMismatch, InputError, InvalidRho, KTooLarge, NonFinite, TooSmall


def test_minimal_point_set():
    ps = make_point_set([[0.0], [1.0]], Label.EMPIRICAL)
    assert ps.m == 2
    assert ps.d == 1
    assert ps.label == Label.EMPIRICAL


def test_round_trip_is_lossless():
    raw = [[0.1, -2.5e-300], [1.0 / 3.0, 7.0], [np.nextafter(1.0, 2.0), -0.0]]
    ps = make_point_set(raw, "generated")
    assert ps.to_list() == raw
    assert ps.label == Label.GENERATED


def test_points_are_read_only():
    ps = make_point_set(np.zeros((3, 2)))
    with pytest.raises(ValueError):
        ps.points[0, 0] = 1.0


def test_input_array_is_copied():
    raw = np.zeros((3, 2))
    ps = make_point_set(raw)
    raw[0, 0] = 5.0
    assert ps.points[0, 0] == 0.0


@pytest.mark.parametrize(
    "raw, error",
    [
        ([[0, 1], [2]], DimensionMismatch),
        ([[2], [0, 1]], DimensionMismatch),
        ([[0.0, float("nan")]], NonFinite),
        ([[0.0], [float("inf")]], NonFinite),
        ([[0.0]], TooSmall),
        ([], TooSmall),
        ([[], []], DimensionMismatch),
        # dimension is checked before finiteness and size, whatever the point order
        ([[0.0, float("nan")], [1.0]], DimensionMismatch),
        ([[1.0], [0.0, float("nan")]], DimensionMismatch),
        # finiteness before size
        ([[float("nan")]], NonFinite),
    ],
)
def test_make_point_set_errors(raw, error):
    with pytest.raises(error):
        make_point_set(raw)


def test_errors_carry_exit_codes():
    with pytest.raises(DimensionMismatch) as excinfo:
        make_point_set([[0, 1], [2]])
    assert excinfo.value.exit_code == 3
    assert excinfo.value.err_type == "DimensionMismatch"


def test_rigid_motion_helpers():
    ps = make_point_set([[1.0, 0.0], [0.0, 2.0]])
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    moved = ps.transformed(rot, shift=[1.0, 1.0])
    assert moved.to_list() == [[1.0, 2.0], [-1.0, 1.0]]
    assert ps.translated([1.0, -1.0]).to_list() == [[2.0, -1.0], [1.0, 1.0]]


@pytest.mark.parametrize("rho", [0.0, -0.1, 1.5, float("nan")])
def test_measure_params_rejects_rho(rho):
    with pytest.raises(InvalidRho):
        MeasureParams(k=3, rho=rho)


def test_measure_params_k():
    params = MeasureParams(k=3, rho=1.0)
    params.check_k(2)
    with pytest.raises(KTooLarge):
        params.check_k(1)
    with pytest.raises(InputError) as error:
        MeasureParams(k=0, rho=0.5)
    assert not isinstance(error.value, KTooLarge)
    assert "positive integer" in str(error.value)
