import pytest

from scenval.exceptions import InputError
from scenval.valparams import ValParams


def test_defaults():
    params = ValParams({})
    assert params.k == 3
    assert params.rho == 0.5
    assert params.mode == "EXACT"
    assert params.boundary == "OPEN"
    assert params.nn_method == "AUTO"
    assert params.reps == 100
    assert params.seed is None
    assert params.table1_m == [500, 5000]
    assert params.densities == ["NORMAL", "EXPONENTIAL", "STUDENT_T", "CAUCHY", "PARETO"]
    assert not hasattr(params, "statistic")
    assert params.validate() is params


def test_keys_and_values_are_case_insensitive():
    params = ValParams({"MODE": "asymptotic", "Boundary": "closed", "densities": ["cauchy"]})
    assert params.mode == "ASYMPTOTIC"
    assert params.boundary == "CLOSED"
    assert params.densities == ["CAUCHY"]


def test_invalid_string_option():
    with pytest.raises(InputError):
        ValParams({"mode": "median"})
    params = ValParams({})
    with pytest.raises(InputError):
        params.nn_method = "balltree"


@pytest.mark.parametrize(
    "uod",
    [
        {"k": 0},
        {"k": 2.5},
        {"rho": 1.5},
        {"rho": 0.0},
        {"reps": 0},
        {"threads": 0},
        {"seed": -1},
        {"seed": 2 ** 64},
        {"table1_m": [1]},
        {"nnc_m": []},
        {"rhos": [0.5, 2.0]},
        {"dims": [0]},
        {"densities": ["uniform"]},
        {"generated_density": "uniform"},
        {"sigma_min": 2.0},
        {"noise": 0.0},
        {"harness_m": 1},
    ],
)
def test_validate_rejects(uod):
    with pytest.raises(InputError):
        ValParams(uod).validate()


def test_zero_steps_pass_validation():
    assert ValParams({"steps": 0}).validate().steps == 0


def test_reproduce_lines():
    params = ValParams({"seed": 7, "reps": 3, "table1_m": [100, 200], "format": "csv"})
    assert params.reproduce("table1") == "scenval table1 --reps 3 --seed 7 --m 100 200 --boundary open --format csv"

    params = ValParams({})
    assert params.reproduce("validate", ("e.csv", "g.csv")) == (
        "scenval validate e.csv g.csv --k 3 --rho 0.5 --mode exact --boundary open --bins 20 --format json"
    )


def test_parameter_table():
    text = str(ValParams({"k": 4}))
    assert "Run Parameters" in text
    assert "harness_reps" in text
