import numpy as np
import pytest

from scenval import make_point_set
from scenval.core import Label
from scenval.exceptions import DimensionMismatch, InputError, InvalidRho, KTooLarge, UnequalSampleSizes
from scenval.measures import (
    METHODOLOGY,
    Boundary,
    ExpectationMode,
    distance_profile,
    expected_t,
    memorizing_ratio,
    nnc,
    validate,
)

from .utils import utils


def test_nnc_separated_clusters(separated_pair):
    e, g = separated_pair
    result = nnc(e, g, k=1)
    assert result.t1 == 1.0
    assert result.t2 == 1.0
    assert result.expected_t == pytest.approx(1.0 / 3.0)
    assert result.nnc == pytest.approx(2.0 / 3.0)
    assert result.tie_count == 0


def test_nnc_interleaved_sets(interleaved_pair):
    e, g = interleaved_pair
    result = nnc(e, g, k=1)
    assert result.t1 == 0.0
    assert result.t2 == 0.0
    assert result.nnc == pytest.approx(1.0 / 3.0)
    assert result.tie_count == 2


def test_mr_hand_example():
    e = make_point_set([[0.0], [10.0]], Label.EMPIRICAL)
    g = make_point_set([[0.4], [100.0]], Label.GENERATED)
    result = memorizing_ratio(e, g, rho=0.5)
    assert result.memorized_flags.tolist() == [True, False]
    assert result.mr == 0.5
    assert result.memorized_count == 1
    assert result.mr_limit == pytest.approx(1.0 / 3.0)


def test_mr_with_duplicated_empirical_points():
    e = make_point_set([[0.0], [0.0], [5.0]])
    g = make_point_set([[0.0], [0.0], [5.0]], Label.GENERATED)

    open_result = memorizing_ratio(e, g, rho=0.5, boundary="OPEN")
    assert open_result.memorized_flags.tolist() == [False, False, True]
    assert open_result.mr == pytest.approx(1.0 / 3.0)
    assert open_result.empirical_duplicates == 2

    closed_result = memorizing_ratio(e, g, rho=0.5, boundary=Boundary.CLOSED)
    assert closed_result.mr == 1.0


@pytest.mark.parametrize(
    "mode, expected",
    [(ExpectationMode.ASYMPTOTIC, 0.0), (ExpectationMode.EXACT, 1.0 / 46.0), ("asymptotic", 0.0)],
)
def test_nnc_does_not_see_memorization(mode, expected):
    e, spread, memorizing = utils.discrimination_sets()
    for g in (spread, memorizing):
        result = nnc(e, g, k=3, mode=mode)
        assert result.t1 == pytest.approx(0.5)
        assert result.t2 == pytest.approx(0.5)
        assert result.nnc == pytest.approx(expected, abs=1e-12)
        assert result.tie_count == 0


def test_mr_sees_memorization():
    e, spread, memorizing = utils.discrimination_sets()
    assert memorizing_ratio(e, spread, rho=0.5).mr == 0.0
    assert memorizing_ratio(e, memorizing, rho=0.5).mr == 0.5


@pytest.mark.parametrize("rho", [0.1, 0.5, 1.0])
def test_exact_copy_is_fully_memorized(rho):
    rng = np.random.default_rng(1)
    e = make_point_set(rng.standard_normal((50, 3)))
    assert memorizing_ratio(e, e.relabel(Label.GENERATED), rho=rho).mr == 1.0


def test_far_away_copy_is_not_memorized():
    rng = np.random.default_rng(2)
    e = make_point_set(rng.standard_normal((50, 2)))
    g = e.translated([1000.0, 1000.0]).relabel(Label.GENERATED)
    assert memorizing_ratio(e, g, rho=1.0).mr == 0.0
    # far away g: every point's neighbours are from its own set
    assert nnc(e, g, k=3, mode="ASYMPTOTIC").nnc == pytest.approx(0.5)


def test_memorized_sets_are_nested_in_rho():
    rng = np.random.default_rng(2024)
    rhos = (0.1, 0.3, 0.5, 0.7, 0.9, 1.0)
    for _ in range(1000):
        m = int(rng.integers(2, 8))
        d = int(rng.integers(1, 4))
        e = make_point_set(rng.standard_normal((m, d)))
        g = make_point_set(rng.standard_normal((m, d)), Label.GENERATED)
        flags = [memorizing_ratio(e, g, rho=rho, method="BRUTE").memorized_flags for rho in rhos]
        for smaller, larger in zip(flags, flags[1:]):
            assert not np.any(smaller & ~larger)


def test_statistics_ignore_point_order():
    rng = np.random.default_rng(8)
    e_raw = rng.standard_normal((60, 2))
    g_raw = rng.standard_normal((60, 2)) * 1.3
    e = make_point_set(e_raw)
    g = make_point_set(g_raw, Label.GENERATED)
    e_perm = make_point_set(e_raw[rng.permutation(60)])
    g_perm = make_point_set(g_raw[rng.permutation(60)], Label.GENERATED)

    assert nnc(e_perm, g_perm, k=5).nnc == pytest.approx(nnc(e, g, k=5).nnc, abs=1e-15)
    assert memorizing_ratio(e_perm, g_perm, rho=0.7).mr == memorizing_ratio(e, g, rho=0.7).mr


def test_statistics_ignore_rigid_motions():
    rng = np.random.default_rng(12)
    e = make_point_set(rng.standard_normal((80, 2)))
    g = make_point_set(rng.standard_normal((80, 2)), Label.GENERATED)
    angle = 0.7
    rotation = [[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]]
    shift = [5.0, -2.0]

    moved_e = e.transformed(rotation, shift)
    moved_g = g.transformed(rotation, shift)
    assert nnc(moved_e, moved_g, k=3).nnc == pytest.approx(nnc(e, g, k=3).nnc)
    assert memorizing_ratio(moved_e, moved_g, rho=0.5).mr == memorizing_ratio(e, g, rho=0.5).mr


def test_measure_errors(separated_pair):
    e, g = separated_pair
    three = make_point_set([[0.0], [1.0], [2.0]], Label.GENERATED)
    planar = make_point_set([[0.0, 0.0], [1.0, 1.0]], Label.GENERATED)

    with pytest.raises(UnequalSampleSizes):
        nnc(e, three)
    with pytest.raises(UnequalSampleSizes):
        memorizing_ratio(e, three)
    with pytest.raises(DimensionMismatch):
        nnc(e, planar)
    with pytest.raises(KTooLarge):
        nnc(e, g, k=4)
    with pytest.raises(InvalidRho):
        memorizing_ratio(e, g, rho=0.0)
    with pytest.raises(InvalidRho):
        memorizing_ratio(e, g, rho=1.5)
    with pytest.raises(InputError):
        nnc(e, g, k=1, mode="median")
    with pytest.raises(InputError):
        memorizing_ratio(e, g, boundary="half-open")


@pytest.mark.parametrize(
    "m, mode, expected",
    [(500, "EXACT", 499.0 / 999.0), (2, ExpectationMode.EXACT, 1.0 / 3.0), (500, "ASYMPTOTIC", 0.5)],
)
def test_expected_t(m, mode, expected):
    assert expected_t(m, mode) == pytest.approx(expected, rel=1e-15)


def test_distance_profile():
    e = make_point_set([[0.0], [10.0]])
    g = make_point_set([[0.0], [13.0]], Label.GENERATED)
    profile = distance_profile(e, g, bins=3)
    assert profile["exact_copies"] == 1
    assert profile["histogram"]["counts"] == [1, 0, 1]
    assert profile["histogram"]["edges"] == pytest.approx([0.0, 1.0, 2.0, 3.0])
    assert profile["quantiles"]["0.5"] == pytest.approx(1.5)
    assert set(profile["quantiles"]) == {"0.05", "0.25", "0.5", "0.75", "0.95"}

    with pytest.raises(InputError):
        distance_profile(e, g, bins=0)


def test_validate_report():
    e, _, memorizing = utils.discrimination_sets()
    report = validate(e, memorizing, k=3, rho=0.5, mode="ASYMPTOTIC")

    assert report.nnc == pytest.approx(0.0, abs=1e-12)
    assert report.mr == 0.5
    assert report.memorized_count == 6
    assert report.m == 12
    assert report.d == 2
    assert report.mr_limit == pytest.approx(0.2)
    assert report.methodology == METHODOLOGY

    as_dict = report.to_dict()
    assert as_dict["schema_version"] == 1
    assert as_dict["nnc"]["mode"] == "ASYMPTOTIC"
    assert as_dict["mr"]["boundary"] == "OPEN"
    assert as_dict["mr"]["memorized_count"] == 6
    assert as_dict["diagnostics"]["distance_profile"]["exact_copies"] == 0
    assert "memorized_flags" not in as_dict


def test_validate_reports_unequal_sizes_before_k():
    # k=4 is also too large for m=2
    e = make_point_set([[0.0], [1.0]])
    g = make_point_set([[0.5], [1.5], [2.5]], Label.GENERATED)
    with pytest.raises(UnequalSampleSizes):
        validate(e, g, k=4)
