import math

import numpy as np
import pytest

from scenval.core import Label
from scenval.exceptions import DimensionMismatch, InputError
from scenval.sampling import (
    CorrelatedLine,
    Density,
    DensityKind,
    Role,
    SeedPath,
    experiment_id,
    ks_check,
    open_uniforms,
    pdf,
    random_root,
    sample,
)


def test_same_path_same_points():
    path = SeedPath(42, experiment_id("sampling/determinism"), 3, Role.GENERATED)
    first = sample("NORMAL", 2, 100, path)
    second = sample(DensityKind.NORMAL, 2, 100, path)
    np.testing.assert_array_equal(first.points, second.points)


def test_different_paths_differ():
    path = SeedPath(42, 7, 0, Role.EMPIRICAL)
    base = sample("NORMAL", 1, 50, path).points
    others = (path.child(root=43), path.child(experiment=8), path.child(repetition=1), path.child(role=Role.GENERATED))
    for other in others:
        assert not np.array_equal(base, sample("NORMAL", 1, 50, other).points)


def test_experiment_id_is_stable():
    assert experiment_id("table1/NORMAL/d=2/rho=0.5/m=500") == experiment_id("table1/NORMAL/d=2/rho=0.5/m=500")
    assert experiment_id("a") != experiment_id("b")
    assert 0 <= experiment_id("anything") < 2 ** 32


def test_seed_path_validation():
    with pytest.raises(InputError):
        SeedPath(-1)
    with pytest.raises(InputError):
        SeedPath(2 ** 64)
    assert 0 <= random_root() < 2 ** 64


def test_open_uniforms_avoid_endpoints():
    u = open_uniforms(SeedPath(1), 100000)
    assert u.min() > 0.0
    assert u.max() < 1.0


@pytest.mark.parametrize(
    "kind, lower",
    [("NORMAL", -math.inf), ("EXPONENTIAL", 0.0), ("STUDENT_T", -math.inf), ("CAUCHY", -math.inf), ("PARETO", 1.0)],
)
def test_samples_respect_support(kind, lower):
    points = sample(kind, 3, 2000, SeedPath(5)).points
    assert np.all(np.isfinite(points))
    assert np.all(points >= lower)
    assert Density(kind).support_lower == lower


def test_normal_mean():
    points = sample("NORMAL", 2, 20000, SeedPath(11)).points
    # 5 standard errors
    assert np.all(np.abs(points.mean(axis=0)) < 5.0 / math.sqrt(20000))


@pytest.mark.parametrize(
    "kind, x, expected",
    [
        ("NORMAL", [0.0], 1.0 / math.sqrt(2.0 * math.pi)),
        ("NORMAL", [0.0, 0.0], 1.0 / (2.0 * math.pi)),
        ("EXPONENTIAL", [1.0], math.exp(-1.0)),
        ("EXPONENTIAL", [-0.5], 0.0),
        ("STUDENT_T", [1.0], 1.0 / (2.0 * math.pi)),
        ("CAUCHY", [1.0], 1.0 / math.pi),
        ("PARETO", [2.0, 4.0], 1.0 / 64.0),
        ("PARETO", [0.5], 0.0),
    ],
)
def test_pdf_values(kind, x, expected):
    assert pdf(kind, x) == pytest.approx(expected, rel=1e-14)


def test_scalar_and_vector_pdf_agree():
    xs = np.linspace(-3.0, 6.0, 37)
    for kind in DensityKind:
        law = Density(kind)
        np.testing.assert_allclose(law.marginal_pdf(xs), [law.marginal_pdf_scalar(float(x)) for x in xs], rtol=1e-15)


def test_ks_check():
    # one stream for all laws: the inverse cdf maps it to the same KS statistic for each of them
    n = 5000
    path = SeedPath(2024, experiment_id("sampling/ks"))
    results = [ks_check(kind, n, path) for kind in DensityKind]
    for result in results:
        assert result.statistic < 1.628 / math.sqrt(n)
        assert result.statistic == pytest.approx(results[0].statistic, abs=1e-6)


def test_streams_are_uncorrelated():
    path = SeedPath(99, experiment_id("sampling/streams"))
    x = sample("NORMAL", 1, 10000, path.child(role=Role.EMPIRICAL)).points[:, 0]
    y = sample("NORMAL", 1, 10000, path.child(role=Role.GENERATED)).points[:, 0]
    assert abs(np.corrcoef(x, y)[0, 1]) < 0.05


def test_unknown_density():
    with pytest.raises(InputError):
        Density("uniform")
    with pytest.raises(InputError):
        sample("NORMAL", 0, 10, SeedPath(1))


def test_correlated_line():
    law = CorrelatedLine(noise=0.1)
    points = sample(law, 2, 5000, SeedPath(3), Label.GENERATED)
    assert points.label == Label.GENERATED
    residual = points.points[:, 1] - points.points[:, 0]
    assert np.std(residual) == pytest.approx(0.1, rel=0.05)
    assert np.corrcoef(points.points.T)[0, 1] > 0.99
    assert pdf(law, [0.0, 0.0]) == pytest.approx(1.0 / (2.0 * math.pi * 0.1))

    with pytest.raises(DimensionMismatch):
        sample(law, 3, 10, SeedPath(3))
    with pytest.raises(InputError):
        CorrelatedLine(noise=0.0)
