"""The two validation statistics.

nearest neighbour coincidence (nnc)
    Pool the empirical set E and the generated set G, both of size m. T1 is the share of the k nearest neighbours of
    the empirical points that are empirical themselves, T2 the same for generated points. Under the null both have
    expectation (m - 1) / (2m - 1) and

        nnc = 1/2 |T1 - E[T1]| + 1/2 |T2 - E[T2]|

    is close to 0. It grows when G misses the dependence structure of E.

memorizing ratio (mr)
    Share of empirical points E_i with a generated point strictly closer than rho * R_i, R_i being the distance from
    E_i to its nearest other empirical point. Its null limit is rho^d / (rho^d + 1); values near 1 mean G copies E.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .core import MeasureParams, PointSet, ValidationReport, check_k, check_rho, check_same_dimension
from .exceptions import InputError, UnequalSampleSizes
from .nn_engine import NeighborTable, knn_pooled, min_cross_distance, nearest_cross_distance_profile
from .nn_engine import within_set_nn_distance
from .theory import mr_limit
from . import log_name

logger = logging.getLogger(f"{log_name}{__name__}")

PROFILE_QUANTILES = (0.05, 0.25, 0.5, 0.75, 0.95)

METHODOLOGY = (
    "nnc pools both sets and counts, for every point, how many of its k nearest Euclidean neighbours (itself "
    "excluded, equal distances resolved in favour of the smaller index, empirical points indexed first) come from "
    "its own set. mr flags an empirical point when a generated point lies strictly inside rho times its "
    "within-set nearest neighbour distance (OPEN boundary) or on that sphere too (CLOSED boundary); empirical "
    "points with an exact duplicate therefore cannot be flagged under OPEN. Reference values assume both sets "
    "are iid draws from one continuous density with independent coordinates."
)


class ExpectationMode(Enum):
    EXACT = "EXACT"  # (m - 1) / (2m - 1)
    ASYMPTOTIC = "ASYMPTOTIC"  # 1/2


class Boundary(Enum):
    OPEN = "OPEN"  # cross < rho R
    CLOSED = "CLOSED"  # cross <= rho R


def as_enum(enum_type, value):
    if isinstance(value, enum_type):
        return value
    try:
        return enum_type(str(value).upper())
    except ValueError:
        raise InputError(f"Invalid value {value} for {enum_type.__name__}; expected one of "
                         f"{[v.value for v in enum_type]}")


def expected_t(m: int, mode=ExpectationMode.EXACT) -> float:
    if as_enum(ExpectationMode, mode) == ExpectationMode.ASYMPTOTIC:
        return 0.5
    return (m - 1) / (2 * m - 1)


def _check_pair(e: PointSet, g: PointSet):
    if e.m != g.m:
        raise UnequalSampleSizes(f"Both sets must have the same size: empirical m={e.m}, generated m={g.m}")
    check_same_dimension(e, g)


@dataclass
class NncResult:
    t1: float
    t2: float
    expected_t: float
    nnc: float
    mode: ExpectationMode
    k: int
    m: int
    tie_count: int = 0
    table: Optional[NeighborTable] = field(default=None, repr=False)


@dataclass
class MrResult:
    mr: float
    memorized_flags: np.ndarray = field(repr=False)
    mr_limit: float
    rho: float
    boundary: Boundary = Boundary.OPEN
    within_distances: Optional[np.ndarray] = field(default=None, repr=False)
    cross_distances: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def memorized_count(self) -> int:
        return int(np.count_nonzero(self.memorized_flags))

    @property
    def empirical_duplicates(self) -> int:
        if self.within_distances is None:
            return 0
        return int(np.count_nonzero(self.within_distances == 0.0))


def nnc(e: PointSet, g: PointSet, k: int = 3, mode=ExpectationMode.EXACT, method="AUTO", threads=1) -> NncResult:
    """Nearest neighbour coincidence of the generated set ``g`` against the empirical set ``e``

    Parameters
    ----------
    e, g : PointSet
        same size m >= 2 and same dimension
    k : int
        neighbour depth, 1 <= k <= 2m - 1
    mode : ExpectationMode or str
        EXACT centres T1, T2 on (m - 1) / (2m - 1); ASYMPTOTIC on 1/2
    method : str
        nearest neighbour search, AUTO, BRUTE or KDTREE
    threads : int

    Returns
    -------
    NncResult

    """
    mode = as_enum(ExpectationMode, mode)
    _check_pair(e, g)
    check_k(k, e.m + g.m)

    m = e.m
    table = knn_pooled(e, g, k, method=method, threads=threads)
    own = table.own_set_counts()

    t1 = int(own[:m].sum()) / (m * k)
    t2 = int(own[m:].sum()) / (m * k)
    et = expected_t(m, mode)
    value = 0.5 * abs(t1 - et) + 0.5 * abs(t2 - et)

    if table.tie_count:
        n_rows = int(np.count_nonzero(table.ties_at_cutoff))
        logger.warning(
            f"{n_rows} point(s) have neighbours tied at the k-th distance; nnc depends on the tie-breaking rule"
        )

    return NncResult(t1=t1, t2=t2, expected_t=et, nnc=value, mode=mode, k=k, m=m, tie_count=table.tie_count,
                     table=table)


def memorizing_ratio(e: PointSet, g: PointSet, rho: float = 0.5, boundary=Boundary.OPEN, method="AUTO",
                     threads=1) -> MrResult:
    """Share of empirical points with a generated point inside ``rho`` times their nearest neighbour distance

    Parameters
    ----------
    e, g : PointSet
        same size m >= 2 and same dimension
    rho : float
        in (0, 1]
    boundary : Boundary or str
        OPEN counts cross < rho R (default), CLOSED counts cross <= rho R
    method : str
    threads : int

    Returns
    -------
    MrResult

    """
    boundary = as_enum(Boundary, boundary)
    _check_pair(e, g)
    check_rho(rho)

    radius = within_set_nn_distance(e, method=method, threads=threads)
    cross = min_cross_distance(e, g, method=method, threads=threads)
    threshold = rho * radius
    if boundary == Boundary.OPEN:
        flags = cross < threshold
    else:
        flags = cross <= threshold

    duplicates = int(np.count_nonzero(radius == 0.0))
    if duplicates:
        logger.warning(f"{duplicates} empirical point(s) have an exact duplicate (nearest neighbour distance 0)")

    return MrResult(
        mr=int(np.count_nonzero(flags)) / e.m,
        memorized_flags=flags,
        mr_limit=mr_limit(rho, e.d),
        rho=rho,
        boundary=boundary,
        within_distances=radius,
        cross_distances=cross,
    )


def distance_profile(e: PointSet, g: PointSet, bins: int = 20, method="AUTO", threads=1) -> dict:
    """Quantiles and histogram of the distance from each generated point to the closest empirical point"""
    if int(bins) != bins or bins < 1:
        raise InputError(f"Number of histogram bins must be a positive integer, got {bins}")
    check_same_dimension(e, g)
    dist = nearest_cross_distance_profile(e, g, method=method, threads=threads)
    counts, edges = np.histogram(dist, bins=int(bins))
    return {
        "quantiles": {f"{q:g}": float(v) for q, v in zip(PROFILE_QUANTILES, np.quantile(dist, PROFILE_QUANTILES))},
        "histogram": {"counts": counts.tolist(), "edges": edges.tolist()},
        "exact_copies": int(np.count_nonzero(dist == 0.0)),
    }


def validate(
    e: PointSet,
    g: PointSet,
    k: int = 3,
    rho: float = 0.5,
    mode=ExpectationMode.EXACT,
    boundary=Boundary.OPEN,
    bins: int = 20,
    method="AUTO",
    threads=1,
) -> ValidationReport:
    """Both statistics with reference values and diagnostics for one (empirical, generated) pair"""
    _check_pair(e, g)
    MeasureParams(k, rho).check_k(e.m)
    logger.info(f"Validating m={e.m}, d={e.d} with k={k}, rho={rho}")
    n_res = nnc(e, g, k, mode, method=method, threads=threads)
    m_res = memorizing_ratio(e, g, rho, boundary, method=method, threads=threads)
    profile = distance_profile(e, g, bins, method=method, threads=threads)

    report = ValidationReport(
        nnc=n_res.nnc,
        mr=m_res.mr,
        t1=n_res.t1,
        t2=n_res.t2,
        expected_t=n_res.expected_t,
        mr_limit=m_res.mr_limit,
        m=e.m,
        d=e.d,
        k=k,
        rho=rho,
        tie_count=n_res.tie_count,
        mode=n_res.mode.value,
        boundary=m_res.boundary.value,
        memorized_count=m_res.memorized_count,
        empirical_duplicates=m_res.empirical_duplicates,
        distance_profile=profile,
        methodology=METHODOLOGY,
        memorized_flags=m_res.memorized_flags,
    )
    logger.info(f"nnc = {report.nnc:.6f}, mr = {report.mr:.6f} (null limit {report.mr_limit:.6f})")
    return report
