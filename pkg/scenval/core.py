"""Domain types shared by every other module.

The empirical set and the generated set are both :class:`PointSet` objects. Point ``i`` of the empirical set has
global index ``i``; point ``j`` of the generated set has global index ``m_e + j`` wherever the two are pooled.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .exceptions import DimensionMismatch, InputError, InvalidRho, KTooLarge, NonFinite, TooSmall
from . import log_name

logger = logging.getLogger(f"{log_name}{__name__}")

SCHEMA_VERSION = 1


class Label(Enum):
    EMPIRICAL = "empirical"
    GENERATED = "generated"


@dataclass(frozen=True)
class PointSet:
    """An ordered collection of ``m`` points in R^d. Use :func:`make_point_set` to build one."""

    points: np.ndarray
    label: Label = Label.EMPIRICAL

    @property
    def m(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return self.m

    def to_list(self):
        return self.points.tolist()

    def relabel(self, label):
        return PointSet(self.points, Label(label))

    def translated(self, shift):
        """Copy of the set moved by ``shift`` (a d-vector)"""
        return make_point_set(self.points + np.asarray(shift, dtype=float), self.label)

    def transformed(self, rotation, shift=None):
        """Copy of the set under the rigid motion ``x -> R x + shift``"""
        moved = self.points @ np.asarray(rotation, dtype=float).T
        if shift is not None:
            moved = moved + np.asarray(shift, dtype=float)
        return make_point_set(moved, self.label)


def make_point_set(raw, label=Label.EMPIRICAL) -> PointSet:
    """Validate raw coordinates and freeze them into a :class:`PointSet`.

    Checks run in a fixed order so the raised error does not depend on point order: dimension, finiteness, size.

    Parameters
    ----------
    raw : sequence of sequences or np.ndarray
        one row per point. The dimension is taken from the first row.
    label : Label or str

    Returns
    -------
    PointSet

    Raises
    ------
    DimensionMismatch
        rows of different length or a point with no coordinates
    NonFinite
        a NaN or infinite coordinate
    TooSmall
        fewer than two points

    """
    label = Label(label)

    if isinstance(raw, np.ndarray):
        if raw.ndim != 2:
            if raw.ndim == 1 and raw.size == 0:
                raise TooSmall("A point set needs at least 2 points, got 0")
            raise DimensionMismatch(f"Expected a 2-D array of points, got an array with {raw.ndim} dimension(s)")
        arr = np.array(raw, dtype=np.float64)
    else:
        rows = list(raw)
        if not rows:
            raise TooSmall("A point set needs at least 2 points, got 0")
        d = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != d:
                raise DimensionMismatch(f"Point {i} has {len(row)} coordinate(s), expected {d} (from point 0)")
        arr = np.array(rows, dtype=np.float64).reshape(len(rows), d)

    if arr.shape[1] < 1:
        raise DimensionMismatch("Points must have at least one coordinate")

    bad = ~np.isfinite(arr)
    if bad.any():
        row, col = np.argwhere(bad)[0]
        raise NonFinite(f"Point {row} has a non-finite coordinate in column {col}: {arr[row, col]}")

    if arr.shape[0] < 2:
        raise TooSmall(f"A point set needs at least 2 points, got {arr.shape[0]}")

    arr.setflags(write=False)
    return PointSet(arr, label)


def check_same_dimension(e: PointSet, g: PointSet):
    if e.d != g.d:
        raise DimensionMismatch(f"Dimension mismatch: empirical points have d={e.d}, generated points have d={g.d}")


@dataclass(frozen=True)
class MeasureParams:
    """Neighbour depth ``k`` for nnc and neighbourhood fraction ``rho`` for mr"""

    k: int = 3
    rho: float = 0.5

    def __post_init__(self):
        check_rho(self.rho)
        check_positive_k(self.k)

    def check_k(self, m: int):
        check_k(self.k, 2 * m)


def check_rho(rho):
    if not (isinstance(rho, (int, float, np.floating)) and 0.0 < rho <= 1.0):
        raise InvalidRho(f"rho must lie in (0, 1], got {rho}")


def check_positive_k(k):
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise InputError(f"k must be a positive integer, got {k}")


def check_k(k, pool_size):
    check_positive_k(k)
    if k > pool_size - 1:
        raise KTooLarge(f"k={k} exceeds the {pool_size - 1} other points of the pooled set")


@dataclass
class ValidationReport:
    """nnc and mr for one (empirical, generated) pair with the parameters and diagnostics that produced them"""

    nnc: float
    mr: float
    t1: float
    t2: float
    expected_t: float
    mr_limit: float
    m: int
    d: int
    k: int
    rho: float
    tie_count: int
    mode: str = "EXACT"
    boundary: str = "OPEN"
    memorized_count: int = 0
    empirical_duplicates: int = 0
    distance_profile: Optional[dict] = None
    methodology: str = ""
    schema_version: int = SCHEMA_VERSION
    memorized_flags: Optional[np.ndarray] = field(default=None, repr=False)

    def to_dict(self):
        """Nested dictionary in the layout of the json report"""
        return {
            "schema_version": self.schema_version,
            "nnc": {
                "value": self.nnc,
                "t1": self.t1,
                "t2": self.t2,
                "expected_t": self.expected_t,
                "mode": self.mode,
                "k": self.k,
            },
            "mr": {
                "value": self.mr,
                "rho": self.rho,
                "mr_limit": self.mr_limit,
                "memorized_count": self.memorized_count,
                "boundary": self.boundary,
            },
            "m": self.m,
            "d": self.d,
            "diagnostics": {
                "tie_count": self.tie_count,
                "empirical_duplicates": self.empirical_duplicates,
                "distance_profile": self.distance_profile,
            },
            "methodology": self.methodology,
        }
