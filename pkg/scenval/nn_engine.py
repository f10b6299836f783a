"""Exact nearest-neighbour search over pooled and single point sets.

Every distance reported by this module comes from :func:`euclidean`, evaluated on ``query - candidate`` with the
same array layout on both search paths, so the all-pairs scan and the tree search return bitwise identical tables.
Ties in distance are broken by the smaller global index.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.spatial import cKDTree

from .core import Label, PointSet, check_k, check_same_dimension
from .exceptions import InputError, TooSmall
from . import log_name

logger = logging.getLogger(f"{log_name}{__name__}")

NN_METHODS = ("AUTO", "BRUTE", "KDTREE")

# number of float64 elements held by one block of the all-pairs scan
_BLOCK_ELEMENTS = 2 ** 24
# extra candidates requested from the tree beyond k (+1 for self)
_TREE_MARGIN = 8
_TREE_MAX_DIM = 16
_TREE_MIN_POINTS = 64


def euclidean(q, p):
    return np.sqrt(np.sum(np.square(q - p), axis=-1))


@dataclass(frozen=True)
class NeighborTable:
    """The k nearest neighbours of every point of a pooled set.

    Row ``q`` describes global point ``q``: empirical points come first (``0 .. n_empirical - 1``), then the
    generated points.

    Attributes
    ----------
    indices : np.ndarray
        (n, k) global indices of the neighbours, nearest first
    distances : np.ndarray
        (n, k) Euclidean distances, nondecreasing along each row
    from_generated : np.ndarray
        (n, k) True where the neighbour belongs to the generated set
    ties_at_cutoff : np.ndarray
        (n,) number of points at exactly the k-th distance that were left out of the row

    """

    indices: np.ndarray
    distances: np.ndarray
    from_generated: np.ndarray
    ties_at_cutoff: np.ndarray
    n_empirical: int

    @property
    def k(self) -> int:
        return self.indices.shape[1]

    @property
    def n_queries(self) -> int:
        return self.indices.shape[0]

    @property
    def tie_count(self) -> int:
        return int(self.ties_at_cutoff.sum())

    def label_of(self, index) -> Label:
        return Label.GENERATED if index >= self.n_empirical else Label.EMPIRICAL

    def entries(self, q) -> List[Tuple[int, float, Label]]:
        """(neighbour_global_index, distance, source_label) for query ``q``, nearest first"""
        return [
            (int(i), float(dist), self.label_of(i)) for i, dist in zip(self.indices[q], self.distances[q])
        ]

    def own_set_counts(self) -> np.ndarray:
        """Per query, the number of its k neighbours drawn from the query's own set"""
        query_generated = np.arange(self.n_queries) >= self.n_empirical
        return np.count_nonzero(self.from_generated == query_generated[:, None], axis=1)


def resolve_method(method, n, d) -> str:
    method = str(method).upper()
    if method not in NN_METHODS:
        raise InputError(f"Unknown nearest neighbour method {method}; expected one of {NN_METHODS}")
    if method == "AUTO":
        return "KDTREE" if d <= _TREE_MAX_DIM and n > _TREE_MIN_POINTS else "BRUTE"
    return method


def _brute_rows(queries, pool, k, exclude_self, rows):
    """All-pairs scan for the query ``rows``. Returns indices, distances and ties_at_cutoff for those rows."""
    n, d = pool.shape
    block = max(1, _BLOCK_ELEMENTS // (n * d))

    indices = np.empty((len(rows), k), dtype=np.intp)
    distances = np.empty((len(rows), k))
    ties = np.empty(len(rows), dtype=np.intp)

    for start in range(0, len(rows), block):
        r = rows[start:start + block]
        dist = euclidean(queries[r][:, None, :], pool[None, :, :])
        if exclude_self:
            dist[np.arange(len(r)), r] = np.inf

        # stable sort keeps the smaller index first among equal distances
        order = np.argsort(dist, axis=1, kind="stable")[:, :k]
        sel = np.take_along_axis(dist, order, axis=1)
        kth = sel[:, -1:]

        indices[start:start + block] = order
        distances[start:start + block] = sel
        ties[start:start + block] = np.count_nonzero(dist == kth, axis=1) - np.count_nonzero(sel == kth, axis=1)

    return indices, distances, ties


def _tree_rows(queries, pool, k, exclude_self, threads):
    n = pool.shape[0]
    kq = min(n, k + 1 + _TREE_MARGIN)

    tree = cKDTree(pool)
    _, cand = tree.query(queries, k=kq, workers=threads)
    cand = np.asarray(cand, dtype=np.intp).reshape(queries.shape[0], kq)

    # tree distances are only used to pick candidates; the reported ones are recomputed
    dist = euclidean(queries[:, None, :], pool[cand])
    if exclude_self:
        dist[cand == np.arange(queries.shape[0])[:, None]] = np.inf

    order = np.lexsort((cand, dist), axis=-1)[:, :k]
    indices = np.take_along_axis(cand, order, axis=1)
    distances = np.take_along_axis(dist, order, axis=1)
    kth = distances[:, -1:]
    ties = np.count_nonzero(dist == kth, axis=1) - np.count_nonzero(distances == kth, axis=1)

    if kq < n:
        # a point outside the candidate list may sit at the k-th distance (duplicates, or self not returned)
        finite = np.where(np.isfinite(dist), dist, -np.inf)
        unsafe = ~(kth[:, 0] < finite.max(axis=1) * (1.0 - 1e-12))
        rows = np.flatnonzero(unsafe)
        if rows.size:
            logger.debug(f"Tree search resolved {rows.size} quer(ies) with the all-pairs scan")
            b_idx, b_dist, b_ties = _brute_rows(queries, pool, k, exclude_self, rows)
            indices[rows] = b_idx
            distances[rows] = b_dist
            ties[rows] = b_ties

    return indices, distances, ties


def _knn(queries, pool, k, exclude_self, method="AUTO", threads=1):
    method = resolve_method(method, pool.shape[0], pool.shape[1])

    if method == "KDTREE":
        return _tree_rows(queries, pool, k, exclude_self, threads)

    rows = np.arange(queries.shape[0])
    if threads <= 1 or queries.shape[0] < 2 * threads:
        return _brute_rows(queries, pool, k, exclude_self, rows)

    parts = np.array_split(rows, threads)
    with ThreadPoolExecutor(max_workers=threads) as executor:
        results = list(executor.map(lambda r: _brute_rows(queries, pool, k, exclude_self, r), parts))
    return tuple(np.concatenate([res[i] for res in results]) for i in range(3))


def knn_pooled(e: PointSet, g: PointSet, k: int, method="AUTO", threads=1) -> NeighborTable:
    """k nearest neighbours of every point of the pooled set ``e`` + ``g``, excluding the point itself

    Parameters
    ----------
    e, g : PointSet
        empirical and generated sets, same dimension
    k : int
        1 <= k <= e.m + g.m - 1
    method : str
        AUTO, BRUTE or KDTREE
    threads : int
        workers for the search; the table does not depend on it

    Returns
    -------
    NeighborTable

    """
    check_same_dimension(e, g)
    check_k(k, e.m + g.m)

    pool = np.vstack([e.points, g.points])
    indices, distances, ties = _knn(pool, pool, k, True, method, threads)

    return NeighborTable(
        indices=indices,
        distances=distances,
        from_generated=indices >= e.m,
        ties_at_cutoff=ties,
        n_empirical=e.m,
    )


def within_set_nn_distance(s: PointSet, method="AUTO", threads=1) -> np.ndarray:
    """Distance from each point to its nearest other point of the same set (0 for exact duplicates)"""
    if s.m < 2:
        raise TooSmall(f"Nearest neighbour distances need at least 2 points, got {s.m}")
    _, distances, _ = _knn(s.points, s.points, 1, True, method, threads)
    return distances[:, 0]


def min_cross_distance(source: PointSet, target: PointSet, method="AUTO", threads=1) -> np.ndarray:
    """For each point of ``source``, the distance to the closest point of ``target``"""
    check_same_dimension(source, target)
    _, distances, _ = _knn(source.points, target.points, 1, False, method, threads)
    return distances[:, 0]


def nearest_cross_distance_profile(e: PointSet, g: PointSet, method="AUTO", threads=1) -> np.ndarray:
    """Distance from every generated point to the closest empirical point"""
    return min_cross_distance(g, e, method, threads)
