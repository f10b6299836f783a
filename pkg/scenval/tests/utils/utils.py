"""Reference helpers for the test suite.

``brute_knn`` is the all-pairs scan every accelerated search is checked against. It loops in plain Python over all
pairs and shares only the distance expression with the library.
"""
import numpy as np

from scenval import make_point_set
from scenval.core import Label
from scenval.nn_engine import euclidean


def brute_knn(e, g, k):
    """indices, distances and ties_at_cutoff of the pooled k nearest neighbours, one row per global point"""
    pool = np.vstack([e.points, g.points])
    n = pool.shape[0]
    indices = np.empty((n, k), dtype=int)
    distances = np.empty((n, k))
    ties = np.empty(n, dtype=int)

    for q in range(n):
        candidates = [(float(euclidean(pool[q], pool[j])), j) for j in range(n) if j != q]
        candidates.sort()
        chosen = candidates[:k]
        kth = chosen[-1][0]
        indices[q] = [j for _, j in chosen]
        distances[q] = [dist for dist, _ in chosen]
        ties[q] = sum(dist == kth for dist, _ in candidates) - sum(dist == kth for dist, _ in chosen)

    return indices, distances, ties


def discrimination_sets():
    """Twelve empirical points and two generated variants with equal nnc but different mr.

    The points sit in five clusters 100 apart, so with k=3 no neighbour crosses a cluster.

    - Three clusters hold two empirical points at distance 1 and two generated points. Each point's neighbours are
      the rest of its cluster, one of three from its own set. The "spread" variant puts the generated points at
      distance sqrt(0.89) from both empirical points. The "memorizing" variant puts them 0.1 from an empirical point.
    - Two clusters, identical in both variants, hold an empirical triangle and a generated triangle 2 below it.
      Each point's neighbours are the two other corners of its triangle and one point of the other triangle.

    Both variants have T1 = T2 = (6 * 1 + 6 * 2) / 36 = 1/2. mr(rho=0.5) is 0 for the spread variant and 1/2 for
    the memorizing one, whose six memorized points are the empirical points of the first three clusters.
    """
    empirical = []
    spread = []
    memorizing = []
    for j in range(3):
        x = 100.0 * j
        empirical += [[x, 0.0], [x + 1.0, 0.0]]
        spread += [[x + 0.5, 0.8], [x + 0.5, -0.8]]
        memorizing += [[x + 0.1, 0.0], [x + 0.9, 0.0]]
    for j in range(3, 5):
        x = 100.0 * j
        triangle = [[x, 0.0], [x + 1.0, 0.0], [x + 0.5, 0.9]]
        below = [[x + 0.1, -2.0], [x + 1.1, -2.0], [x + 0.6, -2.9]]
        empirical += triangle
        spread += below
        memorizing += below

    return (
        make_point_set(empirical, Label.EMPIRICAL),
        make_point_set(spread, Label.GENERATED),
        make_point_set(memorizing, Label.GENERATED),
    )
