"""DBSCAN baseline on squared-Euclidean epsilon-neighbourhoods.

The epsilon threshold is compared against *squared* distances, like every
other dissimilarity in this package; sweep grids are produced in the same
units. Entity visit order is a seeded permutation: core/noise status never
depends on the seed, but which cluster claims a shared border entity does,
which is exactly the non-determinism DBSCAN is known for.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .clustering import NOISE, Clustering, canonicalize_labels
from .data import row_squared_distances
from .neighbors import NeighborIndex

__all__ = ["DbscanParams", "dbscan", "epsilon_neighborhood"]

_UNVISITED = -2


@dataclass(frozen=True)
class DbscanParams:
    """epsilon: squared-distance radius; min_pts: density threshold."""

    epsilon: float
    min_pts: int

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError("epsilon must be nonnegative")
        if self.min_pts < 1:
            raise ValueError("min_pts must be >= 1")


def epsilon_neighborhood(data: np.ndarray, i: int, epsilon: float) -> np.ndarray:
    """All entities within squared distance epsilon of entity i, i included."""
    x = np.asarray(data, dtype=np.float64)
    return np.flatnonzero(row_squared_distances(x, x[i]) <= epsilon)


def neighborhood_lists(data: np.ndarray, epsilon: float, pairwise_d2: np.ndarray | None = None):
    """Epsilon-neighbourhood of every entity, as a list of id arrays."""
    if pairwise_d2 is not None:
        return [np.flatnonzero(row <= epsilon) for row in pairwise_d2]
    x = np.asarray(data, dtype=np.float64)
    return [np.flatnonzero(row_squared_distances(x, x[i]) <= epsilon) for i in range(x.shape[0])]


def dbscan(
    data: np.ndarray,
    params: DbscanParams,
    seed: int = 0,
    index: NeighborIndex | None = None,
) -> Clustering:
    """Cluster `data` with DBSCAN.

    An entity is core iff its epsilon-neighbourhood (itself included) has
    at least min_pts members; clusters are the maximal sets grown from
    core entities; remaining entities are NOISE. When `index` was built
    with the brute backend its pairwise matrix is reused for the
    neighbourhood scans.

    Reproducible bit-for-bit for a fixed seed.
    """
    pairwise = index.pairwise_d2 if index is not None else None
    neigh = neighborhood_lists(data, params.epsilon, pairwise)
    return dbscan_from_neighborhoods(neigh, params.min_pts, seed)


def dbscan_from_neighborhoods(neigh, min_pts: int, seed: int = 0) -> Clustering:
    """DBSCAN given precomputed neighbourhood lists (sweeps reuse these)."""
    n = len(neigh)
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    labels = np.full(n, _UNVISITED, dtype=np.int64)
    next_id = 0
    for p in order:
        if labels[p] != _UNVISITED:
            continue
        candidates = neigh[p]
        if candidates.size < min_pts:
            labels[p] = NOISE
            continue
        cid = next_id
        next_id += 1
        labels[p] = cid
        queue = deque(int(j) for j in candidates if j != p)
        while queue:
            q = queue.popleft()
            if labels[q] == NOISE:
                labels[q] = cid  # border entity reached from a core
            if labels[q] != _UNVISITED:
                continue
            labels[q] = cid
            expansion = neigh[q]
            if expansion.size >= min_pts:
                queue.extend(int(j) for j in expansion)
    return canonicalize_labels(labels)
