"""ISDBSCAN: influence-space clustering with seeded random start selection.

Entities are drawn one at a time (without replacement) from the working
set. Each draw seeds a transitive expansion over k-influence spaces: an
entity whose influence space has more than 2k/3 members pulls all of those
members in, and they expand in turn. Expansions whose collected set has
more than k members become clusters; smaller ones are marked noise.

Influence spaces are those of the full dataset (the index is never
rebuilt on the shrinking working set); a shared visited set guarantees
each entity is expanded at most once per run, which bounds the whole run
by n expansions and forces termination.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clustering import NOISE, Clustering, canonicalize_labels
from .neighbors import NeighborIndex

__all__ = ["IsdbscanParams", "isdbscan", "make_cluster"]


@dataclass(frozen=True)
class IsdbscanParams:
    """k: neighbour count for the influence space; seed: start-selection RNG."""

    k: int
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")


def make_cluster(index: NeighborIndex, start: int, k: int, visited: set[int]) -> set[int]:
    """Collect the influence-space expansion seeded at `start`.

    Returns the empty set when the start entity fails the 2k/3 density
    guard. Otherwise the start and every transitively pulled-in entity not
    already in `visited` are collected; collected entities are added to
    `visited` so no entity is ever expanded twice within a run.
    """
    threshold = 2.0 * k / 3.0
    if len(index.influence_space(start, k)) <= threshold:
        return set()
    collected = {start}
    visited.add(start)
    worklist = [start]
    while worklist:
        entity = worklist.pop()
        influence = index.influence_space(entity, k)
        if influence.size <= threshold:
            continue
        for member in influence.tolist():
            if member not in visited:
                visited.add(member)
                collected.add(member)
                worklist.append(member)
    return collected


def isdbscan(data: np.ndarray, index: NeighborIndex, params: IsdbscanParams) -> Clustering:
    """Cluster `data` using the prebuilt neighbour index.

    Collected sets larger than k become clusters; everything else is
    NOISE. When k >= n no collected set can exceed k, so every entity is
    noise; that case short-circuits since the index cannot serve k >= n
    queries. Reproducible bit-for-bit for a fixed seed.
    """
    n = index.n
    k = params.k
    if k >= n:
        return Clustering(labels=np.full(n, NOISE, dtype=np.int64))
    if k > index.k_max:
        raise ValueError(f"k={k} exceeds the index k_max={index.k_max}")
    rng = np.random.default_rng(params.seed)
    labels = np.full(n, NOISE, dtype=np.int64)
    visited: set[int] = set()
    next_id = 0
    # a seeded permutation, skipping removed entities, is random selection
    # without replacement from the working set
    for start in rng.permutation(n).tolist():
        if start in visited:
            continue
        cluster = make_cluster(index, start, k, visited)
        if len(cluster) > k:
            labels[list(cluster)] = next_id
            next_id += 1
        else:
            # too small: every collected entity (and the failed start) is
            # noise and leaves the working set for good
            visited.add(start)
    return canonicalize_labels(labels)
