"""kNN, reverse-kNN and k-influence-space queries over a prebuilt index.

The index stores, for every entity, its k_max nearest other entities sorted
by (squared distance ascending, entity index ascending). Reverse lists for
any k <= k_max are derived by inverting the kNN lists in O(n*k) and cached,
so a parameter sweep over k reuses a single build.

Two construction backends exist and must produce bit-identical lists: a
vectorized brute-force scan (the oracle, and the default at these data
sizes) and an exact kd-tree.
"""

from __future__ import annotations

import numpy as np

from .data import row_squared_distances
from .kdtree import KDTree

__all__ = ["NeighborIndex", "build_index"]


class NeighborIndex:
    """Immutable nearest-neighbour structure; safe for concurrent readers.

    Attributes
    ----------
    data : the (n, m) matrix the index was built on.
    k_max : largest k any query may use.
    knn_idx : (n, k_max) entity ids, each row sorted by (distance, id).
    knn_d2 : (n, k_max) squared distances matching knn_idx.
    pairwise_d2 : full (n, n) squared-distance matrix when the brute
        backend built the index, else None. Radius-style consumers
        (DBSCAN) reuse it.
    """

    def __init__(self, data, k_max, knn_idx, knn_d2, backend, pairwise_d2=None):
        self.data = data
        self.k_max = int(k_max)
        self.knn_idx = knn_idx
        self.knn_d2 = knn_d2
        self.backend = backend
        self.pairwise_d2 = pairwise_d2
        self._rnn_cache: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def _check_k(self, k: int) -> None:
        if not 1 <= k <= self.k_max:
            raise ValueError(f"k={k} outside the supported range 1..{self.k_max}")

    def knn(self, i: int, k: int) -> np.ndarray:
        """The k nearest entities to entity i, nearest first."""
        self._check_k(k)
        return self.knn_idx[i, :k]

    def rnn_csr(self, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Inverted lists for one k, in CSR form: (offsets, members, sizes).

        members[offsets[i]:offsets[i+1]] are the entities that count i
        among their k nearest, in ascending id order. Built once per k and
        cached. Batch consumers (cluster expansion) read this directly.
        """
        self._check_k(k)
        cached = self._rnn_cache.get(k)
        if cached is not None:
            return cached
        flat = self.knn_idx[:, :k].ravel()
        sizes = np.bincount(flat, minlength=self.n)
        offsets = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(sizes, out=offsets[1:])
        # stable sort keeps positions ascending, so members stay id-sorted
        members = np.argsort(flat, kind="stable") // k
        csr = (offsets, members.astype(np.int64), sizes)
        self._rnn_cache[k] = csr
        return csr

    def rnn(self, i: int, k: int) -> np.ndarray:
        """Entities having i among their k nearest; ascending ids, may be empty."""
        offsets, members, _ = self.rnn_csr(k)
        return members[offsets[i] : offsets[i + 1]]

    def rnn_sizes(self, k: int) -> np.ndarray:
        """|RNN_k(i)| for every entity i."""
        return self.rnn_csr(k)[2]

    def influence_space(self, i: int, k: int) -> np.ndarray:
        """NN_k(i) intersected with RNN_k(i); ascending ids, size <= k."""
        self._check_k(k)
        return np.intersect1d(self.knn(i, k), self.rnn(i, k), assume_unique=True)


def build_index(data: np.ndarray, k_max: int, backend: str = "brute") -> NeighborIndex:
    """Build the neighbour index for all k <= k_max.

    backend "brute" scans full distance rows (and retains the pairwise
    matrix for radius reuse); "spatial" queries an exact kd-tree. Both
    produce bit-identical lists.
    """
    x = np.ascontiguousarray(data, dtype=np.float64)
    n = x.shape[0]
    if k_max >= n:
        raise ValueError(f"k_max={k_max} must be at most n-1={n - 1}")
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if backend == "brute":
        pairwise = np.empty((n, n), dtype=np.float64)
        for i in range(n):
            pairwise[i] = row_squared_distances(x, x[i])
        masked = pairwise.copy()
        np.fill_diagonal(masked, np.inf)  # self is never a neighbour
        knn_idx = np.argsort(masked, axis=1, kind="stable")[:, :k_max]
        knn_d2 = np.take_along_axis(masked, knn_idx, axis=1)
        return NeighborIndex(x, k_max, knn_idx, knn_d2, backend, pairwise_d2=pairwise)
    knn_idx = np.empty((n, k_max), dtype=np.int64)
    knn_d2 = np.empty((n, k_max), dtype=np.float64)
    if backend == "spatial":
        tree = KDTree(x)
        for i in range(n):
            idx, d2 = tree.query(x[i], k_max, exclude=i)
            knn_idx[i] = idx
            knn_d2[i] = d2
        return NeighborIndex(x, k_max, knn_idx, knn_d2, backend)
    raise ValueError(f"unknown backend {backend!r} (expected 'brute' or 'spatial')")
