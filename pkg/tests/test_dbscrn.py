import numpy as np
import pytest

from conftest import jittered_ring
from oracles import dbscrn_expansion_oracle, dbscrn_oracle, rnn_oracle
from rnncluster import (
    DbscrnParams,
    build_index,
    classify_core,
    dbscrn,
    expand_cluster,
    range_standardize,
)

LINE = np.array([[0.0], [1.0], [2.0], [4.0], [8.0]])


def test_classify_core_examples():
    two = build_index(np.array([[0.0], [1.0]]), k_max=1)
    assert classify_core(two, 0, 1) and classify_core(two, 1, 1)
    line = build_index(LINE, k_max=4)
    assert not classify_core(line, 4, 1)  # RNN_1 of the far point is empty
    assert classify_core(line, 1, 1)  # |RNN_1(1)| = 2 >= 1


def test_core_criterion_matches_oracle_counts():
    rng = np.random.default_rng(3)
    for _ in range(8):
        x = rng.normal(size=(int(rng.integers(8, 40)), 2))
        k = int(rng.integers(2, 6))
        index = build_index(x, k_max=k)
        for i in range(x.shape[0]):
            assert classify_core(index, i, k) == (len(rnn_oracle(x, i, k)) >= k)


def test_expand_two_points():
    index = build_index(np.array([[0.0], [1.0]]), k_max=1)
    assignment = np.full(2, -1, dtype=np.int64)
    members = expand_cluster(index, 0, 1, assignment, 0)
    assert sorted(members.tolist()) == [0, 1]  # |RNN_1(1)| = 1 > 2/pi


def test_expand_ring_excludes_far_outlier():
    x = np.vstack([jittered_ring(20, [0.0, 0.0], 0.5, 1), [[30.0, 30.0]]])
    index = build_index(x, k_max=6)
    assignment = np.full(21, -1, dtype=np.int64)
    members = expand_cluster(index, 0, 5, assignment, 0)
    assert sorted(members.tolist()) == list(range(20))
    assert assignment[20] == -1  # sparse outlier is left to the nearest-core pass
    assert set(members.tolist()) == dbscrn_expansion_oracle(x, 0, 5, set())


def test_expand_with_everything_claimed_returns_start_only():
    x = jittered_ring(20, [0.0, 0.0], 0.5, 2)
    index = build_index(x, k_max=6)
    assignment = np.zeros(20, dtype=np.int64)  # everyone already claimed
    assignment[5] = -1
    members = expand_cluster(index, 5, 5, assignment, 9)
    assert members.tolist() == [5]


def test_two_rings_fully_assigned(two_rings):
    x, _ = range_standardize(two_rings.matrix)
    index = build_index(x, k_max=6)
    clustering = dbscrn(x, index, DbscrnParams(k=5))
    assert clustering.n_clusters == 2
    assert clustering.n_noise == 0  # DBSCRN never outputs noise
    assert len(set(clustering.labels[:20].tolist())) == 1
    assert len(set(clustering.labels[20:].tolist())) == 1


def test_matches_full_oracle_on_random_data():
    rng = np.random.default_rng(17)
    for _ in range(10):
        x = rng.normal(size=(int(rng.integers(10, 45)), 2))
        k = int(rng.integers(2, 6))
        index = build_index(x, k_max=k)
        clustering = dbscrn(x, index, DbscrnParams(k=k))
        expected = dbscrn_oracle(x, k)
        # same partition up to label names; both canonical by construction
        from rnncluster import canonicalize_labels

        np.testing.assert_array_equal(
            clustering.labels, canonicalize_labels(np.array(expected)).labels
        )


def test_deterministic_across_repeated_runs(two_rings):
    x, _ = range_standardize(two_rings.matrix)
    index = build_index(x, k_max=10)
    reference = dbscrn(x, index, DbscrnParams(k=5)).labels
    for _ in range(10):
        rebuilt = build_index(x, k_max=10)
        np.testing.assert_array_equal(
            dbscrn(x, rebuilt, DbscrnParams(k=5)).labels, reference
        )


def test_every_cluster_contains_a_core_entity():
    rng = np.random.default_rng(23)
    x = rng.normal(size=(80, 2))
    k = 5
    index = build_index(x, k_max=k)
    clustering = dbscrn(x, index, DbscrnParams(k=k))
    sizes = index.rnn_sizes(k)
    assert clustering.n_clusters <= int((sizes >= k).sum())
    for cluster_id in range(clustering.n_clusters):
        members = np.flatnonzero(clustering.labels == cluster_id)
        assert (sizes[members] >= k).any()


def test_params_validated():
    with pytest.raises(ValueError):
        DbscrnParams(k=0)
