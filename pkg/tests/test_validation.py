import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import ari_pairs_oracle, dbcv_oracle
from rnncluster import (
    DbscrnParams,
    adjusted_rand_index,
    build_index,
    canonicalize_labels,
    contingency_table,
    dbcv,
    dbscrn,
    range_standardize,
    select_best,
)


def test_ari_trivial_cases():
    assert adjusted_rand_index([0, 0, 1, 1], [0, 0, 1, 1]) == 1.0
    assert adjusted_rand_index([0, 0, 1, 1], [1, 1, 0, 0]) == 1.0  # permutation
    assert adjusted_rand_index([0, 0, 1, 1], [0, 0, 1, 2]) == pytest.approx(4 / 7)


labelings = st.lists(st.integers(0, 4), min_size=2, max_size=40)


@given(labelings, st.permutations(range(5)))
@settings(max_examples=80, deadline=None)
def test_ari_invariant_under_relabeling(labels, perm):
    truth = [(i * 7) % 3 for i in range(len(labels))]
    renamed = [perm[l] for l in labels]
    assert adjusted_rand_index(labels, truth) == pytest.approx(
        adjusted_rand_index(renamed, truth), abs=1e-12
    )


def test_ari_self_agreement_is_one():
    rng = np.random.default_rng(0)
    for _ in range(10):
        labels = rng.integers(0, 5, size=30)
        assert adjusted_rand_index(labels, labels) == 1.0


def test_ari_matches_pair_counting_oracle():
    rng = np.random.default_rng(1)
    for _ in range(100):
        n = int(rng.integers(2, 201))
        a = rng.integers(0, int(rng.integers(1, 8)) + 1, size=n)
        b = rng.integers(0, int(rng.integers(1, 8)) + 1, size=n)
        assert adjusted_rand_index(a, b) == pytest.approx(
            ari_pairs_oracle(a.tolist(), b.tolist()), abs=1e-12
        )


def test_ari_noise_policies():
    pred = np.array([0, 0, 1, 1, -1, -1])
    truth = np.array([0, 0, 1, 1, 2, 2])
    # singleton policy: each noise entity its own cluster
    manual = np.array([0, 0, 1, 1, 2, 3])
    assert adjusted_rand_index(pred, truth) == adjusted_rand_index(manual, truth)
    # single-label policy: noise becomes one extra cluster, here matching truth
    assert adjusted_rand_index(pred, truth, noise="cluster") == 1.0
    with pytest.raises(ValueError):
        adjusted_rand_index(pred, truth, noise="drop")


def test_ari_length_mismatch():
    with pytest.raises(ValueError, match="length"):
        adjusted_rand_index([0, 1], [0, 1, 2])


def test_contingency_table_counts():
    table = contingency_table([0, 0, 1, 1], [0, 0, 1, 2])
    assert table.sum() == 4
    assert table.sum(axis=1).tolist() == [2, 2]
    assert table.sum(axis=0).tolist() == [2, 1, 1]


def test_dbcv_six_point_hand_case():
    x = np.array([[0.0], [1.0], [2.0], [100.0], [101.0], [102.0]])
    labels = np.array([0, 0, 0, 1, 1, 1])
    report = dbcv(x, labels)
    # clusters: apts (4/3, 1, 4/3); MST edges both 4/3; no internal edge so
    # sparseness falls back to the max edge; separation via middle nodes = 100
    assert report.sparseness == pytest.approx([4 / 3, 4 / 3])
    assert report.separation == pytest.approx([100.0, 100.0])
    expected = (100 - 4 / 3) / 100
    assert report.overall == pytest.approx(expected)
    assert report.overall > 0.9
    assert report.overall == pytest.approx(dbcv_oracle(x, labels), abs=1e-12)


def test_dbcv_degenerate_inputs_score_zero():
    x = np.random.default_rng(0).normal(size=(10, 2))
    assert dbcv(x, np.zeros(10, dtype=int)).overall == 0.0  # K = 1
    labels = np.zeros(10, dtype=int)
    labels[9] = 1  # second cluster is a singleton
    assert dbcv(x, labels).overall == 0.0


def test_dbcv_separated_beats_shuffled():
    rng = np.random.default_rng(2)
    x = np.vstack(
        [rng.normal(0, 0.05, size=(25, 2)), rng.normal(0, 0.05, size=(25, 2)) + 4.0]
    )
    good = np.repeat([0, 1], 25)
    shuffled = good.copy()
    rng.shuffle(shuffled)
    assert dbcv(x, good).overall > 0
    assert dbcv(x, shuffled).overall < dbcv(x, good).overall


def test_dbcv_matches_direct_oracle():
    rng = np.random.default_rng(3)
    for _ in range(20):
        n = int(rng.integers(10, 101))
        m = int(rng.integers(1, 4))
        x = rng.normal(size=(n, m)) * rng.uniform(0.5, 3.0)
        n_clusters = int(rng.integers(2, 5))
        labels = rng.integers(0, n_clusters, size=n)
        if rng.random() < 0.4:
            labels[rng.random(n) < 0.15] = -1  # sprinkle noise
        assert dbcv(x, labels).overall == pytest.approx(dbcv_oracle(x, labels), abs=1e-9)


def test_dbcv_bounds_and_relabeling_invariance():
    rng = np.random.default_rng(4)
    for _ in range(10):
        x = rng.normal(size=(40, 2))
        labels = rng.integers(0, 3, size=40)
        report = dbcv(x, labels)
        assert -1.0 <= report.overall <= 1.0
        assert np.all(report.validity >= -1.0) and np.all(report.validity <= 1.0)
        renamed = np.choose(labels, [2, 0, 1])
        assert dbcv(x, renamed).overall == pytest.approx(report.overall, abs=1e-12)


def test_dbcv_weight_counts_noise_by_default():
    rng = np.random.default_rng(5)
    x = np.vstack(
        [rng.normal(0, 0.05, size=(20, 2)), rng.normal(0, 0.05, size=(20, 2)) + 3.0]
    )
    labels = np.repeat([0, 1], 20)
    noisy = labels.copy()
    noisy[:5] = -1
    full = dbcv(x, noisy)
    unweighted = dbcv(x, noisy, count_noise_in_weight=False)
    assert full.overall < unweighted.overall  # noise share penalizes the score


def test_select_best_rules():
    with pytest.raises(ValueError):
        select_best([])
    entry = (DbscrnParams(k=4), "clustering-a", 0.2)
    assert select_best([entry]) == (DbscrnParams(k=4), "clustering-a")
    better = (DbscrnParams(k=9), "clustering-b", 0.7)
    assert select_best([entry, better])[1] == "clustering-b"
    # ties resolve to the smaller parameter values
    tied_small = (DbscrnParams(k=3), "small", 0.7)
    assert select_best([better, tied_small])[1] == "small"


def test_select_best_end_to_end_on_two_rings(two_rings):
    x, _ = range_standardize(two_rings.matrix)
    index = build_index(x, k_max=10)
    entries = []
    for k in range(3, 11):
        clustering = dbscrn(x, index, DbscrnParams(k=k))
        entries.append((DbscrnParams(k=k), clustering, dbcv(x, clustering).overall))
    params, clustering = select_best(entries)
    truth = canonicalize_labels(two_rings.true_labels)
    assert adjusted_rand_index(clustering, truth.labels) == 1.0
