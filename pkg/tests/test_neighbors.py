import numpy as np
import pytest

from oracles import influence_oracle, knn_oracle, rnn_oracle
from rnncluster import KDTree, build_index

LINE = np.array([[0.0], [1.0], [2.0], [4.0], [8.0]])


def test_knn_examples_on_line():
    index = build_index(LINE, k_max=4)
    # squared distances from point 2: 1 then a 4-vs-4 tie won by index 0
    assert index.knn(2, 2).tolist() == [1, 0]
    assert index.knn(1, 1).tolist() == [0]  # 1-vs-1 tie between 0 and 2
    assert index.knn(0, 4).tolist() == knn_oracle(LINE, 0, 4)


def test_two_entities_list_each_other():
    index = build_index(np.array([[0.0], [1.0]]), k_max=1)
    assert index.knn(0, 1).tolist() == [1]
    assert index.knn(1, 1).tolist() == [0]
    assert index.rnn(0, 1).tolist() == [1]
    assert index.influence_space(0, 1).tolist() == [1]


def test_rnn_examples_on_line():
    index = build_index(LINE, k_max=4)
    assert index.rnn(1, 1).tolist() == [0, 2]
    assert index.rnn(4, 1).tolist() == []  # nobody's nearest is the far outlier
    assert index.influence_space(1, 1).tolist() == [0]


def test_rnn_empty_makes_influence_space_empty():
    index = build_index(LINE, k_max=4)
    for i in range(5):
        for k in (1, 2, 3):
            if index.rnn(i, k).size == 0:
                assert index.influence_space(i, k).size == 0


def test_k_bounds_are_enforced():
    index = build_index(LINE, k_max=2)
    with pytest.raises(ValueError):
        index.knn(0, 3)
    with pytest.raises(ValueError):
        index.rnn(0, 0)
    with pytest.raises(ValueError):
        build_index(LINE, k_max=5)
    with pytest.raises(ValueError):
        build_index(LINE, k_max=0)


def _random_dataset(rng):
    n = int(rng.integers(5, 60))
    m = int(rng.integers(1, 5))
    x = rng.normal(size=(n, m))
    if rng.random() < 0.3:  # duplicate rows exercise the index tie-break
        x[rng.integers(n)] = x[rng.integers(n)]
    return x


def test_duality_and_nesting_properties():
    rng = np.random.default_rng(7)
    for _ in range(25):
        x = _random_dataset(rng)
        n = x.shape[0]
        k_max = min(8, n - 1)
        index = build_index(x, k_max)
        for k in range(1, k_max + 1):
            rnn_sets = [set(index.rnn(i, k).tolist()) for i in range(n)]
            for i in range(n):
                knn_i = set(index.knn(i, k).tolist())
                # duality: j in rnn(i,k) iff i in knn(j,k)
                for j in range(n):
                    assert (j in rnn_sets[i]) == (i in set(index.knn(j, k).tolist()))
                assert len(index.influence_space(i, k)) <= k
                assert set(index.influence_space(i, k).tolist()) <= knn_i
                if k < k_max:
                    assert knn_i <= set(index.knn(i, k + 1).tolist())


def test_matches_plain_loop_oracle():
    rng = np.random.default_rng(11)
    for _ in range(10):
        x = _random_dataset(rng)
        k_max = min(6, x.shape[0] - 1)
        index = build_index(x, k_max)
        for i in range(x.shape[0]):
            assert index.knn(i, k_max).tolist() == knn_oracle(x, i, k_max)
            for k in (1, k_max):
                assert index.rnn(i, k).tolist() == rnn_oracle(x, i, k)
                assert index.influence_space(i, k).tolist() == influence_oracle(x, i, k)


def test_backends_are_bit_identical():
    rng = np.random.default_rng(42)
    for trial in range(50):
        n = int(rng.integers(5, 300))
        m = int(rng.integers(1, 11))
        x = rng.normal(size=(n, m)) * rng.uniform(0.01, 100)
        if trial % 4 == 0:  # force exact distance ties
            x[: n // 2] = x[n - n // 2 :][::-1]
        k_max = min(int(rng.integers(1, 11)), n - 1)
        brute = build_index(x, k_max, backend="brute")
        spatial = build_index(x, k_max, backend="spatial")
        np.testing.assert_array_equal(brute.knn_idx, spatial.knn_idx)
        np.testing.assert_array_equal(brute.knn_d2, spatial.knn_d2)


def test_rebuild_is_deterministic():
    rng = np.random.default_rng(5)
    x = rng.normal(size=(120, 3))
    a = build_index(x, 10)
    b = build_index(x, 10)
    np.testing.assert_array_equal(a.knn_idx, b.knn_idx)
    np.testing.assert_array_equal(a.knn_d2, b.knn_d2)
    assert a.rnn(17, 7).tolist() == b.rnn(17, 7).tolist()


def test_unknown_backend_rejected():
    with pytest.raises(ValueError, match="backend"):
        build_index(LINE, 2, backend="approximate")


def test_kdtree_handles_identical_points():
    x = np.zeros((40, 2))
    tree = KDTree(x, leaf_size=8)
    idx, d2 = tree.query(x[0], k=5, exclude=0)
    assert idx.tolist() == [1, 2, 3, 4, 5]  # all-tied distances resolve by id
    np.testing.assert_array_equal(d2, np.zeros(5))
