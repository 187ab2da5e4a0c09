import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from streamcut.stream import ORDER_KINDS, make_stream
from conftest import graph_from_pairs, random_gnp


@pytest.mark.parametrize("kind", ORDER_KINDS)
@given(n=st.integers(2, 40), seed=st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_every_order_is_a_permutation(kind, n, seed):
    g = random_gnp(n, 0.3, seed=seed % 101)
    plan = make_stream(g, kind, seed)
    assert plan.order_kind == kind and plan.seed == seed
    assert np.array_equal(np.sort(plan.sequence), np.arange(n))


@pytest.mark.parametrize("kind", ORDER_KINDS)
def test_orders_are_deterministic(kind):
    g = random_gnp(50, 0.2, seed=7)
    a = make_stream(g, kind, seed=123).sequence
    b = make_stream(g, kind, seed=123).sequence
    c = make_stream(g, kind, seed=124).sequence
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


@pytest.mark.parametrize("kind", ["bfs", "dfs"])
def test_traversal_prefixes_touch_earlier_neighbors(kind):
    """Within one component, every non-start vertex follows some neighbor."""
    for seed in range(10):
        g = random_gnp(60, 0.08, seed=seed)
        seq = make_stream(g, kind, seed).sequence
        pos = np.empty(g.n, dtype=np.int64)
        pos[seq] = np.arange(g.n)
        starts = 0
        for v in seq:
            nb = g.neighbors(int(v))
            if len(nb) == 0 or pos[nb].min() > pos[v]:
                starts += 1  # component start (or isolated vertex)
        from scipy.sparse import csr_matrix
        from scipy.sparse.csgraph import connected_components
        adj = csr_matrix((np.ones(len(g.indices)), g.indices, g.indptr),
                         shape=(g.n, g.n))
        ncomp, _ = connected_components(adj, directed=False)
        assert starts == ncomp


def test_bfs_layers_on_a_path():
    g = graph_from_pairs([(i, i + 1) for i in range(9)])
    seq = list(make_stream(g, "bfs", seed=0).sequence)
    start = seq[0]
    dist = [abs(v - start) for v in seq]
    assert dist == sorted(dist)  # BFS visits by hop distance


def test_dfs_goes_deep_on_a_path():
    g = graph_from_pairs([(i, i + 1) for i in range(9)])
    seq = make_stream(g, "dfs", seed=0).sequence
    # from the start, consecutive entries stay adjacent until an endpoint
    diffs = np.abs(np.diff(seq))
    assert diffs[0] == 1


def test_unknown_order_rejected(triangle):
    with pytest.raises(ValueError):
        make_stream(triangle, "sorted", seed=0)
