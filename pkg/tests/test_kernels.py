import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from friendgraph import kernels
from friendgraph.topo import graph_from_pairs

from oracles import brute_components, floyd_warshall


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "pure")
    assert "pure" in kernels.available_backends()


def test_compiled_backend_built():
    # the package is expected to ship with its extension built
    assert "compiled" in kernels.available_backends()


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 30))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=80))
    return n, [(a, b) for a, b in pairs if a != b]


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_bfs_counts_match_floyd_warshall(g):
    n, pairs = g
    G = graph_from_pairs(n, pairs)
    d = floyd_warshall(n, pairs)
    finite = d[np.isfinite(d)].astype(int)
    expected = np.bincount(finite)
    expected[0] = 0  # self-distances are not counted
    expected = np.trim_zeros(expected, "b").tolist() or [0]
    for mod in kernels.available_backends().values():
        got = mod.bfs_distance_counts(G.indptr, G.indices, np.arange(n, dtype=np.int64))
        assert (np.trim_zeros(got, "b").tolist() or [0]) == expected


@settings(max_examples=60, deadline=None)
@given(graphs(), st.randoms())
def test_component_labels_match_oracle(g, rnd):
    n, pairs = g
    G = graph_from_pairs(n, pairs)
    alive = np.array([rnd.random() < 0.8 for _ in range(n)], dtype=np.uint8)
    want = brute_components(n, pairs, alive)
    for mod in kernels.available_backends().values():
        labels = np.asarray(mod.component_labels(G.indptr, G.indices, alive))
        assert (labels[alive == 0] == -1).all()
        live = labels[labels >= 0]
        sizes = sorted(np.bincount(live).tolist(), reverse=True) if live.size else []
        assert [s for s in sizes if s] == want


def test_backends_agree_on_subset_sources(kernel_module):
    pairs = [(0, 1), (1, 2), (2, 3), (5, 6)]
    G = graph_from_pairs(7, pairs)
    got = kernel_module.bfs_distance_counts(G.indptr, G.indices, np.array([0, 5], dtype=np.int64))
    assert got.tolist() == [0, 2, 1, 1]


def test_empty_sources(kernel_module):
    G = graph_from_pairs(3, [(0, 1)])
    got = kernel_module.bfs_distance_counts(G.indptr, G.indices, np.zeros(0, dtype=np.int64))
    assert got.sum() == 0


def test_pure_switch_env(monkeypatch):
    import importlib
    monkeypatch.setenv("FRIENDGRAPH_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "pure"
    finally:
        monkeypatch.delenv("FRIENDGRAPH_PURE_PYTHON")
        importlib.reload(kernels)
