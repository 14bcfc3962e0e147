"""Sparse adjacency structure for the friendship graph, plus degree metrics."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np


@dataclass(frozen=True)
class AdjacencyGraph:
    """Symmetric CSR adjacency over dense node indices.

    Node ``i`` corresponds to ``account_ids[i]``; its neighbours are
    ``indices[indptr[i]:indptr[i + 1]]``, sorted ascending.
    """

    indptr: np.ndarray
    indices: np.ndarray
    account_ids: np.ndarray
    digest: str | None = None
    index_of: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "index_of", {int(a): i for i, a in enumerate(self.account_ids.tolist())}
        )

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def has_edge(self, i: int, j: int) -> bool:
        nb = self.neighbors(i)
        k = np.searchsorted(nb, j)
        return bool(k < len(nb) and nb[k] == j)


def graph_from_pairs(n: int, pairs: Iterable[tuple[int, int]], account_ids=None,
                     digest: str | None = None) -> AdjacencyGraph:
    """Build a graph on ``n`` dense nodes from index pairs (duplicates/self-loops dropped)."""
    arr = np.asarray(list(pairs), dtype=np.int64).reshape(-1, 2)
    arr = arr[arr[:, 0] != arr[:, 1]]
    if len(arr):
        arr = np.unique(np.sort(arr, axis=1), axis=0)
    src = np.concatenate([arr[:, 0], arr[:, 1]])
    dst = np.concatenate([arr[:, 1], arr[:, 0]])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    if account_ids is None:
        account_ids = np.arange(1, n + 1, dtype=np.int64)
    return AdjacencyGraph(indptr, np.ascontiguousarray(dst, dtype=np.int64),
                          np.asarray(account_ids, dtype=np.int64), digest)


def build_graph(dataset) -> AdjacencyGraph:
    """Graph with one node per user (stubs included) and one edge per friendship."""
    ids = np.array([u.account_id for u in dataset.users], dtype=np.int64)
    pos = {a: i for i, a in enumerate(ids.tolist())}
    pairs = [(pos[e.a], pos[e.b]) for e in dataset.edges]
    return graph_from_pairs(len(ids), pairs, ids, dataset.digest)


@dataclass(frozen=True)
class DegreeStats:
    min: int
    avg: Fraction
    max: int


def degree_stats(graph: AdjacencyGraph) -> DegreeStats:
    if graph.n == 0:
        raise ValueError("degree statistics of an empty graph")
    deg = graph.degrees()
    return DegreeStats(int(deg.min()), Fraction(2 * graph.m, graph.n), int(deg.max()))


@dataclass(frozen=True)
class DegreeDistribution:
    """Observed ``(degree, number of nodes)`` points, ascending by degree."""

    points: tuple[tuple[int, int], ...]

    @property
    def total(self) -> int:
        return sum(f for _, f in self.points)


def degree_distribution(graph: AdjacencyGraph) -> DegreeDistribution:
    if graph.n == 0:
        raise ValueError("degree distribution of an empty graph")
    ks, freq = np.unique(graph.degrees(), return_counts=True)
    return DegreeDistribution(tuple(zip(ks.tolist(), freq.tolist())))
