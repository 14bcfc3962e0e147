"""All-pairs (or sampled-source) shortest path statistics via repeated BFS."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .. import kernels


@dataclass(frozen=True)
class PathLengthSummary:
    min: int
    avg: Fraction
    max: int
    connected_pairs: int
    mode: str
    sources: int
    seed: int | None = None
    histogram: tuple[int, ...] = ()

    @property
    def avg_float(self) -> float:
        return float(self.avg)


def distance_histogram(graph, sources) -> np.ndarray:
    """Ordered-pair distance counts from ``sources`` (index 0 unused)."""
    src = np.ascontiguousarray(sources, dtype=np.int64)
    return kernels.bfs_distance_counts(graph.indptr, graph.indices, src)


def path_length_summary(graph, mode: str = "exact", sources: int | None = None,
                        seed: int | None = None) -> PathLengthSummary:
    """Minimum, mean and maximum hop distance over connected node pairs.

    ``mode="exact"`` traverses from every node; pairs are counted once each.
    ``mode="sampled"`` traverses from ``sources`` nodes drawn uniformly
    without replacement using ``seed``; the mean is then an estimate over
    ordered (source, target) pairs and ``connected_pairs`` counts those.
    Pairs in different components never contribute.
    """
    if mode == "exact":
        src = np.arange(graph.n, dtype=np.int64)
    elif mode == "sampled":
        if sources is None or sources < 1:
            raise ValueError("sampled mode needs a positive source count")
        k = min(int(sources), graph.n)
        rng = np.random.default_rng(seed)
        src = np.sort(rng.choice(graph.n, size=k, replace=False)).astype(np.int64)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if graph.m == 0:
        raise ValueError("no connected pairs")
    hist = distance_histogram(graph, src)
    d = np.arange(len(hist), dtype=np.int64)
    pairs = int(hist.sum())
    total = int((d * hist).sum())
    nz = np.nonzero(hist)[0]
    if mode == "exact":
        # every unordered pair was seen from both ends
        pairs //= 2
        total //= 2
    return PathLengthSummary(
        min=int(nz[0]),
        avg=Fraction(total, pairs),
        max=int(nz[-1]),
        connected_pairs=pairs,
        mode=mode,
        sources=len(src),
        seed=seed if mode == "sampled" else None,
        histogram=tuple(int(x) for x in (hist // 2 if mode == "exact" else hist)),
    )
