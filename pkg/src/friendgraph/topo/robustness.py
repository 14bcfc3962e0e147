"""Giant-component share under cumulative node removal."""
from __future__ import annotations

import math

import numpy as np

from .components import component_sizes


def _removal_count(fraction: float, n: int) -> int:
    return int(math.floor(fraction * n + 0.5))


def robustness_curve(graph, strategy: str = "random", steps=(0.01, 0.05, 0.1),
                     seed: int | None = None) -> list[tuple[float, float]]:
    """Remove nodes cumulatively and report the giant component's share.

    ``strategy="random"`` removes nodes in a seeded random order.
    ``strategy="hub_first"`` removes, at each step, the nodes with the highest
    degree in the graph left by the previous step (ties to the smaller index);
    degrees are refreshed once per step, not per node.

    Returns ``(fraction, largest component / remaining nodes)`` per step.
    """
    n = graph.n
    if n == 0:
        raise ValueError("robustness of an empty graph")
    steps = [float(f) for f in steps]
    if any(not (0.0 <= f < 1.0) for f in steps):
        raise ValueError("removal fractions must lie in [0, 1)")
    if any(b < a for a, b in zip(steps, steps[1:])):
        raise ValueError("removal fractions must be ascending")
    if strategy not in ("random", "hub_first"):
        raise ValueError(f"unknown strategy {strategy!r}")

    alive = np.ones(n, dtype=np.uint8)
    order = np.random.default_rng(seed).permutation(n) if strategy == "random" else None
    removed = 0
    src = np.repeat(np.arange(n), np.diff(graph.indptr))
    curve = []
    for f in steps:
        target = min(_removal_count(f, n), n - 1)
        extra = target - removed
        if extra > 0:
            if strategy == "random":
                alive[order[removed:target]] = 0
            else:
                live_edge = alive[src].astype(bool) & alive[graph.indices].astype(bool)
                deg = np.bincount(src[live_edge], minlength=n)
                cand = np.flatnonzero(alive)
                # descending degree, ascending index
                pick = cand[np.lexsort((cand, -deg[cand]))][:extra]
                alive[pick] = 0
            removed = target
        sizes = component_sizes(graph, alive)
        curve.append((f, sizes[0] / (n - removed)))
    return curve
