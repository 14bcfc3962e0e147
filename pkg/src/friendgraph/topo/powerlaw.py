from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PowerLawFit:
    lam: float
    intercept: float
    r_squared: float
    points_used: int

    def predict(self, k: float) -> float:
        return 10.0 ** self.intercept * k ** self.lam


def fit_power_law(dist) -> PowerLawFit:
    """Least-squares line through ``(log10 k, log10 freq)``.

    Accepts a ``DegreeDistribution`` or any iterable of ``(k, freq)`` pairs.
    Points with ``k < 1`` or ``freq < 1`` cannot be logged and are skipped.
    """
    pts = dist.points if hasattr(dist, "points") else dist
    xs, ys = [], []
    for k, f in pts:
        if k >= 1 and f >= 1:
            xs.append(math.log10(k))
            ys.append(math.log10(f))
    if len(xs) < 2:
        raise ValueError("power-law fit needs at least two points with k >= 1 and freq >= 1")
    n = len(xs)
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        raise ValueError("power-law fit needs at least two distinct degrees")
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = my - slope * mx
    ss_tot = math.fsum((y - my) ** 2 for y in ys)
    ss_res = math.fsum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return PowerLawFit(slope, intercept, min(1.0, max(0.0, r2)), n)
