"""Friendship mixing by gender, relationship status and age difference.

Each undirected friendship is counted once. Friendships touching a stub
user are left out of the attribute tallies and counted in ``excluded_edges``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .model import GENDERS, STATUSES


@dataclass(frozen=True)
class MixingMatrix:
    """Symmetric edge counts by endpoint attribute pair.

    ``cells[i][j] == cells[j][i]`` is the number of edges joining label ``i``
    and label ``j``; diagonal cells hold same-label edges. Each edge is
    counted once, so ``total`` sums the upper triangle including the diagonal.
    """

    labels: tuple[str, ...]
    cells: tuple[tuple[int, ...], ...]
    excluded_edges: int = 0
    digest: str | None = None

    @property
    def total(self) -> int:
        k = len(self.labels)
        return sum(self.cells[i][j] for i in range(k) for j in range(i, k))

    def cell(self, u: str, v: str) -> int:
        return self.cells[self.labels.index(u)][self.labels.index(v)]

    def pairs(self) -> dict[str, int]:
        """Upper-triangle cells keyed ``"U-V"``."""
        k = len(self.labels)
        return {f"{self.labels[i]}-{self.labels[j]}": self.cells[i][j]
                for i in range(k) for j in range(i, k)}

    def endpoint_counts(self) -> dict[str, int]:
        """Number of edge endpoints carrying each label."""
        k = len(self.labels)
        return {self.labels[i]: sum(self.cells[i]) + self.cells[i][i] for i in range(k)}


def _mixing(dataset, attr: str, domain) -> MixingMatrix:
    labels = tuple(v.value for v in domain)
    pos = {v: i for i, v in enumerate(domain)}
    k = len(labels)
    cells = [[0] * k for _ in range(k)]
    excluded = 0
    for e in dataset.edges:
        ua, ub = dataset.user(e.a), dataset.user(e.b)
        if ua.stub or ub.stub:
            excluded += 1
            continue
        i, j = pos[getattr(ua, attr)], pos[getattr(ub, attr)]
        cells[i][j] += 1
        if i != j:
            cells[j][i] += 1
    return MixingMatrix(labels, tuple(map(tuple, cells)), excluded,
                        getattr(dataset, "digest", None))


def gender_mixing(dataset) -> MixingMatrix:
    return _mixing(dataset, "gender", GENDERS)


def status_mixing(dataset) -> MixingMatrix:
    return _mixing(dataset, "status", STATUSES)


@dataclass(frozen=True)
class AgeDiffHistogram:
    bins: tuple[int, ...]
    excluded_edges: int = 0
    digest: str | None = None

    @property
    def total(self) -> int:
        return sum(self.bins)

    def mass_within(self, years: int) -> int:
        return sum(self.bins[: years + 1])


def age_difference_histogram(dataset) -> AgeDiffHistogram:
    """Edge counts by absolute age difference in whole years (bin 0 upward)."""
    diffs = []
    excluded = 0
    for e in dataset.edges:
        ua, ub = dataset.user(e.a), dataset.user(e.b)
        if ua.stub or ub.stub:
            excluded += 1
            continue
        diffs.append(abs(ua.age - ub.age))
    bins = np.bincount(np.asarray(diffs, dtype=np.int64)) if diffs else np.zeros(0, np.int64)
    return AgeDiffHistogram(tuple(int(x) for x in bins), excluded, getattr(dataset, "digest", None))


@dataclass(frozen=True)
class MixingBaseline:
    """Expected counts under random pairing of endpoints, and observed/expected."""

    labels: tuple[str, ...]
    expected: tuple[tuple[Fraction, ...], ...]
    ratios: tuple[tuple[float | None, ...], ...]
    shares: dict[str, Fraction] = field(default_factory=dict)

    def expected_pairs(self) -> dict[str, Fraction]:
        k = len(self.labels)
        return {f"{self.labels[i]}-{self.labels[j]}": self.expected[i][j]
                for i in range(k) for j in range(i, k)}

    def ratio_pairs(self) -> dict[str, float | None]:
        k = len(self.labels)
        return {f"{self.labels[i]}-{self.labels[j]}": self.ratios[i][j]
                for i in range(k) for j in range(i, k)}


def random_mixing_baseline(matrix: MixingMatrix, marginals=None) -> MixingBaseline:
    """Compare a mixing matrix with random endpoint pairing.

    ``marginals`` maps label to endpoint count (defaults to the matrix's own
    endpoint counts). With share ``p`` per label, the expected count is
    ``|E| p_u^2`` on the diagonal and ``2 |E| p_u p_v`` off it. Ratios are
    None where the expected count is zero, and everywhere when ``|E| = 0``.
    """
    labels = matrix.labels
    marg = dict(matrix.endpoint_counts() if marginals is None else marginals)
    denom = sum(marg.get(lab, 0) for lab in labels)
    total = matrix.total
    shares = {lab: (Fraction(marg.get(lab, 0), denom) if denom else Fraction(0)) for lab in labels}
    k = len(labels)
    expected, ratios = [], []
    for i in range(k):
        erow, rrow = [], []
        for j in range(k):
            pu, pv = shares[labels[i]], shares[labels[j]]
            ex = total * pu * pu if i == j else 2 * total * pu * pv
            erow.append(ex)
            rrow.append(None if ex == 0 else float(matrix.cells[i][j] / ex))
        expected.append(tuple(erow))
        ratios.append(tuple(rrow))
    return MixingBaseline(labels, tuple(expected), tuple(ratios), shares)


def single_single_share(matrix: MixingMatrix) -> float | None:
    """Share of single–single edges among edges with at least one single endpoint."""
    i = matrix.labels.index("single")
    touching = sum(matrix.cells[i])
    return None if touching == 0 else matrix.cells[i][i] / touching
