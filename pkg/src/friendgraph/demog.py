"""Frequency and percentage tallies of users by gender, age group and status."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

from .model import GENDERS, STATUSES, Gender, Status


class AgeGroup(enum.Enum):
    G8_25 = "8-25"
    G26_40 = "26-40"
    G41_64 = "41-64"
    G65_80 = "65-80"

    @classmethod
    def of(cls, age: int) -> "AgeGroup | None":
        """Group for ``age``, or None when the age falls outside 8..80."""
        if 8 <= age <= 25:
            return cls.G8_25
        if 26 <= age <= 40:
            return cls.G26_40
        if 41 <= age <= 64:
            return cls.G41_64
        if 65 <= age <= 80:
            return cls.G65_80
        return None


AGE_GROUPS = tuple(AgeGroup)
ATTRIBUTES = ("gender", "age_group", "status")
_DOMAINS = {"gender": GENDERS, "age_group": AGE_GROUPS, "status": STATUSES}

# table name -> attribute tuple, in report order
FAMILIES = {
    "gender": ("gender",),
    "age_group": ("age_group",),
    "status": ("status",),
    "gender_age_group": ("gender", "age_group"),
    "gender_status": ("gender", "status"),
    "age_group_status": ("age_group", "status"),
    "gender_age_group_status": ("gender", "age_group", "status"),
}


def _value(user, attr):
    if attr == "gender":
        return user.gender
    if attr == "status":
        return user.status
    return AgeGroup.of(user.age)


def _canonical_attrs(attributes) -> tuple[str, ...]:
    attrs = set(attributes)
    if not attrs:
        raise ValueError("count_partition needs at least one attribute")
    unknown = attrs - set(ATTRIBUTES)
    if unknown:
        raise ValueError(f"unknown attributes {sorted(unknown)}")
    return tuple(a for a in ATTRIBUTES if a in attrs)


def count_partition(dataset, attributes) -> dict[tuple, int]:
    """Count non-stub users in every cell of the cross-partition.

    Keys are value tuples ordered (gender, age_group, status) restricted to
    the requested attributes; empty cells are present with count 0. When
    ``age_group`` is requested, users older than 80 fall in no cell.
    """
    attrs = _canonical_attrs(attributes)
    counts = {key: 0 for key in itertools.product(*(_DOMAINS[a] for a in attrs))}
    for u in dataset.users:
        if u.stub:
            continue
        key = tuple(_value(u, a) for a in attrs)
        if None in key:
            continue
        counts[key] += 1
    return counts


def percent(count: int, total: int) -> Fraction | None:
    return None if total == 0 else Fraction(100 * count, total)


def round_percent(p: Fraction | None) -> float | None:
    """Half-up rounding to two decimals; None stays None (undefined)."""
    if p is None:
        return None
    d = Decimal(p.numerator) / Decimal(p.denominator)
    return float(d.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def _label(v) -> str:
    return v.value


@dataclass(frozen=True)
class Table:
    attributes: tuple[str, ...]
    counts: dict[tuple, int]
    denominator: int

    def percents(self) -> dict[tuple, Fraction | None]:
        return {k: percent(c, self.denominator) for k, c in self.counts.items()}

    def rows(self):
        """``(labels, count, rounded percent)`` per cell, in enumeration order."""
        for k, c in self.counts.items():
            yield tuple(_label(v) for v in k), c, round_percent(percent(c, self.denominator))


@dataclass(frozen=True)
class DemographyReport:
    """All seven tally families plus per-year age curves.

    Families involving age groups use the in-band population (ages 8..80) as
    their denominator; ``out_of_band`` counts the users excluded from them.
    """

    n_total: int
    out_of_band: int
    tables: dict[str, Table]
    by_age: dict[int, dict[str, int]] = field(default_factory=dict)
    digest: str | None = None

    @property
    def n_in_band(self) -> int:
        return self.n_total - self.out_of_band

    def __getitem__(self, family: str) -> Table:
        return self.tables[family]

    def to_dict(self) -> dict:
        fams = {}
        for name, t in self.tables.items():
            fams[name] = {
                "attributes": list(t.attributes),
                "denominator": t.denominator,
                "cells": [
                    {"key": list(labels), "count": c, "percent": p}
                    for labels, c, p in t.rows()
                ],
            }
        return {
            "n_total": self.n_total,
            "n_in_band": self.n_in_band,
            "out_of_band": self.out_of_band,
            "families": fams,
            "by_age": [{"age": a, **row} for a, row in sorted(self.by_age.items())],
        }


def _age_curves(members) -> dict[int, dict[str, int]]:
    cols = ["total"] + [g.value for g in GENDERS] + [s.value for s in STATUSES]
    cols += [f"{g.value}_{s.value}" for g in GENDERS for s in STATUSES]
    out: dict[int, dict[str, int]] = {}
    for u in members:
        row = out.setdefault(u.age, dict.fromkeys(cols, 0))
        row["total"] += 1
        row[u.gender.value] += 1
        row[u.status.value] += 1
        row[f"{u.gender.value}_{u.status.value}"] += 1
    return out


def demography_report(dataset) -> DemographyReport:
    members = dataset.members()
    n = len(members)
    out_of_band = sum(1 for u in members if AgeGroup.of(u.age) is None)
    tables = {}
    for name, attrs in FAMILIES.items():
        denom = n - out_of_band if "age_group" in attrs else n
        tables[name] = Table(attrs, count_partition(dataset, attrs), denom)
    return DemographyReport(n, out_of_band, tables, _age_curves(members),
                            getattr(dataset, "digest", None))


def family_tsv(report: DemographyReport, family: str) -> str:
    t = report.tables[family]
    lines = ["#" + "\t".join(list(t.attributes) + ["count", "percent"])]
    for labels, c, p in t.rows():
        lines.append("\t".join(list(labels) + [str(c), "NA" if p is None else f"{p:.2f}"]))
    return "\n".join(lines) + "\n"


__all__ = [
    "AGE_GROUPS",
    "AgeGroup",
    "DemographyReport",
    "FAMILIES",
    "Gender",
    "Status",
    "Table",
    "count_partition",
    "demography_report",
    "family_tsv",
    "percent",
    "round_percent",
]
