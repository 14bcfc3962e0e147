"""Assemble every analysis into one JSON document and plot-ready TSV files."""
from __future__ import annotations

import datetime as _dt
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .demog import FAMILIES, DemographyReport, demography_report
from .prefs import (
    AgeDiffHistogram,
    MixingMatrix,
    age_difference_histogram,
    gender_mixing,
    random_mixing_baseline,
    single_single_share,
    status_mixing,
)
from .topo import (
    build_graph,
    connected_components,
    degree_distribution,
    degree_stats,
    fit_power_law,
    path_length_summary,
    robustness_curve,
)

SCHEMA_VERSION = 1
DEFAULT_STEPS = (0.01, 0.05, 0.1, 0.2, 0.3)
EXACT_LIMIT = 50_000


class ReportError(ValueError):
    pass


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class TopologyResults:
    digest: str | None
    nodes: int
    edges: int
    components: list
    degree_stats: object
    paths: object
    distribution: object
    fit: object
    robustness_steps: tuple
    hub_first: list
    random: list
    random_seeds: tuple

    def to_dict(self) -> dict:
        ds, p, fit = self.degree_stats, self.paths, self.fit
        return {
            "nodes": self.nodes,
            "edges": self.edges,
            "components": {
                "count": len(self.components),
                "giant": self.components[0] if self.components else 0,
                "sizes": self.components[:20],
            },
            "degree": {"min": ds.min, "avg": float(ds.avg), "avg_exact": _frac(ds.avg), "max": ds.max},
            "paths": None if p is None else {
                "min": p.min,
                "avg": float(p.avg),
                "avg_exact": _frac(p.avg),
                "max": p.max,
                "connected_pairs": p.connected_pairs,
                "mode": p.mode,
                "sources": p.sources,
                "seed": p.seed,
                "histogram": list(p.histogram),
            },
            "degree_distribution": [[k, f] for k, f in self.distribution.points],
            "power_law": None if fit is None else {
                "lambda": fit.lam,
                "intercept": fit.intercept,
                "r_squared": fit.r_squared,
                "points_used": fit.points_used,
            },
            "robustness": {
                "steps": list(self.robustness_steps),
                "hub_first": [s for _, s in self.hub_first],
                "random": [s for _, s in self.random],
                "random_seeds": list(self.random_seeds),
            },
        }


def analyze_topology(dataset, mode="exact", sample=None, seed=0, steps=DEFAULT_STEPS,
                     trials=5) -> TopologyResults:
    g = build_graph(dataset)
    if g.n == 0:
        raise ReportError("empty dataset")
    paths = None
    if g.m:
        paths = path_length_summary(g, mode, sample, seed) if mode == "sampled" \
            else path_length_summary(g)
    dist = degree_distribution(g)
    try:
        fit = fit_power_law(dist)
    except ValueError:
        fit = None
    seeds = tuple(seed + i for i in range(trials))
    hub = robustness_curve(g, "hub_first", steps)
    rand_curves = [robustness_curve(g, "random", steps, seed=s) for s in seeds]
    rand = [(f, float(np.mean([c[i][1] for c in rand_curves]))) for i, f in enumerate(steps)]
    return TopologyResults(g.digest, g.n, g.m, connected_components(g), degree_stats(g),
                           paths, dist, fit, tuple(steps), hub, rand, seeds)


def _mixing_dict(m: MixingMatrix) -> dict:
    base = random_mixing_baseline(m)
    return {
        "labels": list(m.labels),
        "cells": [list(r) for r in m.cells],
        "pairs": m.pairs(),
        "total": m.total,
        "excluded_edges": m.excluded_edges,
        "expected": {k: float(v) for k, v in base.expected_pairs().items()},
        "ratio": base.ratio_pairs(),
    }


def _agediff_dict(h: AgeDiffHistogram) -> dict:
    within = h.mass_within(10)
    return {
        "bins": list(h.bins),
        "total": h.total,
        "excluded_edges": h.excluded_edges,
        "within_10": within,
        "beyond_10": h.total - within,
    }


def emit_report(dataset_summary: dict, demography: DemographyReport, gender: MixingMatrix,
                status: MixingMatrix, age_difference: AgeDiffHistogram,
                topology: TopologyResults, provenance: dict) -> str:
    """Serialize all results as JSON; every part must come from the same dataset."""
    digest = dataset_summary["digest"]
    parts = {"demography": demography, "gender mixing": gender, "status mixing": status,
             "age difference": age_difference, "topology": topology}
    for name, part in parts.items():
        if part.digest != digest:
            raise ReportError(f"{name} was computed on a different dataset "
                              f"({part.digest} != {digest})")
    status_d = _mixing_dict(status)
    status_d["single_single_share"] = single_single_share(status)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "dataset": dataset_summary,
        "demography": demography.to_dict(),
        "preferences": {
            "gender": _mixing_dict(gender),
            "status": status_d,
            "age_difference": _agediff_dict(age_difference),
        },
        "topology": topology.to_dict(),
        "provenance": provenance,
    }
    return json.dumps(doc, indent=2) + "\n"


def dataset_summary(dataset) -> dict:
    return {
        "digest": dataset.digest,
        "n_users": dataset.n_users,
        "n_members": dataset.n_users - dataset.n_stubs,
        "n_stubs": dataset.n_stubs,
        "n_edges": dataset.n_edges,
    }


def build_report(dataset, *, seed=0, mode="exact", sample=None, steps=DEFAULT_STEPS,
                 trials=5, inputs=None, timestamp=None) -> str:
    """Run every analysis on ``dataset`` and return the JSON report text."""
    topo = analyze_topology(dataset, mode, sample, seed, steps, trials)
    if timestamp is None:
        timestamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    prov = {
        "tool": "friendgraph",
        "version": __version__,
        "inputs": inputs or {},
        "seed": seed,
        "path_mode": mode,
        "generated_at": timestamp,
    }
    return emit_report(dataset_summary(dataset), demography_report(dataset),
                       gender_mixing(dataset), status_mixing(dataset),
                       age_difference_histogram(dataset), topo, prov)


def strip_timestamp(doc: dict) -> dict:
    out = json.loads(json.dumps(doc))
    out.get("provenance", {}).pop("generated_at", None)
    return out


# ---- plot data ---------------------------------------------------------------

def _fmt(x) -> str:
    if x is None:
        return "NA"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _tsv(header, rows) -> str:
    lines = ["#" + "\t".join(header)]
    lines += ["\t".join(_fmt(v) for v in r) for r in rows]
    return "\n".join(lines) + "\n"


def plot_tables(doc: dict) -> dict[str, str]:
    """TSV text per plot family, derived from a parsed report document only."""
    out = {}
    for name, fam in doc["demography"]["families"].items():
        out[f"demography_{name}.tsv"] = _tsv(
            fam["attributes"] + ["count", "percent"],
            [c["key"] + [c["count"], c["percent"]] for c in fam["cells"]],
        )
    ages = doc["demography"]["by_age"]
    cols = list(ages[0].keys()) if ages else ["age", "total"]
    out["age_curves.tsv"] = _tsv(cols, [[r[c] for c in cols] for r in ages])
    for kind in ("gender", "status"):
        mix = doc["preferences"][kind]
        out[f"{kind}_mixing.tsv"] = _tsv(
            ["pair", "observed", "expected", "ratio"],
            [[k, v, mix["expected"][k], mix["ratio"][k]] for k, v in mix["pairs"].items()],
        )
    bins = doc["preferences"]["age_difference"]["bins"]
    out["age_difference.tsv"] = _tsv(["age_difference", "edges"], list(enumerate(bins)))
    topo = doc["topology"]
    pts = [(k, f) for k, f in topo["degree_distribution"] if k >= 1 and f >= 1]
    out["degree_distribution.tsv"] = _tsv(["degree", "frequency"], pts)
    fit = topo["power_law"]
    fitted = [] if fit is None else [
        (k, 10.0 ** fit["intercept"] * float(k) ** fit["lambda"]) for k, _ in pts
    ]
    out["degree_fit.tsv"] = _tsv(["degree", "fitted_frequency"], fitted)
    rob = topo["robustness"]
    out["robustness.tsv"] = _tsv(
        ["fraction_removed", "hub_first", "random"],
        list(zip(rob["steps"], rob["hub_first"], rob["random"])),
    )
    return out


def emit_plot_data(doc, out_dir) -> list[Path]:
    """Write the TSV plot files for a report (dict or JSON text) into ``out_dir``."""
    if isinstance(doc, (str, bytes)):
        doc = json.loads(doc)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, text in plot_tables(doc).items():
        p = out_dir / name
        p.write_text(text, encoding="utf-8", newline="\n")
        paths.append(p)
    return paths


def schema() -> dict:
    from importlib import resources
    return json.loads(resources.files(__package__).joinpath("report.schema.json").read_text())


__all__ = [
    "DEFAULT_STEPS",
    "EXACT_LIMIT",
    "FAMILIES",
    "ReportError",
    "TopologyResults",
    "analyze_topology",
    "build_report",
    "dataset_summary",
    "emit_plot_data",
    "emit_report",
    "plot_tables",
    "schema",
    "strip_timestamp",
]
