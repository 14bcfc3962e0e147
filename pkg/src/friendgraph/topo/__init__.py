"""Graph construction and network metrics."""
from .components import component_sizes, connected_components
from .graph import (
    AdjacencyGraph,
    DegreeDistribution,
    DegreeStats,
    build_graph,
    degree_distribution,
    degree_stats,
    graph_from_pairs,
)
from .paths import PathLengthSummary, distance_histogram, path_length_summary
from .powerlaw import PowerLawFit, fit_power_law
from .robustness import robustness_curve

__all__ = [
    "AdjacencyGraph",
    "DegreeDistribution",
    "DegreeStats",
    "PathLengthSummary",
    "PowerLawFit",
    "build_graph",
    "component_sizes",
    "connected_components",
    "degree_distribution",
    "degree_stats",
    "distance_histogram",
    "fit_power_law",
    "graph_from_pairs",
    "path_length_summary",
    "robustness_curve",
]
