from __future__ import annotations

import numpy as np

from .. import kernels


def component_sizes(graph, alive=None) -> list[int]:
    """Component sizes among ``alive`` nodes (all nodes by default).

    Ordered by size descending, ties broken by the smallest node index in
    each component.
    """
    if alive is None:
        alive = np.ones(graph.n, dtype=np.uint8)
    labels = kernels.component_labels(graph.indptr, graph.indices,
                                      np.ascontiguousarray(alive, dtype=np.uint8))
    labels = labels[labels >= 0]
    if len(labels) == 0:
        return []
    sizes = np.bincount(labels)
    # labels are numbered by smallest member index, so a stable sort keeps that tie order
    order = np.argsort(-sizes, kind="stable")
    return sizes[order].tolist()


def connected_components(graph) -> list[int]:
    return component_sizes(graph)
