"""Pure-Python versions of the traversal kernels.

Same signatures and results as the compiled ``_kernels`` module; used when the
extension is not built or when ``FRIENDGRAPH_PURE_PYTHON`` is set.
"""
from collections import deque

import numpy as np


def _adjacency(indptr, indices):
    ptr = indptr.tolist()
    idx = indices.tolist()
    return [idx[ptr[i]:ptr[i + 1]] for i in range(len(ptr) - 1)]


def bfs_distance_counts(indptr, indices, sources):
    adj = _adjacency(indptr, indices)
    counts = [0]
    for s in sources.tolist():
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = dist[u] + 1
            for v in adj[u]:
                if v not in dist:
                    dist[v] = du
                    if du == len(counts):
                        counts.append(0)
                    counts[du] += 1
                    queue.append(v)
    return np.array(counts, dtype=np.int64)


def component_labels(indptr, indices, alive):
    adj = _adjacency(indptr, indices)
    live = alive.astype(bool).tolist()
    labels = [-1] * len(adj)
    lab = 0
    for start in range(len(adj)):
        if not live[start] or labels[start] >= 0:
            continue
        labels[start] = lab
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if live[v] and labels[v] < 0:
                    labels[v] = lab
                    queue.append(v)
        lab += 1
    return np.array(labels, dtype=np.int64)
