# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled traversal kernels over a CSR adjacency (indptr, indices)."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t

cnp.import_array()


def bfs_distance_counts(const int64_t[::1] indptr, const int64_t[::1] indices,
                        const int64_t[::1] sources):
    """Histogram of BFS distances from each source to every reachable node.

    ``counts[d]`` is the number of (source, target) ordered pairs at hop
    distance ``d``; ``counts[0]`` is always 0.
    """
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t ns = sources.shape[0]
    cdef int64_t[::1] stamp = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] dist = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] queue = np.zeros(max(n, 1), dtype=np.int64)
    cdef int64_t[::1] counts = np.zeros(n + 1, dtype=np.int64)
    cdef Py_ssize_t si, head, tail, k, lo, hi
    cdef int64_t s, u, v, du, maxd = 0
    with nogil:
        for si in range(ns):
            s = sources[si]
            stamp[s] = si
            dist[s] = 0
            queue[0] = s
            head = 0
            tail = 1
            while head < tail:
                u = queue[head]
                head += 1
                du = dist[u] + 1
                lo = indptr[u]
                hi = indptr[u + 1]
                for k in range(lo, hi):
                    v = indices[k]
                    if stamp[v] != si:
                        stamp[v] = si
                        dist[v] = du
                        counts[du] += 1
                        if du > maxd:
                            maxd = du
                        queue[tail] = v
                        tail += 1
    return np.asarray(counts[:maxd + 1]).copy()


def component_labels(const int64_t[::1] indptr, const int64_t[::1] indices,
                     const uint8_t[::1] alive):
    """Label connected components among alive nodes.

    Labels are assigned in order of each component's smallest node index;
    dead nodes get -1.
    """
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef int64_t[::1] labels = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] queue = np.zeros(max(n, 1), dtype=np.int64)
    cdef Py_ssize_t start, head, tail, k
    cdef int64_t u, v, lab = 0
    with nogil:
        for start in range(n):
            if not alive[start] or labels[start] >= 0:
                continue
            labels[start] = lab
            queue[0] = start
            head = 0
            tail = 1
            while head < tail:
                u = queue[head]
                head += 1
                for k in range(indptr[u], indptr[u + 1]):
                    v = indices[k]
                    if alive[v] and labels[v] < 0:
                        labels[v] = lab
                        queue[tail] = v
                        tail += 1
            lab += 1
    return np.asarray(labels)
