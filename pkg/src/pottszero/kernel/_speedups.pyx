# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled enumeration kernel: backtracking over colorings of the free
vertices with incremental monochromatic-edge counts."""

import numpy as np


def weight_tables(int n_free, int q, free_edges, pin_counts, int mmax,
                  bint want_restricted=True):
    """Same contract as pottszero.kernel._reference.weight_tables."""
    cdef long long[::1] full
    cdef long long[:, :, ::1] restricted
    full_arr = np.zeros(mmax + 1, dtype=np.int64)
    full = full_arr
    if want_restricted:
        restr_arr = np.zeros((n_free, q, mmax + 1), dtype=np.int64)
    else:
        restr_arr = np.zeros((1, 1, 1), dtype=np.int64)
    restricted = restr_arr

    if n_free == 0:
        full[0] = 1
        return full_arr, (restr_arr if want_restricted else None)

    edges = np.asarray(free_edges, dtype=np.int32).reshape(-1, 2)
    cdef long long[:, ::1] pins = np.asarray(pin_counts, dtype=np.int64).reshape(n_free, q)

    # For each vertex, the list of lower-numbered neighbors (CSR layout).
    cdef int n_edges = edges.shape[0]
    counts = np.zeros(n_free + 1, dtype=np.int32)
    cdef int i, a, b
    for i in range(n_edges):
        a = edges[i, 0]
        b = edges[i, 1]
        counts[max(a, b) + 1] += 1
    offsets_arr = np.cumsum(counts).astype(np.int32)
    prev_arr = np.zeros(n_edges, dtype=np.int32)
    fill = offsets_arr[:-1].copy()
    for i in range(n_edges):
        a = edges[i, 0]
        b = edges[i, 1]
        hi = max(a, b)
        prev_arr[fill[hi]] = min(a, b)
        fill[hi] += 1
    cdef int[::1] offsets = offsets_arr
    cdef int[::1] prev = prev_arr

    cdef int[::1] col = np.full(n_free, -1, dtype=np.int32)
    cdef long long[::1] msum = np.zeros(n_free + 1, dtype=np.int64)

    cdef int depth = 0
    cdef int c, k, v, last = n_free - 1
    cdef long long dm, m
    while depth >= 0:
        col[depth] += 1
        if col[depth] == q:
            col[depth] = -1
            depth -= 1
            continue
        c = col[depth]
        dm = pins[depth, c]
        for k in range(offsets[depth], offsets[depth + 1]):
            if col[prev[k]] == c:
                dm += 1
        m = msum[depth] + dm
        if depth == last:
            full[m] += 1
            if want_restricted:
                for v in range(n_free):
                    restricted[v, col[v], m] += 1
        else:
            msum[depth + 1] = m
            depth += 1

    return full_arr, (restr_arr if want_restricted else None)
