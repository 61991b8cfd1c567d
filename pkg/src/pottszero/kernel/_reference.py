"""Pure-python (numpy) enumeration kernel.

Counts colorings of the free vertices by their number of monochromatic
edges.  Used when the compiled extension is unavailable; also the reference
the extension is benchmarked and tested against.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 18


def weight_tables(n_free, q, free_edges, pin_counts, mmax, want_restricted=True):
    """Tabulate monochromatic-edge counts over all q**n_free colorings.

    free_edges: (E,2) int array of free-vertex index pairs.
    pin_counts: (n_free, q) int array; entry [v,c] is the number of pinned
        neighbors of free vertex v carrying color c+1.
    mmax: largest attainable monochromatic count (array size hint).

    Returns (full, restricted): full[k] counts colorings with k
    monochromatic edges; restricted[v,c,k] additionally fixes the color of
    free vertex v to c+1.  restricted is None unless requested.
    """
    free_edges = np.asarray(free_edges, dtype=np.int64).reshape(-1, 2)
    pin_counts = np.asarray(pin_counts, dtype=np.int64).reshape(n_free, q)
    full = np.zeros(mmax + 1, dtype=np.int64)
    restricted = np.zeros((n_free, q, mmax + 1), dtype=np.int64) if want_restricted else None
    if n_free == 0:
        full[0] = 1
        return full, restricted
    total = q**n_free
    powers = q ** np.arange(n_free, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        colors = (idx[:, None] // powers[None, :]) % q
        m = np.zeros(len(idx), dtype=np.int64)
        for u, v in free_edges:
            m += colors[:, u] == colors[:, v]
        for v in range(n_free):
            m += pin_counts[v][colors[:, v]]
        full += np.bincount(m, minlength=mmax + 1)
        if want_restricted:
            for v in range(n_free):
                combined = m * q + colors[:, v]
                counts = np.bincount(combined, minlength=(mmax + 1) * q)
                restricted[v] += counts.reshape(mmax + 1, q).T
    return full, restricted
