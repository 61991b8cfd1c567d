"""Benchmark the compiled enumeration kernel against the numpy reference.

Usage: python3 benchmarks/bench_kernel.py [--repeat N]

Times weight_tables on a ladder of instances (random connected graphs of
increasing size) with both backends and prints the per-instance speedup.
The two result tables are also cross-checked for equality.
"""

import argparse
import time

import numpy as np

from pottszero.kernel import backend_name, get_backend


def _random_instance(rng, n, q, extra_edges):
    edges = {(i, i + 1) for i in range(n - 1)}  # spanning path keeps it connected
    while len(edges) < n - 1 + extra_edges:
        u, v = sorted(rng.choice(n, size=2, replace=False))
        edges.add((int(u), int(v)))
    pin_counts = rng.integers(0, 2, size=(n, q))
    free_edges = np.array(sorted(edges), dtype=np.int64)
    mmax = len(edges) + int(pin_counts.sum())
    return n, q, free_edges, pin_counts, mmax


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if backend_name != "cython":
        print("compiled backend unavailable; nothing to compare")
        return

    fast = get_backend("cython")
    ref = get_backend("python")
    rng = np.random.default_rng(0)
    cases = [(6, 4, 3), (7, 5, 4), (8, 5, 5), (8, 6, 6), (9, 6, 6)]

    print(f"{'n':>3} {'q':>3} {'edges':>6} {'cython':>10} {'python':>10} {'speedup':>8}")
    for n, q, extra in cases:
        inst = _random_instance(rng, n, q, extra)
        t_fast = min(
            _time(fast, inst) for _ in range(args.repeat)
        )
        t_ref = min(
            _time(ref, inst) for _ in range(args.repeat)
        )
        full_a, rest_a = fast(*inst)
        full_b, rest_b = ref(*inst)
        assert np.array_equal(full_a, full_b) and np.array_equal(rest_a, rest_b)
        print(
            f"{n:>3} {q:>3} {len(inst[2]):>6} {t_fast:>9.4f}s {t_ref:>9.4f}s "
            f"{t_ref / t_fast:>7.1f}x"
        )


def _time(fn, inst):
    t0 = time.perf_counter()
    fn(*inst)
    return time.perf_counter() - t0


if __name__ == "__main__":
    main()
