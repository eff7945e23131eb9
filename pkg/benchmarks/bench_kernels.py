"""Time the numba kernels against their pure-numpy twins.

    python benchmarks/bench_kernels.py [--repeat 5] [--scale 1]

The first numba call is reported separately since it includes compilation.
"""
import argparse
import time

import numpy as np

from enumtrees import _kernels as k


def best_of(fn, args, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return bool(np.array_equal(np.asarray(a), np.asarray(b)))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--scale", type=int, default=1)
    args = ap.parse_args()
    s = args.scale
    cases = [
        ("totients", k.totients_numba, k.totients_numpy, (200_000 * s,)),
        ("coprime_pairs", k.coprime_pairs_numba, k.coprime_pairs_numpy, (1000 * s,)),
        ("fusc_table", k.fusc_table_numba, k.fusc_table_numpy, (1_000_000 * s,)),
        ("height_margin_scan", k.height_margin_scan_numba, k.height_margin_scan_numpy,
         ((0, 0, 2), (1, 0, 0), 300 * s)),
    ]
    print(f"{'kernel':<20} {'first numba':>12} {'numba':>10} {'numpy':>10} {'speedup':>8}  agree")
    for name, fast, slow, a in cases:
        t0 = time.perf_counter()
        fast(*a)
        first = time.perf_counter() - t0
        t_fast, r_fast = best_of(fast, a, args.repeat)
        t_slow, r_slow = best_of(slow, a, args.repeat)
        print(f"{name:<20} {first:>11.4f}s {t_fast:>9.4f}s {t_slow:>9.4f}s {t_slow / t_fast:>7.1f}x  {same(r_fast, r_slow)}")


if __name__ == "__main__":
    main()
