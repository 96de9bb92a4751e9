#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-NumPy fallback.

Run from the repository root:

    python benchmarks/bench_backends.py

The hot paths are the O(n^2) second-kind march and half-order integral, and
the leapfrog line simulator's time loop.
"""

import time

import numpy as np

from pulsedrop import _kernels_py

try:
    from pulsedrop import _kernels as _compiled
except ImportError:
    _compiled = None


def timeit(fn, *args, repeat=3, **kwargs):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args, **kwargs)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_march(mod, n):
    t = np.linspace(0.0, 3.0, n + 1)
    g = 2.0 * np.sqrt(t)
    return timeit(mod.second_kind_march, t, g, 1.0)


def bench_halfint(mod, n):
    t = np.linspace(0.0, 3.0, n + 1)
    f = np.sqrt(t)
    return timeit(mod.halfint, t, f)


def bench_fdtd(mod):
    return timeit(mod.fdtd_run, 4000, 3200, 0.99922, 0.019992, 50.0, 1.0,
                  1.25e-12, 1.0, 3, 0.03125, 1.25e-14, 3.125e-11, 1e-3)


def main():
    if _compiled is None:
        print("compiled kernels not built; only the NumPy backend is timed")
    rows = []
    for n in (1024, 4096, 8192):
        rows.append((f"second-kind march, n={n}", bench_march(_kernels_py, n),
                     bench_march(_compiled, n) if _compiled else None))
    for n in (1024, 4096):
        rows.append((f"half-order integral, n={n}", bench_halfint(_kernels_py, n),
                     bench_halfint(_compiled, n) if _compiled else None))
    rows.append(("fdtd 4000 cells x 3200 steps", bench_fdtd(_kernels_py),
                 bench_fdtd(_compiled) if _compiled else None))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numpy':>10}  {'compiled':>10}  {'speedup':>8}")
    for name, t_py, t_c in rows:
        if t_c is None:
            print(f"{name:<{width}}  {t_py * 1e3:>8.2f}ms  {'-':>10}  {'-':>8}")
        else:
            print(f"{name:<{width}}  {t_py * 1e3:>8.2f}ms  {t_c * 1e3:>8.2f}ms"
                  f"  {t_py / t_c:>7.1f}x")


if __name__ == "__main__":
    main()
