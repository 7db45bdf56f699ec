#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs each hot kernel on a representative workload under both backends
and prints a timing table. numba rows include a warm-up call so JIT
compilation is not billed to the measurement.

    python benchmarks/bench_backends.py [--repeat 5]
"""

import argparse
import math
import time

import numpy as np

from floorsum import _kernels_numpy as knp
from floorsum.arith import sieve_mangoldt, sieve_primes
from floorsum.kernels import vaaler_weights

try:
    from floorsum import _kernels_numba as knb
except ImportError:
    knb = None


def timeit(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads():
    seg_lo = 10**8
    seg_size = 1 << 22
    base = sieve_primes(math.isqrt(seg_lo + seg_size))
    table = sieve_mangoldt(10**7)
    xs = np.linspace(1e-4, 1.0 - 1e-4, 10**4)
    w1000 = vaaler_weights(1000)
    rng = np.random.default_rng(1)
    a = np.exp(2j * np.pi * rng.random((16, 16)))
    b = np.exp(2j * np.pi * rng.random(16))
    hp = np.arange(17, 33, dtype=np.float64)
    mp = np.arange(17, 33, dtype=np.float64)
    npow = np.arange(17, 33, dtype=np.float64)
    m = np.arange(33, 65, dtype=np.float64)
    ratios = (m[:, None] / m[None, :]).ravel()

    return [
        ("prime_mask_segment 4M @1e8",
         lambda k: k.prime_mask_segment(seg_lo, seg_size, base)),
        ("constant_prime_segment 4M @1e8",
         lambda k: k.constant_prime_segment(seg_lo, seg_size, base)),
        ("lambda_floor_sum x=1e7",
         lambda k: k.lambda_floor_sum(table.lam, 10**7)),
        ("sine_series_batch 1e4 pts, H=1000",
         lambda k: k.sine_series_batch(xs, w1000)),
        ("s_delta_triple 16^3",
         lambda k: k.s_delta_triple(a, b, hp, mp, npow, 123.0, 1.0)),
        ("proximity_count3 1024^2 pairs",
         lambda k: k.proximity_count3(ratios, ratios, 0.0999, 0.1, 0.1001)),
    ]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rows = []
    for name, run in workloads():
        t_np = timeit(lambda: run(knp), args.repeat)
        if knb is not None:
            run(knb)  # warm-up / JIT
            t_nb = timeit(lambda: run(knb), args.repeat)
            rows.append((name, t_np, t_nb))
        else:
            rows.append((name, t_np, None))

    width = max(len(r[0]) for r in rows)
    header = f"{'kernel':<{width}}  {'numpy':>10}  {'numba':>10}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, t_np, t_nb in rows:
        if t_nb is None:
            print(f"{name:<{width}}  {t_np * 1e3:>8.2f}ms  {'-':>10}  {'-':>8}")
        else:
            print(
                f"{name:<{width}}  {t_np * 1e3:>8.2f}ms  {t_nb * 1e3:>8.2f}ms"
                f"  {t_np / t_nb:>7.2f}x"
            )
    if knb is None:
        print("\nnumba not importable: only the fallback path was timed.")


if __name__ == "__main__":
    main()
