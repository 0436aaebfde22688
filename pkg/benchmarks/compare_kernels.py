#!/usr/bin/env python3
"""Compare the compiled construction kernel against the pure-Python one.

Runs identical workloads (checkerboard constructions over random
orderings) through both kernels, checks the outputs agree bit for bit,
and prints the median wall time per construction plus the speedup.

Usage: python benchmarks/compare_kernels.py [--sizes 4,8,12,16,20] [--runs 5]
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from rectcarto.construction import construct_with_stats
from rectcarto.engine import get_kernel
from rectcarto.model import checkerboard
from rectcarto.rng import Xoshiro256


def time_kernel(m, orders, kernel: str) -> tuple[float, list]:
    get_kernel(kernel)  # fail fast if unavailable
    times = []
    carts = []
    for order in orders:
        t0 = time.perf_counter()
        cart, _ = construct_with_stats(m, order, kernel=kernel)
        times.append(time.perf_counter() - t0)
        carts.append(cart)
    return statistics.median(times), carts


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="4,8,12,16,20")
    parser.add_argument("--runs", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    try:
        get_kernel("compiled")
    except ImportError:
        print("compiled kernel not built (install without RECTCARTO_SKIP_EXT); nothing to compare")
        return 1

    rng = Xoshiro256(args.seed)
    print(f"{'board':>6} {'regions':>8} {'python (ms)':>12} {'compiled (ms)':>14} {'speedup':>8}  match")
    for n in sizes:
        m = checkerboard(n)
        orders = [rng.permutation(n * n) for _ in range(args.runs)]
        t_py, carts_py = time_kernel(m, orders, "python")
        t_c, carts_c = time_kernel(m, orders, "compiled")
        match = all(
            np.array_equal(a.x, b.x) and np.array_equal(a.y, b.y)
            for a, b in zip(carts_py, carts_c)
        )
        print(
            f"{n:>6} {n * n:>8} {t_py * 1e3:>12.3f} {t_c * 1e3:>14.3f} "
            f"{t_py / t_c:>8.1f}  {'yes' if match else 'NO'}"
        )
        if not match:
            return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
