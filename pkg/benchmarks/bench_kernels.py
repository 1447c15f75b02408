#!/usr/bin/env python3
"""Benchmark the compiled kernel extension against the pure-Python fallback.

Times ln_gamma_complex and k0_complex on representative argument sets:
contour points (moderate imaginary parts) and near-axis points (the K0
power-series / asymptotic crossover).  Run from the repository root:

    python3 benchmarks/bench_kernels.py [--n 20000] [--repeats 5]
"""

import argparse
import timeit

import numpy as np

from gammamoments import _kernels_py

try:
    from gammamoments import _kernels
except ImportError:
    _kernels = None


def _arguments(n, rng):
    contour = 1.5 + 1j * rng.uniform(-60.0, 60.0, n)
    near_axis = (rng.uniform(0.05, 45.0, n)
                 + 1j * rng.uniform(-2.0, 2.0, n))
    return {"ln_gamma_complex (contour)": ("ln_gamma_complex", contour),
            "k0_complex (crossover)": ("k0_complex", near_axis)}


def _time(func, args, repeats):
    def call():
        for z in args:
            func(z)
    return min(timeit.repeat(call, number=1, repeat=repeats))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=20000,
                        help="arguments per kernel (default 20000)")
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repeats, best is reported (default 5)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    cases = _arguments(args.n, rng)

    print(f"kernel benchmark: {args.n} calls per case, best of "
          f"{args.repeats} runs\n")
    header = f"{'case':36s} {'python':>12s} {'cython':>12s} {'speedup':>9s}"
    print(header)
    print("-" * len(header))
    for label, (name, zs) in cases.items():
        t_py = _time(getattr(_kernels_py, name), zs, args.repeats)
        if _kernels is None:
            print(f"{label:36s} {t_py * 1e3:10.2f}ms {'n/a':>12s} {'':>9s}")
            continue
        t_cy = _time(getattr(_kernels, name), zs, args.repeats)
        # sanity: both backends must agree before we compare their speed
        sample = zs[:: max(1, len(zs) // 50)]
        for z in sample:
            a = getattr(_kernels, name)(z)
            b = getattr(_kernels_py, name)(z)
            assert abs(a - b) <= 1e-10 * max(1.0, abs(b)), (name, z)
        print(f"{label:36s} {t_py * 1e3:10.2f}ms {t_cy * 1e3:10.2f}ms "
              f"{t_py / t_cy:8.1f}x")

    if _kernels is None:
        print("\ncompiled extension not available; built fallback only")


if __name__ == "__main__":
    main()
