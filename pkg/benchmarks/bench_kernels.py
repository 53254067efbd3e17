#!/usr/bin/env python3
"""Benchmark the compiled Crank-Nicolson kernel against the interpreted one.

Usage: python benchmarks/bench_kernels.py [--steps N]

Both backends run the identical Toeplitz Thomas recurrences; the compiled
extension exists purely because the per-step solve is a serial loop that
dominates long runs (10^4 steps at nx ~ 10^3 for a typical cross-validation).
"""

import argparse
import time

import numpy as np

from moving_well._kernels import BACKEND, _cn_fallback

try:
    from moving_well._kernels import _cn_core
except ImportError:
    _cn_core = None


def time_backend(evolve, psi, alphas, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        evolve(psi, alphas)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=400)
    args = parser.parse_args()

    rng = np.random.default_rng(1)
    alphas = rng.uniform(0.05, 0.4, size=args.steps)

    print(f"active backend at import: {BACKEND}")
    print(f"{'nx':>6} {'python ms':>12} {'compiled ms':>12} {'speedup':>9}")
    for nx in (127, 255, 511, 1023):
        psi = rng.normal(size=nx) + 1j * rng.normal(size=nx)
        t_py = time_backend(_cn_fallback.cn_evolve, psi, alphas)
        if _cn_core is not None:
            t_c = time_backend(_cn_core.cn_evolve, psi, alphas)
            agree = np.max(np.abs(_cn_core.cn_evolve(psi, alphas)
                                  - _cn_fallback.cn_evolve(psi, alphas)))
            print(f"{nx:>6} {1e3 * t_py:>12.2f} {1e3 * t_c:>12.2f} "
                  f"{t_py / t_c:>8.1f}x   (max dev {agree:.1e})")
        else:
            print(f"{nx:>6} {1e3 * t_py:>12.2f} {'n/a':>12} {'n/a':>9}")


if __name__ == "__main__":
    main()
