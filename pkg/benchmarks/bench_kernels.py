"""Timing comparison of the two batch-kernel implementations.

Measures the JIT-compiled row loop against the vectorized pure-NumPy
fallback on the same (trials, n) workload and prints one table row per
batch size. The JIT path is skipped (with a note) when numba is not
importable or ``UNEQUAL_SUPPORT_NO_NUMBA`` disabled it at import time.

Run from the repository root::

    python3 benchmarks/bench_kernels.py [--trials 200000] [--repeats 5]
"""

import argparse
import time

import numpy as np

from unequal_support import _kernels


def workload(trials: int, n: int, seed: int):
    """Representative inputs: 25% of samples pruned away, weights in {0, 4}."""
    rng = np.random.default_rng(seed)
    in_c = rng.random((trials, n)) < 0.25
    w = np.where(in_c, 4.0, 0.0)
    hv = np.where(rng.random((trials, n)) < 0.5, 9.0, 11.0) * in_c
    return w, hv, in_c


def best_of(repeats: int, func, *args) -> float:
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        func(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=200_000)
    parser.add_argument("--n-values", type=lambda s: [int(x) for x in s.split(",")],
                        default=[5, 10, 50])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    jit = getattr(_kernels, "_batch_estimates_numba", None)
    print(f"JIT path available: {jit is not None} (USING_NUMBA={_kernels.USING_NUMBA})")
    print(f"{'trials':>8} {'n':>4} {'numpy (s)':>10} {'jit (s)':>10} {'speedup':>8}")
    for n in args.n_values:
        w, hv, in_c = workload(args.trials, n, args.seed)
        numpy_time = best_of(args.repeats, _kernels._batch_estimates_numpy,
                             w, hv, in_c, 0.25, 0.0)
        if jit is None:
            print(f"{args.trials:>8} {n:>4} {numpy_time:>10.4f} {'-':>10} {'-':>8}")
            continue
        jit(w[:16], hv[:16], in_c[:16], 0.25, 0.0)  # compile outside the timer
        jit_time = best_of(args.repeats, jit, w, hv, in_c, 0.25, 0.0)
        print(f"{args.trials:>8} {n:>4} {numpy_time:>10.4f} {jit_time:>10.4f} "
              f"{numpy_time / jit_time:>7.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
