"""Benchmark the numba kernels against their pure-numpy fallbacks.

Usage:
    python benchmarks/bench_kernels.py [--repeats 50]

Times the three hot kernels (per-qubit rotation layer, z-z coupling
diagonal, interference pair sum) at growing sizes and prints the speedup.
Requires numba; without it only the numpy column is meaningful.
"""
import argparse
import time

import numpy as np

from statekit import _kernels


def best_of(fn, repeats, *args):
    fn(*args)  # warmup (and JIT compile on the numba path)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_ry_layer(rng, repeats):
    print("\nry_layer: apply exp(-i*theta_q*sigma_y) on every qubit")
    print(f"{'n_qubits':>9} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for n in (8, 10, 12, 14):
        amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
        angles = rng.uniform(-np.pi, np.pi, n)
        c, s = np.cos(angles), np.sin(angles)
        t_np = best_of(_kernels.ry_layer_numpy, repeats, amps, c, s)
        if _kernels.HAVE_NUMBA:
            t_nb = best_of(_kernels.ry_layer_numba, repeats, amps, c, s)
            print(f"{n:>9} {t_np*1e3:>10.3f}ms {t_nb*1e3:>10.3f}ms {t_np/t_nb:>8.1f}x")
        else:
            print(f"{n:>9} {t_np*1e3:>10.3f}ms {'n/a':>12} {'':>9}")


def bench_zz_diagonal(rng, repeats):
    print("\nzz_diagonal: coupling energies over all basis states")
    print(f"{'n_qubits':>9} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for n in (8, 10, 12, 14):
        j = rng.uniform(-1, 1, (n, n))
        j = np.triu(j, 1)
        j = j + j.T
        t_np = best_of(_kernels.zz_diagonal_numpy, repeats, j)
        if _kernels.HAVE_NUMBA:
            t_nb = best_of(_kernels.zz_diagonal_numba, repeats, j)
            print(f"{n:>9} {t_np*1e3:>10.3f}ms {t_nb*1e3:>10.3f}ms {t_np/t_nb:>8.1f}x")
        else:
            print(f"{n:>9} {t_np*1e3:>10.3f}ms {'n/a':>12} {'':>9}")


def bench_pair_sum(rng, repeats):
    print("\npair_sum: O(N^2) interference cross terms for one outcome")
    print(f"{'dim':>9} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for dim in (64, 256, 1024, 2048):
        t = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        t_np = best_of(_kernels.pair_sum_numpy, repeats, t)
        if _kernels.HAVE_NUMBA:
            t_nb = best_of(_kernels.pair_sum_numba, repeats, t)
            print(f"{dim:>9} {t_np*1e3:>10.3f}ms {t_nb*1e3:>10.3f}ms {t_np/t_nb:>8.1f}x")
        else:
            print(f"{dim:>9} {t_np*1e3:>10.3f}ms {'n/a':>12} {'':>9}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    print(f"numba available: {_kernels.HAVE_NUMBA}; active backend: {_kernels.backend()}")
    rng = np.random.default_rng(args.seed)
    bench_ry_layer(rng, args.repeats)
    bench_zz_diagonal(rng, args.repeats)
    bench_pair_sum(rng, args.repeats)


if __name__ == "__main__":
    main()
