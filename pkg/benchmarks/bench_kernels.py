"""Benchmark: compiled kernels vs the pure-Python fallback.

Times the hot paths on experiment-sized workloads (rule traces at
m=10/n=100, the Kemeny subset DP, Mallows insertion sampling, Kendall
tau, and the elimination-set DP) against both backends and prints a
speedup table.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from seqrank import _kernels_py
from seqrank.core import BORDA, PLURALITY, Profile, Ranking
from seqrank.sampling import MallowsParams, generator, sample_mallows_rng

try:
    from seqrank import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def workload_inputs():
    params = MallowsParams(10, 0.5)
    rng = generator(123)
    profile = sample_mallows_rng(params, 100, rng)
    mults, ranks = profile.arrays()
    tie = np.arange(10, dtype=np.int64)
    plu = PLURALITY.vector_table(10)
    borda = BORDA.vector_table(10)
    pcost = np.zeros((10, 10), dtype=np.int64)
    for count, r in profile.groups:
        order = r.order
        for i in range(10):
            for j in range(i + 1, 10):
                pcost[order[j], order[i]] += count
    uniforms = rng.random((100, 9))
    perms = [np.array(Ranking(np.argsort(rng.random(10), kind="stable").tolist()).order,
                      dtype=np.int64) for _ in range(50)]
    return {
        "trace seqlo m=10 n=100": lambda k: [k.run_trace(mults, ranks, plu, tie, 2) for _ in range(100)],
        "trace seqwi borda": lambda k: [k.run_trace(mults, ranks, borda, tie, 1) for _ in range(100)],
        "kemeny dp m=10": lambda k: [k.kemeny_dp(pcost) for _ in range(20)],
        "mallows fill 100x9": lambda k: [k.mallows_fill(uniforms, 0.68) for _ in range(50)],
        "kendall tau m=10": lambda k: [k.kendall_tau(a, b) for a in perms for b in perms],
        "elim table m=10": lambda k: [k.elimination_table(mults, ranks, plu, 0, 9) for _ in range(3)],
    }


def bench(kernel, fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(kernel)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    workloads = workload_inputs()
    print(f"{'workload':<28}{'python':>12}{'cython':>12}{'speedup':>10}")
    for name, fn in workloads.items():
        py = bench(_kernels_py, fn, args.repeat)
        if _kernels_c is not None:
            cy = bench(_kernels_c, fn, args.repeat)
            print(f"{name:<28}{py * 1e3:>10.1f}ms{cy * 1e3:>10.1f}ms{py / cy:>9.1f}x")
        else:
            print(f"{name:<28}{py * 1e3:>10.1f}ms{'n/a':>12}{'':>10}")
    if _kernels_c is None:
        print("\ncompiled extension not available; showing the fallback only")


if __name__ == "__main__":
    main()
