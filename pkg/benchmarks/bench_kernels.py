#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

import numpy as np

from collatz_clusters import _kernels_py as pure

try:
    from collatz_clusters import _kernels as compiled
except ImportError:
    compiled = None

NOT_DONE = pure.SIGMA_NOT_DONE


def bench_sigma(backend, hi):
    values = np.full(hi - 1, NOT_DONE, dtype="<u4")
    t0 = time.perf_counter()
    backend.sigma_fill(values, 1, 0, hi - 1, 10_000)
    return time.perf_counter() - t0


def bench(name, fn, *args):
    results = {}
    for label, backend in (("compiled", compiled), ("pure", pure)):
        if backend is None:
            continue
        elapsed = fn(backend, *args)
        results[label] = elapsed
        print(f"{name:32s} {label:9s} {elapsed * 1000:10.1f} ms")
    if len(results) == 2:
        print(f"{name:32s} {'speedup':9s} {results['pure'] / results['compiled']:9.1f}x")
    print()


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true",
                        help="smaller ranges (for CI smoke runs)")
    args = parser.parse_args()
    scale = 10 if args.quick else 1

    if compiled is None:
        print("compiled kernels not built; benchmarking pure backend only\n")

    bench(f"sigma sieve [1, {10**6 // scale})", bench_sigma, 10**6 // scale)
    bench(f"C equivalence [1, {10**7 // scale})",
          lambda b, hi: _timed(b.ceq_scan, 1, hi), 10**7 // scale)
    bench(f"theorem-1 scan [2, {10**6 // scale})",
          lambda b, hi: _timed(b.theorem1_scan, 2, hi), 10**6 // scale)
    bench(f"theorem-2 scan [2, {10**6 // scale})",
          lambda b, hi: _timed(b.theorem2_scan, 2, hi), 10**6 // scale)
    bench(f"lemma-1 scan [3, {10**5 // scale})",
          lambda b, hi: _timed(b.lemma1_scan, 3, hi), 10**5 // scale)


def _timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    assert out == []
    return time.perf_counter() - t0


if __name__ == "__main__":
    main()
