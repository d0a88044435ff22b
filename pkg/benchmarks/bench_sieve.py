#!/usr/bin/env python3
"""Benchmark the sieve kernels: compiled extension vs numpy fallback.

Usage: python benchmarks/bench_sieve.py [--limit 1e9] [--repeat 3]

Both backends run the same odd-only segmented marking; outputs are checked
bit-identical before timing is reported.
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from zetalab import _sieve_py
from zetalab.prime_core import SEGMENT_SIZE

try:
    from zetalab import _sieve_c
except ImportError:
    _sieve_c = None


def count_primes(kernel, limit: int) -> int:
    base = _sieve_py.odd_base_primes(math.isqrt(limit))
    count = 1  # the prime 2
    lo = 2
    while lo <= limit:
        hi = min(lo + SEGMENT_SIZE - 1, limit)
        count += int(np.count_nonzero(kernel(lo, hi, base)))
        lo = hi + 1
    return count


def bench(kernel, limit: int, repeat: int) -> tuple[float, int]:
    best = math.inf
    value = 0
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = count_primes(kernel, limit)
        best = min(best, time.perf_counter() - t0)
    return best, value


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--limit", type=float, default=1e8)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    limit = int(args.limit)

    print(f"segmented sieve to {limit:,} (segment {SEGMENT_SIZE:,} values)")
    t_py, pi_py = bench(_sieve_py.mark_odd_segment, limit, args.repeat)
    print(f"  numpy fallback : {t_py:8.3f} s   pi = {pi_py:,}")
    if _sieve_c is None:
        print("  compiled core  : not built (python setup.py build_ext --inplace)")
        return
    t_c, pi_c = bench(_sieve_c.mark_odd_segment, limit, args.repeat)
    assert pi_c == pi_py, "backends disagree"
    print(f"  compiled core  : {t_c:8.3f} s   pi = {pi_c:,}")
    print(f"  speedup        : {t_py / t_c:8.2f}x")

    # spot-check bit identity on random segments
    rng = np.random.default_rng(0)
    base = _sieve_py.odd_base_primes(10**5)
    for _ in range(50):
        lo = int(rng.integers(2, 10**9))
        hi = lo + int(rng.integers(0, 10**5))
        primes = base[base * base <= hi]
        assert np.array_equal(
            _sieve_py.mark_odd_segment(lo, hi, primes),
            _sieve_c.mark_odd_segment(lo, hi, primes),
        )
    print("  bit identity   : OK on 50 random segments")


if __name__ == "__main__":
    main()
