"""Pure numpy sieve kernels (fallback when the compiled core is absent).

Both backends implement the same contract and must produce bit-identical
output: an odd-only composite-marking pass over a segment, given the odd base
primes.  Even numbers never enter the kernel; the caller accounts for 2.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def odd_base_primes(limit: int) -> np.ndarray:
    """Odd primes <= limit, ascending, as uint64 (empty for limit < 3)."""
    if limit < 3:
        return np.empty(0, dtype=np.uint64)
    # classic boolean sieve over odd numbers 3, 5, ..., limit
    n_odd = (limit - 3) // 2 + 1
    is_p = np.ones(n_odd, dtype=bool)
    i = 0
    while True:
        p = 3 + 2 * i
        if p * p > limit:
            break
        if is_p[i]:
            start = (p * p - 3) // 2
            is_p[start::p] = False
        i += 1
    return (3 + 2 * np.flatnonzero(is_p)).astype(np.uint64)


def mark_odd_segment(lo: int, hi: int, odd_primes: np.ndarray) -> np.ndarray:
    """Composite-mark the odd numbers of [lo, hi].

    Returns uint8 array over odd values first, first+2, ... (first = lo
    rounded up to odd); entry 1 means no base prime p with p*p <= value
    divides it.  With odd_primes covering all odd primes <= isqrt(hi) the
    surviving entries are exactly the odd primes of the segment.
    """
    first = lo if lo % 2 == 1 else lo + 1
    if hi < first:
        return np.empty(0, dtype=np.uint8)
    n = (hi - first) // 2 + 1
    mask = np.ones(n, dtype=np.uint8)
    if first == 1:
        mask[0] = 0
    for p in odd_primes:
        p = int(p)
        if p * p > hi:
            break
        start = p * p
        if start < lo:
            start = ((lo + p - 1) // p) * p
            if start % 2 == 0:
                start += p
        if start > hi:
            continue
        mask[(start - first) // 2 :: p] = 0
    return mask
