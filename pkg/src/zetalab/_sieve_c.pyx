# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled sieve kernel: odd-only composite marking over a segment.

Mirrors zetalab._sieve_py.mark_odd_segment bit for bit; selected at import
time by zetalab._kernels when built.
"""

import numpy as np

cimport numpy as cnp

BACKEND = "compiled"


def mark_odd_segment(unsigned long long lo, unsigned long long hi, cnp.uint64_t[::1] odd_primes):
    cdef unsigned long long first = lo if lo % 2 == 1 else lo + 1
    if hi < first:
        return np.empty(0, dtype=np.uint8)
    cdef unsigned long long n = (hi - first) // 2 + 1
    mask_arr = np.ones(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] mask = mask_arr
    if first == 1:
        mask[0] = 0
    cdef Py_ssize_t k
    cdef unsigned long long p, start, idx
    for k in range(odd_primes.shape[0]):
        p = odd_primes[k]
        if p * p > hi:
            break
        start = p * p
        if start < lo:
            start = ((lo + p - 1) // p) * p
            if start % 2 == 0:
                start += p
        if start > hi:
            continue
        idx = (start - first) // 2
        while idx < n:
            mask[idx] = 0
            idx += p
    return mask_arr
