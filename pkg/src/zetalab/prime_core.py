"""Exact prime counting, enumeration, and composite classification.

Everything here is computed directly (segmented sieve, brute-force
classification); this module is the ground-truth oracle for all prime-side
checks in the package.  The sieve inner loop runs in the compiled kernel when
available, with a numpy fallback selected at import (see _kernels.BACKEND).
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._kernels import mark_odd_segment, odd_base_primes
from .errors import CapacityError, DomainError

SIEVE_CEILING = 10**10
CLASSIFY_CEILING = 10**7
SEGMENT_SIZE = 1 << 22

_CACHE_HEADER = struct.Struct("<QQ")

# pi_exact memo, populated only for calls running at the default ceilings
_pi_cache: dict[int, int] = {}


@dataclass(frozen=True)
class PrimeTable:
    """Bit-packed primality over a segment [lo, hi] (one bit per value, 1 = prime)."""

    lo: int
    hi: int
    bits: np.ndarray  # uint8, little bit order, ceil(span/8) bytes

    @property
    def span(self) -> int:
        return self.hi - self.lo + 1

    def unpacked(self) -> np.ndarray:
        """uint8 array of length span; entry i is the primality of lo + i."""
        return np.unpackbits(self.bits, count=self.span, bitorder="little")

    def count(self) -> int:
        """Number of primes in the segment."""
        return int(self.unpacked().sum())

    def is_prime(self, value: int) -> bool:
        if not self.lo <= value <= self.hi:
            raise DomainError(f"{value} outside table range [{self.lo}, {self.hi}]")
        byte, bit = divmod(value - self.lo, 8)
        return bool((int(self.bits[byte]) >> bit) & 1)

    def primes(self) -> np.ndarray:
        """The primes of the segment as an int64 array."""
        return self.lo + np.flatnonzero(self.unpacked()).astype(np.int64)

    def restrict(self, lo: int, hi: int) -> "PrimeTable":
        """The sub-table over [lo, hi]; must be contained in this table."""
        if not (self.lo <= lo <= hi <= self.hi):
            raise DomainError("restriction range not contained in table")
        sub = self.unpacked()[lo - self.lo : hi - self.lo + 1]
        return PrimeTable(lo, hi, np.packbits(sub, bitorder="little"))


def _segment_table(lo: int, hi: int, odd_primes: np.ndarray) -> PrimeTable:
    full = np.zeros(hi - lo + 1, dtype=np.uint8)
    mask = mark_odd_segment(lo, hi, odd_primes)
    first = lo if lo % 2 == 1 else lo + 1
    if mask.size:
        full[first - lo :: 2] = mask
    if lo <= 2 <= hi:
        full[2 - lo] = 1
    return PrimeTable(lo, hi, np.packbits(full, bitorder="little"))


def sieve_segment(
    lo: int,
    hi: int,
    *,
    ceiling: int = SIEVE_CEILING,
    segment_size: int = SEGMENT_SIZE,
) -> PrimeTable:
    """Sieve the segment [lo, hi] (inclusive); deterministic, bit for bit."""
    if lo < 2:
        raise DomainError(f"segment start must be >= 2, got {lo}")
    if hi < lo:
        raise DomainError(f"inverted range [{lo}, {hi}]")
    if hi > ceiling:
        raise CapacityError(f"hi={hi} exceeds sieve ceiling {ceiling}")
    if hi - lo + 1 > segment_size:
        raise CapacityError(f"span {hi - lo + 1} exceeds segment size {segment_size}")
    return _segment_table(lo, hi, odd_base_primes(math.isqrt(hi)))


def pi_exact(
    x: int,
    *,
    ceiling: int = SIEVE_CEILING,
    segment_size: int = SEGMENT_SIZE,
) -> int:
    """pi(x): number of primes <= x, by segmented sieving."""
    if x < 2:
        raise DomainError(f"pi_exact requires x >= 2, got {x}")
    if x > ceiling:
        raise CapacityError(f"x={x} exceeds sieve ceiling {ceiling}")
    x = int(x)
    default_cfg = ceiling == SIEVE_CEILING and segment_size == SEGMENT_SIZE
    if default_cfg and x in _pi_cache:
        return _pi_cache[x]
    base = odd_base_primes(math.isqrt(x))
    count = 1  # the prime 2
    lo = 2
    while lo <= x:
        hi = min(lo + segment_size - 1, x)
        count += int(np.count_nonzero(mark_odd_segment(lo, hi, base)))
        lo = hi + 1
    if default_cfg:
        _pi_cache[x] = count
    return count


def tau_exact(x: int, **kw) -> int:
    """Number of primes in (sqrt(x), x]; exact integer square root throughout."""
    if x < 4:
        raise DomainError(f"tau_exact requires x >= 4, got {x}")
    return pi_exact(int(x), **kw) - pi_exact(math.isqrt(int(x)), **kw)


@dataclass(frozen=True)
class CompositePartition:
    """Counts of composites in (sqrt(x), x] grouped by largest prime factor <= sqrt(x)."""

    x: int
    sigma: tuple[tuple[int, int], ...]  # (p_j, count), ascending p_j
    total_composites: int


def classify_composites(x: int, *, ceiling: int = CLASSIFY_CEILING) -> CompositePartition:
    """Partition the composites of (sqrt(x), x] by their largest prime factor <= sqrt(x).

    Each composite d in the range has such a factor, and exactly one class
    claims it; numbers left unclaimed are the primes of the range.  Claiming
    runs over the base primes in descending order, which realises the
    max-divisor rule directly.
    """
    if x < 9:
        raise DomainError(f"classify_composites requires x >= 9, got {x}")
    if x > ceiling:
        raise CapacityError(f"x={x} exceeds classification ceiling {ceiling}")
    x = int(x)
    r = math.isqrt(x)
    base_table = sieve_segment(2, r)
    base_primes = base_table.primes()
    lo = r + 1
    owner = np.full(x - r, -1, dtype=np.int32)
    for p in base_primes[::-1]:
        p = int(p)
        start = ((lo + p - 1) // p) * p
        if start > x:
            continue
        view = owner[start - lo :: p]
        view[view == -1] = p
    counts = np.bincount(owner + 1, minlength=r + 2)
    sigma = tuple((int(p), int(counts[int(p) + 1])) for p in base_primes)
    total = int((owner >= 0).sum())
    return CompositePartition(x=x, sigma=sigma, total_composites=total)


def save_table(table: PrimeTable, path: str | Path) -> None:
    """Write a PrimeTable to disk: little-endian (lo, hi) u64 header + raw bitstream."""
    with open(path, "wb") as fh:
        fh.write(_CACHE_HEADER.pack(table.lo, table.hi))
        fh.write(table.bits.tobytes())


def load_table(path: str | Path, *, lo: int | None = None, hi: int | None = None) -> PrimeTable | None:
    """Read a PrimeTable written by save_table.

    When lo/hi are given and the header does not match, the cache entry is
    considered invalid and None is returned (caller re-sieves).  A truncated
    bitstream also invalidates the entry.
    """
    raw = Path(path).read_bytes()
    if len(raw) < _CACHE_HEADER.size:
        return None
    h_lo, h_hi = _CACHE_HEADER.unpack_from(raw)
    if (lo is not None and h_lo != lo) or (hi is not None and h_hi != hi):
        return None
    if h_hi < h_lo:
        return None
    span = h_hi - h_lo + 1
    body = raw[_CACHE_HEADER.size :]
    if len(body) != (span + 7) // 8:
        return None
    bits = np.frombuffer(body, dtype=np.uint8).copy()
    return PrimeTable(int(h_lo), int(h_hi), bits)
