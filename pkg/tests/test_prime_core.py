import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import max_prime_factor_leq_root, trial_division_is_prime, trial_division_pi
from zetalab import _sieve_py
from zetalab.errors import CapacityError, DomainError
from zetalab.prime_core import (
    PrimeTable,
    classify_composites,
    load_table,
    pi_exact,
    save_table,
    sieve_segment,
    tau_exact,
)

try:
    from zetalab import _sieve_c
except ImportError:
    _sieve_c = None


# ---------------------------------------------------------------- sieve_segment

def test_segment_2_10():
    assert list(sieve_segment(2, 10).primes()) == [2, 3, 5, 7]


def test_segment_single_value():
    assert list(sieve_segment(2, 2).primes()) == [2]


def test_segment_90_100():
    expected = [n for n in range(90, 101) if trial_division_is_prime(n)]
    assert list(sieve_segment(90, 100).primes()) == expected == [97]


def test_segment_errors():
    with pytest.raises(DomainError):
        sieve_segment(1, 10)
    with pytest.raises(DomainError):
        sieve_segment(10, 5)
    with pytest.raises(CapacityError):
        sieve_segment(2, 10**11)
    with pytest.raises(CapacityError):
        sieve_segment(2, 10**7, segment_size=100)


def test_table_even_bits_zero():
    table = sieve_segment(2, 1000)
    bits = table.unpacked()
    evens = bits[2::2]  # values 4, 6, 8, ...
    assert not evens.any()


def test_table_popcount_2_100():
    assert sieve_segment(2, 100).count() == 25


def test_is_prime_accessor():
    table = sieve_segment(2, 50)
    assert table.is_prime(47) and not table.is_prime(49)
    with pytest.raises(DomainError):
        table.is_prime(51)


@given(st.integers(2, 4000), st.integers(0, 500))
def test_restriction_matches_full_table(lo, span):
    hi = lo + span
    full = sieve_segment(2, hi)
    seg = sieve_segment(lo, hi)
    assert np.array_equal(full.restrict(lo, hi).unpacked(), seg.unpacked())


@given(st.integers(10, 3000), st.data())
def test_segment_independence(hi, data):
    """Sieving [2, hi] in one piece equals any segment decomposition."""
    cuts = sorted(
        data.draw(st.lists(st.integers(3, hi), max_size=4, unique=True), label="cuts")
    )
    bounds = [2] + cuts + [hi + 1]
    whole = sieve_segment(2, hi).unpacked()
    parts = [
        sieve_segment(a, b - 1).unpacked() for a, b in zip(bounds, bounds[1:]) if a <= b - 1
    ]
    assert np.array_equal(whole, np.concatenate(parts))


@pytest.mark.skipif(_sieve_c is None, reason="compiled kernel not built")
def test_backend_parity():
    base = _sieve_py.odd_base_primes(10**4)
    rng = np.random.default_rng(42)
    for _ in range(50):
        lo = int(rng.integers(2, 10**7))
        hi = lo + int(rng.integers(0, 10**4))
        primes = base[base * base <= hi]
        assert np.array_equal(
            _sieve_py.mark_odd_segment(lo, hi, primes),
            _sieve_c.mark_odd_segment(lo, hi, primes),
        )


# -------------------------------------------------------------------- pi_exact

def test_pi_examples():
    assert pi_exact(10) == 4
    assert pi_exact(2) == 1
    assert pi_exact(10**5) == 9592
    assert pi_exact(10**6) == 78498


def test_pi_matches_trial_division_sampled():
    for x in (2, 3, 10, 97, 100, 541, 1000, 7919):
        assert pi_exact(x) == trial_division_pi(x)


def test_pi_domain_error():
    with pytest.raises(DomainError):
        pi_exact(1)


def test_pi_monotone():
    values = [pi_exact(x) for x in range(2, 400)]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_pi_segment_size_invariance():
    assert pi_exact(10**5, segment_size=1 << 10) == 9592
    assert pi_exact(10**5, segment_size=1 << 22) == 9592


# ------------------------------------------------------------------- tau_exact

def test_tau_examples():
    assert tau_exact(100) == 21
    assert tau_exact(4) == 1
    assert tau_exact(16) == 4


def test_tau_perfect_square_edges():
    # exact isqrt must not wobble at perfect squares
    for x in (25, 49, 121, 10**4):
        r = math.isqrt(x)
        assert tau_exact(x) == trial_division_pi(x) - trial_division_pi(r)


def test_tau_domain_error():
    with pytest.raises(DomainError):
        tau_exact(3)


# ---------------------------------------------------------- classify_composites

def test_classify_16():
    cp = classify_composites(16)
    assert dict(cp.sigma) == {2: 4, 3: 4}
    assert cp.total_composites == 8


def test_classify_9():
    cp = classify_composites(9)
    assert dict(cp.sigma) == {2: 2, 3: 2}
    assert cp.total_composites == 4


def test_classify_errors():
    with pytest.raises(DomainError):
        classify_composites(8)
    with pytest.raises(CapacityError):
        classify_composites(10**8)


def test_classify_partition_identity_small():
    for x in range(9, 800):
        cp = classify_composites(x)
        r = math.isqrt(x)
        expected = (x - r) - tau_exact(x)
        assert cp.total_composites == expected
        assert sum(c for _, c in cp.sigma) == expected


@given(st.integers(9, 2000))
def test_classify_matches_max_factor_oracle(x):
    """Every class count equals the brute-force max-prime-factor assignment."""
    cp = classify_composites(x)
    r = math.isqrt(x)
    oracle: dict[int, int] = {}
    for d in range(r + 1, x + 1):
        p = max_prime_factor_leq_root(d, r)
        if p is not None:
            oracle[p] = oracle.get(p, 0) + 1
    assert {p: c for p, c in cp.sigma if c} == oracle


# ---------------------------------------------------------------- binary cache

def test_cache_roundtrip(tmp_path):
    table = sieve_segment(1000, 2000)
    path = tmp_path / "seg.bin"
    save_table(table, path)
    loaded = load_table(path)
    assert loaded is not None
    assert (loaded.lo, loaded.hi) == (1000, 2000)
    assert np.array_equal(loaded.bits, table.bits)


def test_cache_header_mismatch_invalidates(tmp_path):
    table = sieve_segment(1000, 2000)
    path = tmp_path / "seg.bin"
    save_table(table, path)
    assert load_table(path, lo=1000, hi=2000) is not None
    assert load_table(path, lo=1000, hi=2001) is None
    assert load_table(path, lo=999, hi=2000) is None


def test_cache_truncation_invalidates(tmp_path):
    table = sieve_segment(1000, 2000)
    path = tmp_path / "seg.bin"
    save_table(table, path)
    raw = path.read_bytes()
    path.write_bytes(raw[:-3])
    assert load_table(path) is None
