import cmath
import math

import pytest
from hypothesis import given, strategies as st

from zetalab.errors import DomainError, PoleError
from zetalab import zeta_em as z

# 10-sigma x 4-t strip grid used by the doubling and cross-representation checks
STRIP_SIGMAS = [0.05 + 0.1 * k for k in range(10)]
STRIP_TS = [0.0, 5.0, 14.1, 25.0]


# ----------------------------------------------------------------- evaluator A

def test_zeta2_matches_pi_squared_over_six():
    val = z.zeta_a(2.0 + 0j, 1e-12).value
    assert abs(val - math.pi**2 / 6.0) < 1e-10


def test_zeta_half_self_consistent_across_N():
    """Evaluations at N in {50, 100, 200} agree to 1e-8; the shared value is
    the frozen reference for zeta(1/2)."""
    vals = [z.zeta_a(0.5 + 0j, 1e-10, N=n).value for n in (50, 100, 200)]
    assert abs(vals[0] - vals[1]) < 1e-8
    assert abs(vals[1] - vals[2]) < 1e-8
    assert vals[0] == pytest.approx(-1.4603545088096206, abs=1e-6)


def test_first_zero_ordinate_is_nearly_a_zero():
    assert abs(z.zeta_a(complex(0.5, 14.134725), 1e-9).value) < 1e-5


def test_value_is_sum_of_parts():
    for s in (2.0 + 0j, complex(0.3, 14.0), complex(0.9, 3.0)):
        ev = z.zeta_a(s, 1e-8)
        assert ev.value == sum(ev.parts)
        assert all(math.isfinite(p.real) and math.isfinite(p.imag) for p in ev.parts)


def test_n_doubling_within_tail_bounds():
    for sig in STRIP_SIGMAS:
        for t in STRIP_TS:
            s = complex(sig, t)
            a = z.zeta_a(s, 1e-7, N=24)
            b = z.zeta_a(s, 1e-7, N=48)
            assert abs(a.value - b.value) <= a.tail_error_bound + b.tail_error_bound + 1e-12


def test_tail_bound_dominated_by_crude_majorant():
    for sig in (0.1, 0.5, 0.9):
        for t in STRIP_TS:
            ev = z.zeta_a(complex(sig, t), 1e-8)
            assert ev.tail_error_bound <= ev.crude_tail_bound


def test_tail_bound_dominates_true_truncation_error():
    # reference: the same evaluator pushed two orders tighter
    for s in (complex(0.5, 14.1), complex(0.2, 5.0), complex(0.8, 25.0)):
        loose = z.zeta_a(s, 1e-6)
        tight = z.zeta_a(s, 1e-10)
        assert abs(loose.value - tight.value) <= loose.tail_error_bound + tight.tail_error_bound


@given(st.floats(0.05, 0.95), st.floats(0.0, 40.0))
def test_conjugate_symmetry(sigma, t):
    s = complex(sigma, t)
    a = z.zeta_a(s, 1e-8).value
    b = z.zeta_a(s.conjugate(), 1e-8).value
    assert abs(b - a.conjugate()) < 1e-10


def test_pole_behaviour_along_real_axis():
    prev_gap = math.inf
    for k in range(2, 7):
        eps = 10.0**-k
        val = z.zeta_a(complex(1.0 + eps, 0.0), 1e-9).value
        gap = abs((complex(eps, 0.0)) * val - 1.0)
        assert gap < 10.0 * eps
        assert gap < prev_gap
        prev_gap = gap


def test_zeta_a_domain_errors():
    with pytest.raises(PoleError):
        z.zeta_a(1.0 + 0j)
    with pytest.raises(DomainError):
        z.zeta_a(complex(-0.2, 3.0))
    with pytest.raises(DomainError):
        z.zeta_a(2.0 + 0j, tol=0.5)
    with pytest.raises(DomainError):
        z.zeta_a(complex(math.inf, 0.0))


# ----------------------------------------------------------------- evaluator B

def test_cross_representation_agreement_on_strip():
    for sig in STRIP_SIGMAS:
        for t in STRIP_TS:
            s = complex(sig, t)
            va = z.zeta_a(s, 1e-8).value
            vb = z.zeta_b(s, 1e-3)
            assert abs(va - vb) < 2e-3, s


def test_cross_representation_spot_values():
    assert abs(z.zeta_b(0.5 + 0j, 1e-3) - z.zeta_a(0.5 + 0j, 1e-8).value) < 2e-3
    assert abs(z.zeta_b(0.5 + 2j, 1e-3) - z.zeta_a(0.5 + 2j, 1e-8).value) < 2e-3


def test_eta_is_value_over_s():
    s = complex(0.4, 7.0)
    assert z.eta_integral(s, 1e-3) == z.zeta_b(s, 1e-3) / s


def test_zeta_b_domain_errors():
    with pytest.raises(DomainError):
        z.zeta_b(complex(1.2, 3.0))
    with pytest.raises(DomainError):
        z.zeta_b(complex(0.5, 3.0), tol=1e-9)


# ------------------------------------------------------------------ components

def test_uv_matches_evaluator_a():
    for sig, t in ((0.5, 14.134725), (0.3, 20.0), (0.05, 25.0), (0.45, 0.0)):
        r = z.uv_components(sig, t, N=32, tol=1e-8)
        va = z.zeta_a(complex(sig, t), 1e-8, N=32).value
        assert abs(complex(r.u, r.v) - va) < 1e-7


def test_uv_half_line_collapses_bitwise():
    r = z.uv_components(0.5, 23.7, N=32)
    assert r.du == 2.0 * r.u and r.dv == 2.0 * r.v


def test_uv_residual_small_at_zero_ordinate():
    r = z.uv_components(0.5, 14.134725, N=32, tol=1e-9)
    assert abs(r.du) < 2e-5 and abs(r.dv) < 2e-5


def test_uv_residual_large_off_line():
    r = z.uv_components(0.3, 14.134725, N=32, tol=1e-8)
    assert max(abs(r.du), abs(r.dv)) > 0.01


def test_uv_validation():
    with pytest.raises(DomainError):
        z.uv_components(0.0, 5.0)
    with pytest.raises(DomainError):
        z.uv_components(0.3, 5.0, N=5)


def test_centered_at_axis_equals_critical_line_value():
    t = 14.134725
    c = z.centered_components(0.0, t, tol=1e-3)
    vb = z.zeta_b(complex(0.5, t), 1e-3)
    assert complex(c.u_zeta, c.v_zeta) == vb


def test_centered_definitional_identity():
    c = z.centered_components(0.2, 14.134725, tol=1e-3)
    vb = z.zeta_b(complex(0.7, 14.134725), 1e-3)
    assert abs(complex(c.u_zeta, c.v_zeta) - vb) < 1e-12


def test_centered_dissymmetry_nonzero():
    t = 14.134725
    plus = z.centered_components(0.2, t, tol=1e-3)
    minus = z.centered_components(-0.2, t, tol=1e-3)
    assert abs(plus.u_zeta + minus.u_zeta) > 0.01 or abs(plus.v_zeta + minus.v_zeta) > 0.01


def test_centered_validation():
    with pytest.raises(DomainError):
        z.centered_components(0.6, 5.0)


# ---------------------------------------------------------------- the tail term

def test_tail_integral_against_brute_force():
    # crude numeric check of the closed-form interval sums on a real exponent:
    # integral over [N, 2000] of (1/2 - {x}) x^(-s-1), midpoint rule in each interval
    s = 1.5 + 0j
    n0 = 10
    val, bound, _ = z.half_sawtooth_tail(s, n0, 1e-10)
    brute = 0.0
    for n in range(n0, 3000):
        for j in range(50):
            x = n + (j + 0.5) / 50
            brute += (0.5 - (x - n)) * x ** (-s.real - 1.0) / 50
    assert val.real == pytest.approx(brute, abs=5e-7)
    assert abs(val.imag) < 1e-15
