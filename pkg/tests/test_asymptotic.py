import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import simpson
from zetalab import asymptotic as asym
from zetalab.errors import DomainError, FitError
from zetalab.prime_core import pi_exact, tau_exact


# ------------------------------------------------------------------ the series

@given(st.floats(100.0, 1e10), st.integers(1, 200))
def test_term_recurrence_matches_lgamma(x, n):
    """Iterative t_n agrees with n!/ln(x)^n computed via ln-gamma to 1e-12 rel."""
    terms = asym.series_terms(x, n)
    direct = math.exp(math.lgamma(n + 1) - n * math.log(math.log(x)))
    assert terms[n] == pytest.approx(direct, rel=1e-12)


@given(st.integers(10, 10**6))
def test_delta_telescoping_exact(x):
    """delta[n-1] - delta[n] == terms[n] to machine precision."""
    st_ = asym.series_state(x, 8)
    for n in range(1, 9):
        lhs = st_.delta[n - 1] - st_.delta[n]
        assert lhs == pytest.approx(st_.terms[n], rel=1e-13, abs=1e-15)


def test_term_monotonicity_around_log_x():
    x = 10**6  # ln x ~ 13.8
    t = asym.series_terms(x, 30)
    ratios = t[1:] / t[:-1]
    lx = math.log(x)
    for n in range(1, 31):
        if n < lx:
            assert ratios[n - 1] < 1.0
        elif n > lx:
            assert ratios[n - 1] > 1.0


def test_terms_positive():
    t = asym.series_terms(1e4, 50)
    assert (t > 0).all()


# --------------------------------------------------------------------- pi_star

def test_pi_star_n0_is_x_over_log():
    assert asym.pi_star(100, 0) == pytest.approx(100 / math.log(100), rel=1e-14)
    assert asym.pi_star(100, 0) == pytest.approx(21.71472409516259, abs=1e-10)


def test_pi_star_1e6_frozen():
    # direct evaluation of the three-term sum
    assert asym.pi_star(10**6, 2) == pytest.approx(78380.08133822156, abs=1e-6)


@given(st.floats(2.5, 1e9), st.integers(1, 20))
def test_pi_star_telescoping(x, n):
    lx = math.log(x)
    gap = asym.pi_star(x, n) - asym.pi_star(x, n - 1)
    direct = (x / lx) * math.exp(math.lgamma(n + 1) - n * math.log(lx))
    # the gap is a difference of two large sums; its absolute error scales
    # with the sums' magnitude, not the gap's
    assert gap == pytest.approx(direct, rel=1e-6, abs=1e-10 * asym.pi_star(x, n))


def test_pi_star_domain():
    with pytest.raises(DomainError):
        asym.pi_star(1.5, 3)
    with pytest.raises(DomainError):
        asym.pi_star(100, -1)


# ------------------------------------------------------------------- bracket_N

def test_bracket_1e6():
    br = asym.bracket_N(10**6)
    assert br.bracketed and br.N == 2
    assert br.delta_N == pytest.approx(0.0016291065167810537, abs=1e-12)
    assert br.delta_N1 == pytest.approx(-0.0006462551286232632, abs=1e-12)
    assert br.delta_N >= 0 > br.delta_N1


def test_bracket_100_matches_direct_comparison():
    br = asym.bracket_N(100)
    eta = 25 / (100 / math.log(100))
    partial = np.cumsum(asym.series_terms(100, 8))
    expected = next(n for n in range(8) if partial[n] <= eta < partial[n + 1])
    assert br.N == expected


def test_no_bracket_when_first_term_exceeds():
    # pi*(x, 0) = x/ln x > pi(x) at these x, so no bracket exists
    for x in (2, 3, 5):
        assert asym.pi_star(x, 0) > pi_exact(x)
        br = asym.bracket_N(x)
        assert not br.bracketed and br.N is None


def test_bracket_decades():
    for k in range(3, 7):
        assert asym.bracket_N(10**k).bracketed


def test_bracket_domain():
    with pytest.raises(DomainError):
        asym.bracket_N(1)


# ------------------------------------------------------------ phi and the gap

def test_phi_ratio_values():
    assert asym.phi_ratio(10**6, 2) == pytest.approx(3.9472887308469353, abs=1e-10)
    assert asym.phi_ratio(math.exp(7), 2) == pytest.approx(2.0, abs=1e-12)


def test_phi_bound_at_1e6():
    # ceiling built from the constants 5.1 and 5.5 ln 10
    assert asym.phi_star(10**6) == pytest.approx(4.183333333333333, abs=1e-12)
    assert asym.phi_ratio(10**6, 2) <= asym.phi_star(10**6)


def test_gap_bound_1e6():
    g = asym.gap_bound(10**6, 2)
    assert g == pytest.approx(164.6961678222262, abs=1e-8)
    diff = pi_exact(10**6) - asym.pi_star(10**6, 2)
    assert diff == pytest.approx(117.9186617784435, abs=1e-6)
    assert 0 <= diff < g


@given(st.floats(100.0, 1e9), st.integers(0, 10))
def test_gap_criterion_implication(x, n):
    """g(x,N) <= sqrt(x ln x) whenever (N+1)!/ln(x)^(N+1) <= ln(x)^1.5/sqrt(x)."""
    lx = math.log(x)
    term = math.exp(math.lgamma(n + 2) - (n + 1) * math.log(lx))
    if term <= lx**1.5 / math.sqrt(x):
        assert asym.gap_bound(x, n) <= math.sqrt(x * lx) * (1 + 1e-12)


# ------------------------------------------------------------------------- Li

def test_li_at_2_is_zero():
    assert asym.li_quadrature(2) == 0.0


def test_li_1e6_against_simpson_richardson():
    # independent oracle: composite Simpson on the log-substituted integrand
    # (t = e^u turns dt/ln t into e^u/u du) at two resolutions, Richardson-combined
    f = lambda u: math.exp(u) / u
    a, b = math.log(2.0), math.log(1e6)
    coarse = simpson(f, a, b, 2000)
    fine = simpson(f, a, b, 4000)
    oracle = fine + (fine - coarse) / 15.0
    val = asym.li_quadrature(10**6)
    assert val == pytest.approx(oracle, abs=1e-3)
    assert val == pytest.approx(78626.50399568184, abs=0.5)


def test_pnt_error_at_1e6():
    li = asym.li_quadrature(10**6)
    err = abs(pi_exact(10**6) - li)
    assert err == pytest.approx(128.504, abs=0.01)
    assert err < math.sqrt(10**6 * math.log(10**6)) == pytest.approx(3716.922188849838)


def test_li_domain():
    with pytest.raises(DomainError):
        asym.li_quadrature(1.5)


# ------------------------------------------------------------------- beta fit

def test_fit_beta_three_decades():
    fit = asym.fit_beta([10**4, 10**5, 10**6])
    assert fit.beta == pytest.approx(1.146142766129817, rel=1e-12)
    assert fit.beta > 0
    for x, r in zip(fit.sample_xs, fit.residuals):
        assert abs(r) < tau_exact(x)


def test_fit_beta_single_point_closed_form():
    x = 10**6
    fit = asym.fit_beta([x])
    lx = math.log(x)
    expected = (
        (tau_exact(x) - x / lx + math.sqrt(x))
        * 2 * lx / (pi_exact(math.isqrt(x)) * math.sqrt(x))
    )
    assert fit.beta == pytest.approx(expected, rel=1e-14)


def test_fit_beta_validation():
    with pytest.raises(DomainError):
        asym.fit_beta([])
    with pytest.raises(DomainError):
        asym.fit_beta([50, 10**4])


# ---------------------------------------------------------------- Stirling Phi

def test_stirling_simple_values():
    ev = asym.stirling_phi(5, 2.0)
    assert ev.phi == pytest.approx(3.75, rel=1e-13)
    ev = asym.stirling_phi(1, 1.0)
    assert ev.phi == pytest.approx(1.0, rel=1e-13)
    # n == alpha sits on the boundary of the first regime by its own inequality
    assert ev.regime == asym.REGIME_BELOW


def test_stirling_regime_labels():
    assert asym.stirling_phi(3, 4.0).regime == asym.REGIME_BELOW
    assert asym.stirling_phi(5, 4.0).regime == asym.REGIME_WINDOW
    assert asym.stirling_phi(11, 4.0).regime == asym.REGIME_ABOVE


@given(st.integers(1, 10**4), st.floats(0.1, 50.0))
def test_stirling_sandwich(n, alpha):
    """sqrt(2 pi n) (n/(e alpha))^n <= Phi < e * same, checked in log space."""
    ev = asym.stirling_phi(n, alpha)
    lower = 0.5 * math.log(2 * math.pi * n) + n * (math.log(n) - 1 - math.log(alpha))
    assert lower <= ev.log_phi < lower + 1.0


def test_stirling_above_e_alpha_lower_bound():
    for alpha in range(1, 51):
        n = math.ceil(math.e * alpha)
        ev = asym.stirling_phi(n, float(alpha))
        assert ev.log_phi >= 0.5 * math.log(2 * math.pi * n)


def test_stirling_decay_product():
    ns = [10**4, 10**5, 10**6, 10**7, 10**8]
    vals = asym.stirling_decay_product(0.3, 2.0, ns)
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-6


def test_stirling_domain():
    with pytest.raises(DomainError):
        asym.stirling_phi(0, 1.0)
    with pytest.raises(DomainError):
        asym.stirling_phi(3, 0.0)


# ----------------------------------------------------------------- result rows

def test_result_row_columns():
    row = asym.result_row(10**4)
    expected = {
        "x", "pi", "pi_star", "N", "delta_N", "delta_N1",
        "phi", "phi_star", "gap", "sqrt_x_log_x", "li", "pnt_error",
    }
    assert expected <= set(row)
    assert row["N"] == 1
