"""Horizontal curve integrals of zeta and their decompositions.

The path runs from s0 = sigma0 + i t0 to its mirror 1 - conj(s0) on the same
horizontal line.  Direct quadrature of zeta along the path is compared against
two term decompositions: the four-term form built from the truncated-sum
representation, and the five-term form built from the integral representation.
Each decomposition carries two variants:

  exact    keeps the actual boundary values of N^(1-s)/(1-s) (resp. the eta
           boundary term), so the term sum reproduces the direct integral
           unconditionally -- a testable identity;
  at_zero  substitutes zeta(s0) = zeta(1 - conj(s0)) = 0 into the boundary
           values, so the residual against direct quadrature measures how far
           the endpoints are from being genuine zeros.

All factorial-over-log-power coefficients are assembled in log space; an
overflow guard rejects parameter combinations whose intermediate magnitudes
would exceed 1e300 before anything is evaluated.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .asymptotic import stirling_regime
from .errors import DomainError, OverflowRegimeError
from .quadrature import quad_complex
from .zeta_em import half_sawtooth_tail, eta_integral, zeta_a

_LOG_GUARD = 690.0  # ln of the 1e300 magnitude guard
M_MAX = 120


@dataclass(frozen=True)
class PathSpec:
    """Horizontal segment from sigma0 + i t0 to (1 - sigma0) + i t0.

    Degenerate (zero length) exactly when sigma0 == 1/2.  Paths with t0 == 0
    are rejected by the decomposition operations: the repeated integration by
    parts divides by powers of (1 - s), which loses its lower bound |t0| there.
    """

    sigma0: float
    t0: float

    def __post_init__(self) -> None:
        if not 0 < self.sigma0 <= 0.5:
            raise DomainError(f"sigma0 must lie in (0, 1/2], got {self.sigma0}")

    @property
    def s0(self) -> complex:
        return complex(self.sigma0, self.t0)

    @property
    def s1(self) -> complex:
        """The mirror endpoint 1 - conj(s0)."""
        return complex(1.0 - self.sigma0, self.t0)

    @property
    def degenerate(self) -> bool:
        return self.sigma0 == 0.5


def path_quadrature(
    path: PathSpec,
    f: Callable[[complex], complex],
    tol: float,
    *,
    budget: int = 4000,
) -> complex:
    """Integral of f along the path (ds = d sigma on a horizontal line)."""
    if path.degenerate:
        return 0.0 + 0.0j
    val, _ = quad_complex(
        lambda sig: f(complex(sig, path.t0)),
        path.sigma0,
        1.0 - path.sigma0,
        abs_tol=tol,
        max_subdivisions=budget,
    )
    return val


def direct_quadrature(path: PathSpec, tol: float = 1e-9, *, zeta_tol: float | None = None) -> complex:
    """Adaptive quadrature of zeta along the path; exactly 0 on degenerate paths."""
    if tol < 1e-10:
        raise DomainError("tol must be >= 1e-10")
    if path.degenerate:
        return 0.0 + 0.0j
    if zeta_tol is None:
        # point-eval errors integrate over a path of length < 1, so tol/10 per
        # point keeps them an order below the quadrature budget
        zeta_tol = max(1e-12, 0.1 * tol)
    return path_quadrature(path, lambda s: zeta_a(s, zeta_tol).value, tol)


def _ln_cm(m: int, ln_n: float) -> float:
    """ln of (m-1)! / ln(N)^m."""
    return math.lgamma(m) - m * math.log(ln_n)


def _ln_rem(m: int, ln_n: float) -> float:
    """ln of m! / ln(N)^m."""
    return math.lgamma(m + 1) - m * math.log(ln_n)


def _guard(path: PathSpec, N: int, M: int) -> None:
    """Reject (path, N, M) whose log-space coefficient magnitudes exceed the guard."""
    if N < 2:
        raise DomainError("N must be >= 2")
    if not 1 <= M <= M_MAX:
        raise DomainError(f"M must lie in [1, {M_MAX}]")
    if path.t0 == 0.0:
        raise DomainError("paths with t0 == 0 are rejected (pole proximity at s = 1)")
    ln_n = math.log(N)
    # smallest |1-s| along the path and at the endpoints; |conj(s0)| for the mirror family
    min_abs = min(abs(1.0 - path.s1), abs(1.0 - path.s0), abs(path.s0), math.hypot(path.sigma0, path.t0))
    worst = max(
        _ln_rem(M, ln_n) + (1.0 - path.sigma0) * ln_n - (M + 1) * math.log(min_abs),
        max(_ln_cm(m, ln_n) - (m - 1) * math.log(min_abs) for m in range(1, M + 1)) + ln_n,
    )
    if worst > _LOG_GUARD:
        raise OverflowRegimeError(
            f"coefficient magnitude exp({worst:.1f}) exceeds the 1e300 guard; reduce M"
        )


def _head_integral(path: PathSpec, N: int) -> complex:
    """sum over n<=N of the closed-form path integral of n^(-s)."""
    s0, s1 = path.s0, path.s1
    total = complex(1.0 - 2.0 * path.sigma0)  # the n = 1 term
    if N >= 2:
        ns = np.arange(2, N + 1, dtype=np.float64)
        total += complex(((np.power(ns, -s0) - np.power(ns, -s1)) / np.log(ns)).sum())
    return total


def _head_sum(s: complex, N: int) -> complex:
    ns = np.arange(1, N + 1, dtype=np.float64)
    return complex(np.power(ns, -s).sum())


def _power_series(z: complex, M: int, ln_n: float, *, m_start: int = 1) -> complex:
    """sum over m in [m_start, M] of (m-1)!/ln(N)^m * z^-(m-1), in log space."""
    total = 0.0 + 0.0j
    log_z = cmath.log(z)
    for m in range(m_start, M + 1):
        total += cmath.exp(_ln_cm(m, ln_n) - (m - 1) * log_z)
    return total


def _boundary_g(s: complex, m: int, N: int) -> complex:
    """N^(1-s) / (1-s)^m in log space."""
    return cmath.exp((1.0 - s) * math.log(N) - m * cmath.log(1.0 - s))


def _remainder_integral(path: PathSpec, N: int, depth: int, ln_coeff: float, tol: float) -> complex:
    """coefficient * path integral of N^(1-s)/(1-s)^depth, evaluated as one exp.

    The requested absolute tolerance is floored at 1e-13 of the integrand's
    peak magnitude, the double-precision resolution actually attainable.
    """
    ln_N = math.log(N)
    peak = ln_coeff + (1.0 - path.sigma0) * ln_N - depth * math.log(math.hypot(path.sigma0, path.t0))
    abs_tol = max(tol, 1e-13 * math.exp(min(peak, _LOG_GUARD)))

    def f(s: complex) -> complex:
        return cmath.exp(ln_coeff + (1.0 - s) * ln_N - depth * cmath.log(1.0 - s))

    return path_quadrature(path, f, abs_tol)


def ibp_identity_II(path: PathSpec, N: int, M: int, *, tol: float = 1e-11) -> float:
    """Residual of the repeated integration-by-parts identity for
    the path integral of N^(1-s)/(1-s), without any zero substitution.

    Both sides are evaluated independently (left by quadrature of the original
    integrand, right as boundary sums plus the depth-(M+1) remainder) and the
    identity holds for every admissible (path, N, M).
    """
    _guard(path, N, M)
    ln_n = math.log(N)
    lhs = path_quadrature(path, lambda s: cmath.exp((1.0 - s) * ln_n) / (1.0 - s), tol)
    boundary = 0.0 + 0.0j
    for m in range(1, M + 1):
        cm = math.exp(_ln_cm(m, ln_n))
        boundary += cm * (_boundary_g(path.s1, m, N) - _boundary_g(path.s0, m, N))
    remainder = _remainder_integral(path, N, M + 1, _ln_rem(M, ln_n), tol)
    rhs = -boundary + remainder
    return abs(lhs - rhs)


@dataclass(frozen=True)
class DecompositionReport:
    """Named decomposition terms, their sum, the direct quadrature, and the residual."""

    mode: str  # "part2_f" or "part3_delta"
    variant: str  # "exact" or "at_zero"
    path: PathSpec
    N: int
    M: int
    terms: tuple[tuple[str, complex], ...]
    term_sum: complex
    direct: complex
    residual: float
    regime: tuple[str, str]
    dominant: str
    boundary_term: complex | None = None


def default_M(path: PathSpec, N: int) -> int:
    """Midpoint of the regime window (|s0| ln N, e |1-s0| ln N), clamped to [1, M_MAX]."""
    ln_n = math.log(N)
    lo = abs(path.s0) * ln_n
    hi = math.e * abs(1.0 - path.s0) * ln_n
    return max(1, min(M_MAX, round(0.5 * (lo + hi))))


def _report(mode, variant, path, N, M, named_terms, direct, boundary_term=None) -> DecompositionReport:
    term_sum = sum(v for _, v in named_terms)
    ln_n = math.log(N)
    regime = (
        stirling_regime(M, abs(path.s0) * ln_n),
        stirling_regime(M, abs(1.0 - path.s0) * ln_n),
    )
    dominant = max(named_terms, key=lambda kv: abs(kv[1]))[0]
    return DecompositionReport(
        mode=mode,
        variant=variant,
        path=path,
        N=N,
        M=M,
        terms=tuple(named_terms),
        term_sum=complex(term_sum),
        direct=complex(direct),
        residual=abs(complex(term_sum) - complex(direct)),
        regime=regime,
        dominant=dominant,
        boundary_term=boundary_term,
    )


def decompose_part2(
    path: PathSpec,
    N: int,
    M: int,
    variant: str = "exact",
    *,
    quad_tol: float = 1e-9,
    tail_tol: float = 1e-10,
    direct: complex | None = None,
) -> DecompositionReport:
    """Four-term decomposition of the path integral of zeta.

    variant="at_zero" follows the zero-substituted displays verbatim;
    variant="exact" keeps the actual N^(1-s)/(1-s)^m boundary values, making
    the sum an unconditional identity up to quadrature tolerance.
    """
    if variant not in ("exact", "at_zero"):
        raise DomainError(f"unknown variant {variant!r}")
    _guard(path, N, M)
    ln_n = math.log(N)
    s0, s1 = path.s0, path.s1
    sb = s0.conjugate()  # 1 - s1

    head_int = _head_integral(path, N)
    remainder = _remainder_integral(path, N, M + 1, _ln_rem(M, ln_n), quad_tol)
    tail0, _, _ = half_sawtooth_tail(s0, N, tail_tol)
    tail1, _, _ = half_sawtooth_tail(s1, N, tail_tol)

    def f4_integrand(s: complex) -> complex:
        return s * half_sawtooth_tail(s, N, tail_tol)[0]

    f4 = path_quadrature(path, f4_integrand, quad_tol)

    if variant == "exact":
        boundary = 0.0 + 0.0j
        for m in range(1, M + 1):
            cm = math.exp(_ln_cm(m, ln_n))
            boundary += cm * (_boundary_g(s1, m, N) - _boundary_g(s0, m, N))
        f1 = head_int - remainder + boundary
        f2 = -0.5 / ln_n * (cmath.exp(-s0 * ln_n) - cmath.exp(-s1 * ln_n))
        f3 = 0.0 + 0.0j
    else:
        p_mirror = _power_series(1.0 - s0, M, ln_n)  # acts on the s0 endpoint family
        p_self = _power_series(sb, M, ln_n)  # acts on the mirror endpoint family
        f1 = (
            head_int
            - remainder
            - (_head_sum(s0, N) * p_mirror - _head_sum(s1, N) * p_self)
        )
        f2 = 0.5 * (
            cmath.exp(-s0 * ln_n) * (_power_series(1.0 - s0, M, ln_n, m_start=2))
            - cmath.exp(-s1 * ln_n) * (_power_series(sb, M, ln_n, m_start=2))
        )
        f3 = -(s0 * tail0 * p_mirror - s1 * tail1 * p_self)

    if direct is None:
        direct = direct_quadrature(path, max(quad_tol, 1e-10))
    named = [("f1", f1), ("f2", complex(f2)), ("f3", f3), ("f4", f4)]
    return _report("part2_f", variant, path, N, M, named, direct)


def decompose_part3(
    path: PathSpec,
    N: int,
    M: int | None = None,
    variant: str = "exact",
    *,
    quad_tol: float = 1e-10,
    eta_tol: float = 1e-5,
    direct: complex | None = None,
) -> DecompositionReport:
    """Five-term decomposition driven by the integral representation.

    The exact variant retains the eta boundary term (dropped under the
    zero substitution); its residual against direct quadrature shrinks as N
    grows, floored by the evaluator-B tolerance used for eta.  The inner
    expansion depth M only redistributes weight between the fourth and fifth
    terms; the sum is M-independent.
    """
    if variant not in ("exact", "at_zero"):
        raise DomainError(f"unknown variant {variant!r}")
    if not 0 < path.sigma0 <= 0.5:
        raise DomainError("sigma0 outside (0, 1/2]")
    if M is None:
        M = default_M(path, N)
    _guard(path, N, M)
    ln_n = math.log(N)
    s0, s1 = path.s0, path.s1
    sb = s0.conjugate()

    ns = np.arange(1, N + 1, dtype=np.float64)
    pow0 = np.power(ns, -s0)
    pow1 = np.power(ns, -s1)
    sum1 = complex((s0 * pow0 - s1 * pow1).sum())
    sum2 = _head_integral(path, N)
    t3 = (s1 / sb) * cmath.exp(sb * ln_n) - (s0 / (1.0 - s0)) * cmath.exp((1.0 - s0) * ln_n)
    t4 = 0.0 + 0.0j
    log_sb = cmath.log(sb)
    log_1ms0 = cmath.log(1.0 - s0)
    for m in range(0, M + 1):
        ln_coeff = math.lgamma(m + 1) - (m + 1) * math.log(ln_n)
        t4 += cmath.exp(ln_coeff + sb * ln_n - (m + 1) * log_sb) - cmath.exp(
            ln_coeff + (1.0 - s0) * ln_n - (m + 1) * log_1ms0
        )
    t5 = -_remainder_integral(path, N, M + 2, _ln_rem(M + 1, ln_n), quad_tol)

    named = [("sum1", sum1), ("sum2", sum2), ("t3", t3), ("t4", t4), ("t5", t5)]
    if path.degenerate:
        boundary = 0.0 + 0.0j
    else:
        boundary = s1 * s1 * eta_integral(s1, eta_tol) - s0 * s0 * eta_integral(s0, eta_tol)
    if variant == "exact":
        named.append(("eta_boundary", boundary))
    if direct is None:
        direct = direct_quadrature(path, max(quad_tol, 1e-10))
    return _report("part3_delta", variant, path, N, M, named, direct, boundary_term=boundary)


@dataclass(frozen=True)
class BoundReport:
    """Closed-form majorants for the head sums, with the observed magnitudes."""

    path: PathSpec
    N: int
    head_sum_bound: float
    observed_head: float
    first_sum_bound: float
    observed_first: float


def bound_functions(path: PathSpec, N: int) -> BoundReport:
    """Majorants (N^(1-sigma0)-N^sigma0)/(sigma0 ln N) and 2|1-conj(s0)| N^(1-sigma0)/(1-sigma0).

    The first dominates |sum_n path-integral of n^(-s)|, the second
    |sum_n (s0 n^-s0 - (1-conj(s0)) n^-(1-conj(s0)))|.
    """
    if N < 2:
        raise DomainError("N must be >= 2")
    if path.degenerate:
        raise DomainError("bounds are undefined on a degenerate path (0/0 region)")
    sig = path.sigma0
    ln_n = math.log(N)
    s0, s1 = path.s0, path.s1
    head_bound = (N ** (1.0 - sig) - N**sig) / (sig * ln_n)
    first_bound = 2.0 * abs(s1) * N ** (1.0 - sig) / (1.0 - sig)
    ns = np.arange(1, N + 1, dtype=np.float64)
    observed_first = abs(complex((s0 * np.power(ns, -s0) - s1 * np.power(ns, -s1)).sum()))
    observed_head = abs(_head_integral(path, N))
    return BoundReport(
        path=path,
        N=N,
        head_sum_bound=head_bound,
        observed_head=observed_head,
        first_sum_bound=first_bound,
        observed_first=observed_first,
    )


def g_value(path: PathSpec, N: int, M: int, *, quad_tol: float = 1e-11, tail_tol: float = 1e-11) -> complex:
    """g(N, M): the depth-(M+1) remainder integral plus the double sum."""
    _guard(path, N, M)
    ln_n = math.log(N)
    s0, s1 = path.s0, path.s1
    sb = s0.conjugate()
    remainder = _remainder_integral(path, N, M + 1, _ln_rem(M, ln_n), quad_tol)
    double_sum = _head_sum(s0, N) * _power_series(1.0 - s0, M, ln_n) - _head_sum(
        s1, N
    ) * _power_series(sb, M, ln_n)
    return remainder + double_sum


def g_difference_formula(
    path: PathSpec, N: int, M: int, *, tail_tol: float = 1e-11
) -> complex:
    """The displayed single-term value of g(N, M+1) - g(N, M)."""
    _guard(path, N, M)
    ln_n = math.log(N)
    s0, s1 = path.s0, path.s1
    sb = s0.conjugate()
    ln_coeff = math.lgamma(M + 1) - (M + 1) * math.log(ln_n)  # M!/ln(N)^(M+1)
    log_sb = cmath.log(sb)
    log_1ms0 = cmath.log(1.0 - s0)
    half_bracket = 0.5 * (
        cmath.exp(ln_coeff - s0 * ln_n - M * log_1ms0)
        - cmath.exp(ln_coeff - s1 * ln_n - M * log_sb)
    )
    tail0, _, _ = half_sawtooth_tail(s0, N, tail_tol)
    tail1, _, _ = half_sawtooth_tail(s1, N, tail_tol)
    tail_bracket = s0 * tail0 * cmath.exp(ln_coeff - M * log_1ms0) - s1 * tail1 * cmath.exp(
        ln_coeff - M * log_sb
    )
    return half_bracket - tail_bracket


def g_sequence(
    path: PathSpec, N: int, m_range: tuple[int, int], **kw
) -> list[tuple[int, complex, float]]:
    """(M, g(N,M), |g(N,M+1)-g(N,M)|) for M over the inclusive range.

    Emits the difference sequence for inspection; asserts nothing about
    nonvanishing.
    """
    m_lo, m_hi = m_range
    if not 1 <= m_lo <= m_hi:
        raise DomainError("need 1 <= m_lo <= m_hi")
    values = {m: g_value(path, N, m, **kw) for m in range(m_lo, m_hi + 2)}
    return [
        (m, values[m], abs(values[m + 1] - values[m]))
        for m in range(m_lo, m_hi + 1)
    ]
