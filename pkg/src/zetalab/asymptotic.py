"""Closed-form prime-side machinery: the truncated series pi*(x,N) and its
residuals, bracketing-N search, the x-to-N ratio phi, gap bounds, the
logarithmic integral, the tau lower bound with a fitted coefficient, and the
factorial-over-power function used by the decomposition regime analysis."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import prime_core
from .errors import DomainError, FitError
from .quadrature import quad_real

LI_TOL = 1e-6
LI_BUDGET = 100_000


def series_terms(x: float, n_max: int) -> np.ndarray:
    """Terms t_n = n!/ln(x)^n for n = 0..n_max, by the ratio recurrence."""
    if x < 2:
        raise DomainError(f"series requires x >= 2, got {x}")
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    lx = math.log(x)
    t = np.empty(n_max + 1)
    t[0] = 1.0
    for n in range(1, n_max + 1):
        t[n] = t[n - 1] * n / lx
    return t


@dataclass(frozen=True)
class SeriesState:
    """Term sequence, partial sums, and residuals of the series at one x.

    eta is pi(x) normalised by x/ln x (exact pi from the sieve); delta[N] is
    eta - partial[N], so delta[N-1] - delta[N] == terms[N] exactly.
    """

    x: int
    eta: float
    terms: np.ndarray
    partial: np.ndarray
    delta: np.ndarray


def series_state(x: int, n_max: int | None = None) -> SeriesState:
    if x < 2:
        raise DomainError(f"series_state requires x >= 2, got {x}")
    if n_max is None:
        n_max = math.ceil(math.log(x)) + 1
    t = series_terms(x, n_max)
    partial = np.cumsum(t)
    eta = prime_core.pi_exact(x) / (x / math.log(x))
    return SeriesState(x=int(x), eta=eta, terms=t, partial=partial, delta=eta - partial)


def pi_star(x: float, N: int) -> float:
    """(x/ln x) * sum_{n<=N} n!/ln(x)^n, accumulated iteratively."""
    if x < 2:
        raise DomainError(f"pi_star requires x >= 2, got {x}")
    if N < 0:
        raise DomainError("N must be >= 0")
    lx = math.log(x)
    term = 1.0
    total = 1.0
    for n in range(1, N + 1):
        term *= n / lx
        total += term
    return (x / lx) * total


@dataclass(frozen=True)
class BracketResult:
    """Outcome of the bracketing search at one x.

    bracketed is False when no N in the search window satisfies
    partial[N] <= eta < partial[N+1]; the claim is then falsified at this x
    and reported as such.
    """

    x: int
    bracketed: bool
    N: int | None
    delta_N: float | None
    delta_N1: float | None
    eta: float


def bracket_N(x: int, **sieve_kw) -> BracketResult:
    """Smallest N with pi*(x,N) <= pi(x) < pi*(x,N+1), searched for N <= ceil(ln x).

    The window cap reflects that the terms grow once n exceeds ln x, so the
    partial sums cannot re-enter the bracket past it.
    """
    if x < 2:
        raise DomainError(f"bracket_N requires x >= 2, got {x}")
    lx = math.log(x)
    eta = prime_core.pi_exact(int(x), **sieve_kw) / (x / lx)
    window = math.ceil(lx)
    t = series_terms(x, window + 1)
    partial = np.cumsum(t)
    for n in range(window + 1):
        if partial[n] <= eta < partial[n + 1]:
            return BracketResult(
                x=int(x),
                bracketed=True,
                N=n,
                delta_N=float(eta - partial[n]),
                delta_N1=float(eta - partial[n + 1]),
                eta=eta,
            )
    return BracketResult(x=int(x), bracketed=False, N=None, delta_N=None, delta_N1=None, eta=eta)


def phi_ratio(x: float, N: int) -> float:
    """ln(x) / (N + 3/2)."""
    if x < 2:
        raise DomainError(f"phi_ratio requires x >= 2, got {x}")
    if N < 0:
        raise DomainError("N must be >= 0")
    return math.log(x) / (N + 1.5)


def phi_star(x: float) -> float:
    """Empirical ceiling 5.1 - 5.5*ln(10)/ln(x) for phi_ratio at the bracketing N."""
    if x < 2:
        raise DomainError(f"phi_star requires x >= 2, got {x}")
    return 5.1 - 5.5 * math.log(10.0) / math.log(x)


def gap_bound(x: float, N: int) -> float:
    """g(x,N) = pi*(x,N+1) - pi*(x,N) = (x/ln x) * (N+1)!/ln(x)^(N+1)."""
    if x < 2:
        raise DomainError(f"gap_bound requires x >= 2, got {x}")
    if N < 0:
        raise DomainError("N must be >= 0")
    lx = math.log(x)
    term = 1.0
    for n in range(1, N + 2):
        term *= n / lx
    return (x / lx) * term


def li_quadrature(x: float, *, tol: float = LI_TOL, budget: int = LI_BUDGET) -> float:
    """Li(x) = integral of dt/ln t from 2 to x, to absolute tolerance tol."""
    if x < 2:
        raise DomainError(f"li_quadrature requires x >= 2, got {x}")
    value, _ = quad_real(lambda t: 1.0 / math.log(t), 2.0, float(x), abs_tol=tol, max_subdivisions=budget)
    return value


@dataclass(frozen=True)
class BetaFit:
    """Least-squares coefficient for the tau(x) lower-bound model and its residuals."""

    beta: float
    sample_xs: tuple[int, ...]
    residuals: tuple[float, ...]


def fit_beta(xs: Sequence[int]) -> BetaFit:
    """Fit beta in tau(x) ~ x/ln x + beta * pi(sqrt x) * sqrt(x)/(2 ln x) - sqrt(x).

    One-parameter least squares in closed form; reports per-point residuals
    tau(x) - model(x).  Sign of beta is reported, not assumed.
    """
    xs = [int(x) for x in xs]
    if len(xs) < 1:
        raise DomainError("fit_beta needs at least one sample point")
    if any(x < 100 for x in xs):
        raise DomainError("fit_beta requires all xs >= 100")
    a = []
    b = []
    for x in xs:
        lx = math.log(x)
        rx = math.sqrt(x)
        a.append(prime_core.pi_exact(math.isqrt(x)) * rx / (2.0 * lx))
        b.append(prime_core.tau_exact(x) - x / lx + rx)
    a_arr = np.asarray(a)
    b_arr = np.asarray(b)
    denom = float(a_arr @ a_arr)
    if denom == 0.0:
        raise FitError("degenerate design: all predictor values vanish")
    beta = float(a_arr @ b_arr) / denom
    residuals = tuple(float(r) for r in (b_arr - beta * a_arr))
    return BetaFit(beta=beta, sample_xs=tuple(xs), residuals=residuals)


REGIME_BELOW = "M<=alpha"
REGIME_WINDOW = "alpha<M<e*alpha"
REGIME_ABOVE = "M>=e*alpha"


@dataclass(frozen=True)
class StirlingEval:
    """n!/alpha^n computed in log space, with its growth-regime label."""

    n: int
    alpha: float
    phi: float
    log_phi: float
    regime: str


def stirling_regime(n: int, alpha: float) -> str:
    if n <= alpha:
        return REGIME_BELOW
    if n < math.e * alpha:
        return REGIME_WINDOW
    return REGIME_ABOVE


def stirling_phi(n: int, alpha: float) -> StirlingEval:
    """Phi(n, alpha) = n!/alpha^n via ln-gamma (no factorial overflow)."""
    if n < 1:
        raise DomainError(f"stirling_phi requires n >= 1, got {n}")
    if alpha <= 0:
        raise DomainError(f"stirling_phi requires alpha > 0, got {alpha}")
    log_phi = math.lgamma(n + 1) - n * math.log(alpha)
    phi = math.exp(log_phi) if log_phi < 709.0 else math.inf
    return StirlingEval(n=int(n), alpha=float(alpha), phi=phi, log_phi=log_phi, regime=stirling_regime(n, alpha))


def stirling_decay_product(sigma: float, c: float, n_values: Sequence[int]) -> np.ndarray:
    """N^(1-sigma) * M * Phi(M, c*ln N) along M = floor(c * ln N).

    Finite-N restatement of the decay limits used by the decomposition
    estimates; evaluated in log space.
    """
    if not 0 < sigma < 1:
        raise DomainError("sigma must lie in (0, 1)")
    if c <= 1:
        raise DomainError("c must exceed 1 so that M > ln N")
    out = []
    for n_val in n_values:
        ln_n = math.log(n_val)
        alpha = c * ln_n
        m = math.floor(alpha)
        log_r = (1 - sigma) * ln_n + math.log(m) + math.lgamma(m + 1) - m * math.log(alpha)
        out.append(math.exp(log_r) if log_r < 709.0 else math.inf)
    return np.asarray(out)


def result_row(x: int, *, li_tol: float = LI_TOL) -> dict:
    """All per-x quantities of the prime-side pipeline, in column order."""
    x = int(x)
    lx = math.log(x)
    pi_x = prime_core.pi_exact(x)
    br = bracket_N(x)
    li_x = li_quadrature(x, tol=li_tol)
    row: dict[str, object] = {"x": x, "pi": pi_x}
    if br.bracketed:
        assert br.N is not None
        row.update(
            pi_star=pi_star(x, br.N),
            N=br.N,
            delta_N=br.delta_N,
            delta_N1=br.delta_N1,
            phi=phi_ratio(x, br.N),
            phi_star=phi_star(x),
            gap=gap_bound(x, br.N),
        )
    else:
        row.update(pi_star=math.nan, N=-1, delta_N=math.nan, delta_N1=math.nan,
                   phi=math.nan, phi_star=phi_star(x), gap=math.nan)
    row.update(
        sqrt_x_log_x=math.sqrt(x * lx),
        li=li_x,
        pnt_error=abs(pi_x - li_x),
    )
    return row
