"""Two evaluators for zeta(s) with controlled error, plus the real/imaginary
component functions used by the dissymmetry scans.

Evaluator A is the truncated-sum form: head sum to N, two closed-form terms,
and the half-sawtooth tail integral evaluated analytically per unit interval.
Evaluator B is the integral form s * integral of ([x]-x)/x^(s+1) over (0, inf),
kept deliberately cruder (its slow O(K^-sigma-1) convergence is fenced by a
looser tolerance band); evaluator A is the precise oracle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError, PrecisionError

ZETA_A_TOL_RANGE = (1e-14, 1e-2)
ZETA_B_TOL_RANGE = (1e-6, 1e-2)
INTERVAL_BUDGET = 6_000_000
_BLOCK = 1 << 19

# integral over one period of |({x}-{x}^2)/2 - 1/12|, used by the tail bound
_W_ABS = 0.032032


def _tail_chunks(s: complex, n_lo: int, n_hi: int):
    """Closed-form interval terms T_n(s) for n in [n_lo, n_hi), summed in blocks.

    T_n = integral over [n, n+1) of (1/2 - {x}) x^(-s-1) dx
        = (n+1/2)(n^-s - (n+1)^-s)/s - ((n+1)^(1-s) - n^(1-s))/(1-s)
    """
    total = 0.0 + 0.0j
    one_minus_s = 1.0 - s
    lo = n_lo
    while lo < n_hi:
        hi = min(lo + _BLOCK, n_hi)
        ns = np.arange(lo, hi + 1, dtype=np.float64)
        p = np.power(ns, -s)
        q = ns * p
        t = (ns[:-1] + 0.5) * (p[:-1] - p[1:]) / s - (q[1:] - q[:-1]) / one_minus_s
        total += complex(t.sum())
        lo = hi
    return total


def _tail_w_bound(s: complex, k: int) -> float:
    """Bound on |(s+1) * integral_K^inf w(x) x^(-s-2) dx|, w the centred sawtooth kernel."""
    sig = s.real
    return (
        _W_ABS
        * 0.5
        * abs(s + 1.0)
        * abs(s + 2.0)
        * (k ** (-sig - 3) + k ** (-sig - 2) / (sig + 2.0))
    )


def half_sawtooth_tail(
    s: complex, n_from: int, tol: float, *, budget: int = INTERVAL_BUDGET
) -> tuple[complex, float, int]:
    """integral_N^inf (1/2 - {x}) x^(-s-1) dx to absolute tolerance tol.

    Interval terms are exact closed forms; the part beyond the cutoff K is
    replaced by its mean-kernel value K^(-s-1)/12, leaving the rigorously
    bounded centred remainder.  Returns (value, error_bound, K).
    """
    if n_from < 1:
        raise DomainError("tail start must be >= 1")
    sig = s.real
    if sig <= 0:
        raise DomainError("tail integral requires Re(s) > 0")
    scale = _W_ABS * 0.5 * abs(s + 1.0) * abs(s + 2.0) / (sig + 2.0)
    k = max(n_from, 8, math.ceil((scale / tol) ** (1.0 / (sig + 2.0))) if scale > 0 else 8)
    while _tail_w_bound(s, k) > tol:
        k = int(k * 1.3) + 1
        if k - n_from > budget:
            raise PrecisionError(
                f"tail tolerance {tol:.2e} needs more than {budget} intervals at s={s}"
            )
    if k - n_from > budget:
        raise PrecisionError(
            f"tail tolerance {tol:.2e} needs more than {budget} intervals at s={s}"
        )
    value = _tail_chunks(s, n_from, k)
    value += np.power(float(k), -s - 1.0) / 12.0
    return complex(value), _tail_w_bound(s, k), k


@dataclass(frozen=True)
class ZetaEval:
    """zeta(s) by evaluator A, with the four summands it decomposes into.

    value == head + midterm + halfterm + tail by construction;
    tail_error_bound dominates the truncation error of the tail part and is
    itself dominated by the conservative whole-tail majorant
    |s| / (2 sigma K^sigma).
    """

    s: complex
    value: complex
    head: complex
    midterm: complex
    halfterm: complex
    tail: complex
    N_used: int
    K_used: int
    tail_error_bound: float

    @property
    def parts(self) -> tuple[complex, complex, complex, complex]:
        return (self.head, self.midterm, self.halfterm, self.tail)

    @property
    def crude_tail_bound(self) -> float:
        sig = self.s.real
        return abs(self.s) / (2.0 * sig * self.K_used**sig)


def _validate_s(s: complex) -> complex:
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise DomainError("s must be finite")
    if s == 1:
        raise PoleError("zeta has a simple pole at s = 1")
    return s


def zeta_a(s: complex, tol: float = 1e-8, N: int | None = None) -> ZetaEval:
    """Evaluator A: head sum + two closed-form terms + analytic tail intervals.

    Works for Re(s) > 0, s != 1.  N defaults to max(10, ceil|s|); the tail
    cutoff K grows until the tail remainder bound falls below tol/2.
    """
    s = _validate_s(s)
    if s.real <= 0:
        raise DomainError(f"evaluator A requires Re(s) > 0, got {s.real}")
    if not ZETA_A_TOL_RANGE[0] <= tol <= ZETA_A_TOL_RANGE[1]:
        raise DomainError(f"tol {tol} outside {ZETA_A_TOL_RANGE}")
    if N is None:
        N = max(10, math.ceil(abs(s)))
    elif N < 1:
        raise DomainError("N must be >= 1")
    ns = np.arange(1, N + 1, dtype=np.float64)
    head = complex(np.power(ns, -s).sum())
    midterm = -np.power(float(N), 1.0 - s) / (1.0 - s)
    halfterm = -0.5 * np.power(float(N), -s)
    inner_tol = 0.5 * tol / max(abs(s), 1.0)
    tail_val, tail_err, k = half_sawtooth_tail(s, N, inner_tol)
    tail = s * tail_val
    value = head + midterm + halfterm + tail
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise PrecisionError(f"non-finite zeta value at s={s}")
    return ZetaEval(
        s=s,
        value=complex(value),
        head=head,
        midterm=complex(midterm),
        halfterm=complex(halfterm),
        tail=complex(tail),
        N_used=N,
        K_used=k,
        tail_error_bound=abs(s) * tail_err,
    )


def zeta_b(s: complex, tol: float = 1e-3) -> complex:
    """Evaluator B: s * integral over (0, inf) of ([x]-x)/x^(s+1), per-interval closed forms.

    Valid on the open strip 0 < Re(s) < 1.  The [0,1) interval contributes
    -s/(1-s) in closed form; interval terms run to a cutoff K whose exactly
    telescoped mean part -K^(-s)/2 is kept, leaving an O(K^(-sigma-1))
    remainder that sets the (deliberately loose) accuracy of this route.
    """
    s = _validate_s(s)
    sig = s.real
    if not 0 < sig < 1:
        raise DomainError(f"evaluator B requires 0 < Re(s) < 1, got {sig}")
    if not ZETA_B_TOL_RANGE[0] <= tol <= ZETA_B_TOL_RANGE[1]:
        raise DomainError(f"tol {tol} outside {ZETA_B_TOL_RANGE}")

    def remainder_bound(k: int) -> float:
        return abs(s) * (k ** (-sig - 1.0) / 12.0 + _tail_w_bound(s, k))

    k = max(8, math.ceil((abs(s) / (6.0 * tol)) ** (1.0 / (sig + 1.0))))
    while remainder_bound(k) > tol:
        k = int(k * 1.3) + 1
        if k > INTERVAL_BUDGET:
            raise PrecisionError(f"tolerance {tol:.2e} unreachable at s={s}")
    if k > INTERVAL_BUDGET:
        raise PrecisionError(f"tolerance {tol:.2e} unreachable at s={s}")

    total = -1.0 / (1.0 - s)  # the [0, 1) interval
    one_minus_s = 1.0 - s
    lo = 1
    while lo < k:
        hi = min(lo + _BLOCK, k)
        ns = np.arange(lo, hi + 1, dtype=np.float64)
        p = np.power(ns, -s)
        q = ns * p
        u = ns[:-1] * (p[:-1] - p[1:]) / s - (q[1:] - q[:-1]) / one_minus_s
        total += complex(u.sum())
        lo = hi
    value = s * total - 0.5 * np.power(float(k), -s)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise PrecisionError(f"non-finite value at s={s}")
    return complex(value)


def eta_integral(s: complex, tol: float = 1e-3) -> complex:
    """integral over (0, inf) of ([x]-x)/x^(s+1) dx; equals zeta_b(s)/s exactly."""
    s = _validate_s(s)
    return zeta_b(s, tol) / s


@dataclass(frozen=True)
class SymmetryResidual:
    """Centred-symmetry defect of zeta along a horizontal line.

    du = u(sigma,t) + u(1-sigma,t) and dv likewise; at sigma = 1/2 these
    collapse to 2u and 2v bitwise.
    """

    sigma: float
    t: float
    u: float
    v: float
    u_mirror: float
    v_mirror: float

    @property
    def du(self) -> float:
        return self.u + self.u_mirror

    @property
    def dv(self) -> float:
        return self.v + self.v_mirror


def _uv(sigma: float, t: float, N: int, tol: float) -> tuple[float, float]:
    """The explicit cosine/sine component formulas for Re and Im of zeta(sigma+it)."""
    ns = np.arange(1, N + 1, dtype=np.float64)
    ln_n = np.log(ns)
    pw = ns**-sigma
    u_head = float((pw * np.cos(t * ln_n)).sum())
    v_head = -float((pw * np.sin(t * ln_n)).sum())

    theta = t * math.log(N)
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    denom = (1.0 - sigma) ** 2 + t * t  # |1 - s|^2
    amp = N ** (1.0 - sigma) / denom
    u_mid = -((1.0 - sigma) * cos_t + t * sin_t) * amp
    v_mid = ((1.0 - sigma) * sin_t - t * cos_t) * amp

    half = 0.5 * N**-sigma
    u_half = -half * cos_t
    v_half = half * sin_t

    tail, _, _ = half_sawtooth_tail(complex(sigma, t), N, 0.5 * tol / max(1.0, math.hypot(sigma, t)))
    c_int, s_int = tail.real, -tail.imag  # cosine and sine tail integrals
    u_tail = sigma * c_int + t * s_int
    v_tail = t * c_int - sigma * s_int
    return u_head + u_mid + u_half + u_tail, v_head + v_mid + v_half + v_tail


def uv_components(sigma: float, t: float, N: int = 32, tol: float = 1e-8) -> SymmetryResidual:
    """u, v at sigma and at 1-sigma from the explicit component formulas.

    u + iv reproduces zeta_a's value at sigma + it to within the tail
    tolerance (a genuine two-route check: this path never forms complex
    powers of the head sum).
    """
    if not 0 < sigma < 1:
        raise DomainError(f"sigma must lie in (0, 1), got {sigma}")
    if N < 10:
        raise DomainError("N must be >= 10")
    u, v = _uv(sigma, t, N, tol)
    if sigma == 0.5:
        u1, v1 = u, v
    else:
        u1, v1 = _uv(1.0 - sigma, t, N, tol)
    return SymmetryResidual(sigma=sigma, t=t, u=u, v=v, u_mirror=u1, v_mirror=v1)


@dataclass(frozen=True)
class CenteredComponents:
    """Components of zeta and its eta factor in the centred abscissa sigma' = sigma - 1/2."""

    sigma_prime: float
    t: float
    u_eta: float
    v_eta: float
    u_zeta: float
    v_zeta: float


def centered_components(sigma_prime: float, t: float, tol: float = 1e-3) -> CenteredComponents:
    """Centred zeta components from evaluator B's integral.

    zeta_c(sigma', t) = (1/2 + sigma' + it) * eta_c(sigma', t) with
    u_zeta = (1/2+sigma') u_eta - t v_eta and v_zeta = (1/2+sigma') v_eta + t u_eta.
    """
    if not -0.5 < sigma_prime < 0.5:
        raise DomainError(f"sigma' must lie in (-1/2, 1/2), got {sigma_prime}")
    s = complex(0.5 + sigma_prime, t)
    eta = eta_integral(s, tol)
    a = 0.5 + sigma_prime
    return CenteredComponents(
        sigma_prime=sigma_prime,
        t=t,
        u_eta=eta.real,
        v_eta=eta.imag,
        u_zeta=a * eta.real - t * eta.imag,
        v_zeta=a * eta.imag + t * eta.real,
    )
