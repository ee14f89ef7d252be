"""Closed-form and quadrature evaluation of the real-eigenvalue probabilities.

Central objects:

* ``p_theta_*``: probability that diag(cos t, sin t) @ G has real eigenvalues
  for a 2x2 standard-normal G, as an integral over [0, pi] and as an
  alternating series in sin(2 t); both reduce to 1/sqrt(2) at t = pi/4.
* ``p2_22_integral`` / ``mean_f``: the probability pi/4 that a product of two
  2x2 standard-normal matrices has real eigenvalues, and the co-optimal pair
  fraction (pi - 2)/4 it implies for real two-qubit states.
* ``hypergeom_pFq``: truncated generalized hypergeometric series with an
  Euler-Maclaurin tail at unit argument, used to verify the identity chain
  behind the pi/4 evaluation numerically.

Series coefficients are computed through log-gamma so no intermediate
Gamma(k + 1/2) overflows; quadratures are adaptive with substitutions at
inverse-square-root endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad as _scipy_quad
from scipy.special import gammaln, polygamma, psi

from .sampling import ThetaPoint

__all__ = [
    "QuadratureSpec",
    "QuadratureError",
    "SeriesResult",
    "p_theta_quadrature",
    "p_theta_series",
    "dp_dbeta",
    "p2_22_integral",
    "arcsinh_sine_integral",
    "sqrt_sine_ratio_integral",
    "mean_f",
    "mean_p_theta",
    "p_nn_single",
    "en_asymptote",
    "hypergeom_pFq",
]

_TWO_PI = 2.0 * math.pi
# convergence rate of the Chebyshev-weighted alternating-series acceleration
_ACCEL_RATE = 3.0 + math.sqrt(8.0)


@dataclass(frozen=True)
class QuadratureSpec:
    """Adaptive quadrature budget: tolerances and subdivision cap."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000

    def __post_init__(self):
        if self.abs_tol <= 0.0 or self.rel_tol <= 0.0:
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


class QuadratureError(ArithmeticError):
    """Requested tolerance was not reached; carries the achieved error."""

    def __init__(self, message: str, value: float, achieved_error: float):
        super().__init__(f"{message} (value={value!r}, achieved_error={achieved_error!r})")
        self.value = value
        self.achieved_error = achieved_error


@dataclass(frozen=True)
class SeriesResult:
    """Outcome of a truncated series evaluation.

    last_term_magnitude bounds what the truncation left behind: for plain
    truncation it is the magnitude of the final term's contribution to
    ``value`` (the alternating/geometric tail bound), and when an accelerated
    or corrected tail was applied it is that correction's residual estimate.
    It sits below the requested tolerance unless ``converged`` is False
    because the term cap was reached first.  err_est is a conservative
    estimate of the total remaining error.
    """

    value: float
    terms_used: int
    last_term_magnitude: float
    converged: bool
    err_est: float


def _quad(f, a: float, b: float, spec: QuadratureSpec) -> tuple[float, float]:
    out = _scipy_quad(f, a, b, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                      limit=spec.max_subdivisions, full_output=1)
    value, abserr = out[0], out[1]
    if len(out) > 3:  # QUADPACK flagged trouble; accept only if target met anyway
        target = max(spec.abs_tol, spec.rel_tol * abs(value))
        if abserr > target:
            raise QuadratureError("quadrature tolerance not reached", value, abserr)
    return value, abserr


def _theta_value(theta) -> float:
    t = theta.theta if isinstance(theta, ThetaPoint) else float(theta)
    if not 0.0 <= t <= math.pi / 4 + 1e-15:
        raise ValueError(f"theta must lie in [0, pi/4], got {t}")
    return t


def _p_from_beta(beta: float, spec: QuadratureSpec) -> float:
    f = lambda phi: math.sqrt(math.sin(phi) / (math.sin(phi) + beta))
    value, _ = _quad(f, 0.0, math.pi, spec)
    return 1.0 - value / _TWO_PI


def p_theta_quadrature(theta, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """P(real eigenvalues) at fixed Schmidt angle, via the [0, pi] integral.

    Evaluates 1 - (1/2 pi) * integral of sqrt(sin p / (sin p + beta)) with
    beta = 1/sin(2 theta).  theta = 0 returns exactly 1 (the beta -> inf
    limit); theta = pi/4 gives 1/sqrt(2).
    """
    t = _theta_value(theta)
    if t == 0.0:
        return 1.0
    return _p_from_beta(1.0 / math.sin(2.0 * t), spec)


def _log_series_coeff(k: float) -> float:
    # Gamma(k + 1/2) Gamma(k/2 + 3/4) / (k! Gamma(k/2 + 5/4)), log scale
    return gammaln(k + 0.5) + gammaln(0.5 * k + 0.75) - gammaln(0.5 * k + 1.25) - gammaln(k + 1.0)


def p_theta_series(theta, tol: float = 1e-12, max_terms: int = 500) -> SeriesResult:
    """P(real eigenvalues) at fixed Schmidt angle, via the sin(2 theta) series.

    The series is alternating with terms c_k s^(k + 1/2), s = sin(2 theta).
    For s bounded away from 1 the terms decay geometrically and plain
    truncation at |term| < tol applies.  Near s = 1 the terms only decay like
    1/k, so the same terms are combined with Chebyshev-polynomial weights
    (Cohen-Rodriguez Villegas-Zagier acceleration, valid here because the
    coefficients are moments of a positive measure on [0, 1]), which reaches
    full double precision within ~40 terms.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")
    t = _theta_value(theta)
    s = math.sin(2.0 * t)
    if s == 0.0:
        return SeriesResult(1.0, 1, 0.0, True, 0.0)
    log_s = math.log(s)

    # terms needed for plain truncation, from the geometric factor s^k
    direct_terms = math.inf if s >= 1.0 else math.log(tol) / log_s + 16.0
    if direct_terms <= max_terms:
        total = 0.0
        term_mag = 0.0
        for k in range(max_terms):
            term_mag = math.exp(_log_series_coeff(k) + (k + 0.5) * log_s)
            total += -term_mag if k % 2 else term_mag
            if term_mag < tol * _TWO_PI and k >= 4:
                contrib = term_mag / _TWO_PI
                return SeriesResult(1.0 - total / _TWO_PI, k + 1, contrib, True, contrib)
        contrib = term_mag / _TWO_PI
        return SeriesResult(1.0 - total / _TWO_PI, max_terms, contrib, False, contrib)

    # acceleration path: n terms give error ~ (3 + sqrt(8))^-n
    n = math.ceil(math.log(4.0 / tol) / math.log(_ACCEL_RATE)) + 8
    capped = n > max_terms
    n = min(n, max_terms)
    d = _ACCEL_RATE ** n
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    total = 0.0
    for k in range(n):
        c = b - c
        a_k = math.exp(_log_series_coeff(k) + (k + 0.5) * log_s)
        total += c * a_k
        b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0))
    value = 1.0 - (total / d) / _TWO_PI
    err = 4.0 / (_ACCEL_RATE ** n) + 64.0 * abs(value) * 2.2e-16
    return SeriesResult(value, n, err, (not capped) and err <= max(tol, 1e-13), err)


def dp_dbeta(beta: float, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Derivative of p with respect to beta = 1/sin(2 theta); strictly positive.

    Equals (1/4 pi) * integral over [0, pi] of sqrt(sin p) (sin p + beta)^-3/2.
    """
    if beta < 1.0:
        raise ValueError(f"beta must be >= 1, got {beta}")
    f = lambda phi: math.sqrt(math.sin(phi)) * (math.sin(phi) + beta) ** -1.5
    value, _ = _quad(f, 0.0, math.pi, spec)
    return value / (4.0 * math.pi)


def _integral_endpoint_sqrt(g, spec: QuadratureSpec) -> tuple[float, float]:
    # integral of g over (0, pi) where g may blow up like an inverse square
    # root at either endpoint; substituting phi = t^2 (resp. pi - t^2) makes
    # both halves smooth
    half = QuadratureSpec(spec.abs_tol / 2.0, spec.rel_tol, spec.max_subdivisions)
    edge = math.sqrt(math.pi / 2.0)
    lo, e1 = _quad(lambda t: g(t * t) * 2.0 * t, 0.0, edge, half)
    hi, e2 = _quad(lambda t: g(math.pi - t * t) * 2.0 * t, 0.0, edge, half)
    return lo + hi, e1 + e2


def arcsinh_sine_integral(spec: QuadratureSpec = QuadratureSpec()) -> float:
    """integral over (0, pi) of arcsinh(sqrt(sin p)) / sin p; equals pi^2 / 2.

    The integrand behaves like 1/sqrt(sin p) at both endpoints (integrable),
    handled by the square-root substitution.
    """
    value, _ = _integral_endpoint_sqrt(lambda p: math.asinh(math.sqrt(math.sin(p))) / math.sin(p), spec)
    return value


def p2_22_integral(spec: QuadratureSpec = QuadratureSpec()) -> float:
    """P(product of two 2x2 standard-normal matrices has real eigenvalues).

    Computed as arcsinh_sine_integral / (2 pi); the closed-form value is pi/4.
    """
    return arcsinh_sine_integral(spec) / _TWO_PI


def sqrt_sine_ratio_integral(spec: QuadratureSpec = QuadratureSpec()) -> float:
    """integral over (0, pi) of sqrt((1 + sin x) / sin x); equals 2 pi."""
    value, _ = _integral_endpoint_sqrt(lambda p: math.sqrt((1.0 + math.sin(p)) / math.sin(p)), spec)
    return value


def _mu_weighted_mean(shift: float, spec: QuadratureSpec) -> float:
    # integral over [0, pi/4] of (p_theta - shift) * 2 cos(2 theta);
    # nested quadrature, inner integral at fixed tight tolerance
    inner = QuadratureSpec(1e-12, 1e-12, spec.max_subdivisions)

    def f(t: float) -> float:
        return (p_theta_quadrature(t, inner) - shift) * 2.0 * math.cos(2.0 * t)

    outer = QuadratureSpec(min(spec.abs_tol, 1e-9), min(spec.rel_tol, 1e-9), spec.max_subdivisions)
    value, _ = _quad(f, 0.0, math.pi / 4.0, outer)
    return value


def mean_f(spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Average of (p_theta - 1/2) against the Schmidt-angle density 2 cos(2 theta).

    This is the fraction of independent uniform real two-qubit state pairs
    that are co-optimal; the closed form is (pi - 2)/4.
    """
    return _mu_weighted_mean(0.5, spec)


def mean_p_theta(spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Average of p_theta against 2 cos(2 theta); the closed form is pi/4."""
    return _mu_weighted_mean(0.0, spec)


def p_nn_single(n: int) -> float:
    """P(all n eigenvalues of one n x n standard-normal matrix are real)."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return 2.0 ** (-n * (n - 1) / 4.0)


def en_asymptote(n: int) -> float:
    """Large-n asymptote sqrt(2 n / pi) of the expected number of real eigenvalues.

    An asymptote only: the exact n=2 value is sqrt(2) = 2 * 2^(-1/2), not
    sqrt(4/pi).
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return math.sqrt(2.0 * n / math.pi)


def _pfq_em_tail(top, bot, n_direct: int, chi: float) -> tuple[float, float]:
    # sum_{k >= n_direct} of the series terms at z = 1, via Euler-Maclaurin:
    # quadrature of the term function on [N, X], exact power-law integral
    # beyond X, and derivative corrections at N.  Requires positive
    # parameters so the term function stays positive for real arguments.
    N = float(n_direct)
    X = 4.0e4  # keep log-gamma arguments moderate: rounding grows with x ln x
    ln_c = sum(gammaln(b) for b in bot) - sum(gammaln(a) for a in top)

    def ln_t(x: float) -> float:
        return (ln_c + sum(gammaln(a + x) for a in top)
                - sum(gammaln(b + x) for b in bot) - gammaln(1.0 + x))

    mid, mid_err = _scipy_quad(lambda y: math.exp(ln_t(math.exp(y)) + y),
                               math.log(N), math.log(X),
                               epsabs=1e-14, epsrel=1e-12, limit=300)[:2]
    # far tail: t(x) = C x^-(1+chi) (1 + g1/x + g2/x^2 + ...), g1 in closed
    # form from the Gamma-ratio asymptotics, g2 and g3 estimated numerically
    g1 = 0.5 * (sum(a * a - a for a in top) - sum(b * b - b for b in bot))

    def g_rem(x: float) -> float:
        return math.exp(ln_t(x) - ln_c + (1.0 + chi) * math.log(x)) - 1.0 - g1 / x

    xa, xb = 2.0e4, 1.0e4
    g2 = g_rem(xa) * xa * xa
    g3 = (g_rem(xb) - g2 / (xb * xb)) * xb**3
    c0 = math.exp(ln_c)
    far = c0 * (X ** -chi / chi + g1 * X ** (-1.0 - chi) / (1.0 + chi)
                + g2 * X ** (-2.0 - chi) / (2.0 + chi))
    # neglected g3 term plus the log-gamma noise floor in the g2 estimate
    far_err = c0 * ((abs(g3) + 1.0) * X ** (-3.0 - chi) + 0.05 * X ** (-2.0 - chi))

    t_n = math.exp(ln_t(N))
    l1 = sum(psi(a + N) for a in top) - sum(psi(b + N) for b in bot) - psi(1.0 + N)
    l2 = (sum(polygamma(1, a + N) for a in top)
          - sum(polygamma(1, b + N) for b in bot) - polygamma(1, 1.0 + N))
    l3 = (sum(polygamma(2, a + N) for a in top)
          - sum(polygamma(2, b + N) for b in bot) - polygamma(2, 1.0 + N))
    tail = mid + far + 0.5 * t_n - t_n * l1 / 12.0 + t_n * (l1 ** 3 + 3.0 * l1 * l2 + l3) / 720.0
    return tail, mid_err + far_err


def hypergeom_pFq(top, bottom, z: float, tol: float = 1e-12,
                  max_terms: int = 500) -> SeriesResult:
    """Truncated generalized hypergeometric series sum_k prod(top)_k / prod(bottom)_k z^k / k!.

    Supports p <= q + 1 and |z| <= 1.  Inside the unit interval the terms are
    summed directly with a geometric tail estimate.  At z = 1 the terms decay
    like k^-(1+chi) with chi = sum(bottom) - sum(top) (convergent only for
    chi > 0); after max_terms direct terms the remainder is added via an
    Euler-Maclaurin tail built from the same log-gamma term function, so the
    evaluation stays a series evaluation rather than a closed-form lookup.
    The z = 1 tail requires strictly positive parameters.
    """
    top = [float(a) for a in top]
    bottom = [float(b) for b in bottom]
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")
    for b in bottom:
        if b <= 0.0 and b == int(b):
            raise ValueError(f"bottom parameter {b} is a nonpositive integer; series undefined")
    if abs(z) > 1.0:
        raise ValueError(f"|z| must be <= 1, got {z}")
    terminating = any(a <= 0.0 and a == int(a) for a in top)
    chi = sum(bottom) - sum(top)
    if not terminating:
        if len(top) > len(bottom) + 1 and z != 0.0:
            raise ValueError("series diverges: more top than bottom parameters")
        if len(top) == len(bottom) + 1 and abs(z) == 1.0:
            if z == 1.0 and chi <= 0.0:
                raise ValueError(f"series diverges at z=1: parameter excess {chi} <= 0")
            if z == -1.0 and chi <= -1.0:
                raise ValueError(f"series diverges at z=-1: parameter excess {chi} <= -1")

    # the Euler-Maclaurin tail applies to the algebraically decaying z = 1
    # case; its quadrature starts at the truncation point, which must stay
    # well below the log-gamma argument cap inside _pfq_em_tail
    em_eligible = (z == 1.0 and not terminating and len(top) == len(bottom) + 1
                   and all(a > 0.0 for a in top))
    direct_cap = min(max_terms, 600) if em_eligible else max_terms

    term = 1.0
    total = 0.0
    k = 0
    grow_streak = 0
    while k < direct_cap:
        total += term
        ratio = z / (k + 1.0)
        for a in top:
            ratio *= a + k
        for b in bottom:
            ratio /= b + k
        new_term = term * ratio
        if abs(new_term) > abs(term):
            grow_streak += 1
            if grow_streak > 30 and abs(new_term) > 1e6 * max(1.0, abs(total)):
                raise ValueError("series diverges: terms are growing")
        else:
            grow_streak = 0
        term = new_term
        k += 1
        if term == 0.0:
            return SeriesResult(total, k, 0.0, True, 0.0)
        if abs(term) < tol and k >= 4:
            # geometric bound on the remainder once the term ratio settles
            est = abs(term) / (1.0 - min(abs(ratio), 0.999))
            if est < tol or z <= 0.0:
                bound = abs(term) if z <= 0.0 else est
                return SeriesResult(total, k, bound, True, bound)

    if em_eligible:
        tail, tail_err = _pfq_em_tail(top, bottom, direct_cap, chi)
        err = tail_err + 16.0 * abs(total) * 2.2e-16
        return SeriesResult(total + tail, direct_cap, err, err <= max(tol, 1e-10), err)

    return SeriesResult(total, direct_cap, abs(term), False, abs(term) * direct_cap)
