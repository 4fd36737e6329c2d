"""Closed-form and series estimators of the prime-counting function.

Five estimators are exposed: the ratio x/ln x, its constant-shift variant
x/(ln x - B), the principal-value logarithmic integral, the Riemann R
function (two constructions: a truncated Mobius sum over li, and the Gram
series used as its cross-check), and the fitted-correction form
x/(ln x - f_hat(log10 x)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .counting import mobius
from .errors import DomainError, PoleError

EULER_GAMMA = float(np.euler_gamma)

#: Constant for the x/(ln x - B) estimator, as reported in the source tables.
LEGENDRE_B = 1.80366

#: Convergent series is used below this, asymptotic expansion above.  The
#: asymptotic tail only drops under 1e-13 relative once ln x exceeds ~35.
LI_ASYMPTOTIC_CROSSOVER = 1e15


@dataclass(frozen=True)
class FitParams:
    """Parameters of the correction model a/y + b*exp(c*y) + d, y = log10 x.

    ``c`` is negative for a decaying transient; the model itself is defined
    for any parameter values and every y > 0.
    """

    a: float
    b: float
    c: float
    d: float

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d], dtype=float)


#: The reported fit of the correction model.
PUBLISHED_FIT = FitParams(a=0.7013, b=-4.964, c=-0.9677, d=0.98)


class ApproxMethod(Enum):
    """Dispatch tags for the five estimators."""

    GAUSS = "gauss"
    LEGENDRE = "legendre"
    LOG_INTEGRAL = "li"
    RIEMANN_R = "riemann-r"
    CONJECTURE = "conjecture"


def gauss_ratio(x: float) -> float:
    """x / ln x.  Requires x > 1."""
    if x <= 1.0:
        raise DomainError(f"gauss_ratio requires x > 1, got {x}")
    return x / math.log(x)


def legendre(x: float, b: float = LEGENDRE_B) -> float:
    """x / (ln x - b).  Requires x > 0 and ln x != b."""
    if x <= 0.0:
        raise DomainError(f"legendre requires x > 0, got {x}")
    denom = math.log(x) - b
    if denom == 0.0:
        raise PoleError(f"legendre pole: ln({x}) equals b={b}")
    return x / denom


def _li_convergent(x: float) -> float:
    # Ramanujan's series: li(x) = gamma + ln ln x
    #   + sqrt(x) * sum_{n>=1} (-1)^(n-1) u^n / (n! 2^(n-1)) * sum_{k<=(n-1)/2} 1/(2k+1)
    # with u = ln x.  Positive-term peak is only ~u/ln-ish above the result,
    # so float64 keeps ~1e-13 relative accuracy through x = 1e22.
    u = math.log(x)
    inner = 0.0
    fact = 1.0
    pow_u = 1.0
    pow_half = 2.0
    total = 0.0
    n = 0
    while n < 500:
        n += 1
        fact *= n
        pow_u *= u
        pow_half *= 0.5
        if n % 2 == 1:
            inner += 1.0 / n
        term = pow_u * pow_half / fact * inner
        total += term if n % 2 == 1 else -term
        if n > 4 and abs(term) < 1e-18 * abs(total):
            break
    return EULER_GAMMA + math.log(abs(u)) + math.sqrt(x) * total


def _li_asymptotic(x: float) -> float:
    # li(x) ~ (x/u) * sum_k k!/u^k truncated at its smallest term.
    u = math.log(x)
    total = 0.0
    term = 1.0
    k = 0
    while True:
        total += term
        k += 1
        nxt = term * k / u
        if nxt >= term:
            break
        term = nxt
        if term < 1e-17 * total:
            total += term
            break
    return x / u * total


def li(x: float) -> float:
    """Principal-value logarithmic integral of x (integral from 0).

    Accurate to better than 1e-12 relative over [2, 1e22]; defined for any
    x > 1.
    """
    if x <= 1.0:
        raise DomainError(f"li requires x > 1, got {x}")
    if x >= LI_ASYMPTOTIC_CROSSOVER:
        return _li_asymptotic(x)
    return _li_convergent(x)


@lru_cache(maxsize=None)
def zeta_int(s: int) -> float:
    """Riemann zeta at an integer s >= 2.

    Direct summation of the first terms plus an Euler-Maclaurin tail; the
    truncation error sits far below float64 resolution for every s >= 2.
    """
    if s < 2:
        raise DomainError(f"zeta_int requires s >= 2, got {s}")
    N = 24
    total = 0.0
    for n in range(N - 1, 0, -1):   # ascending magnitude
        total += float(n) ** (-s)
    Nf = float(N)
    total += Nf ** (1 - s) / (s - 1)
    total += 0.5 * Nf ** (-s)
    total += s * Nf ** (-s - 1) / 12.0
    total -= s * (s + 1) * (s + 2) * Nf ** (-s - 3) / 720.0
    total += s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * Nf ** (-s - 5) / 30240.0
    return total


def riemann_r_gram(x: float, rel_tol: float = 1e-15) -> float:
    """Riemann's R via the Gram series 1 + sum_k u^k / (k k! zeta(k+1)).

    All terms are positive, so the sum is carried until a term falls below
    ``rel_tol`` of the running total.
    """
    if x < 2.0:
        raise DomainError(f"riemann_r_gram requires x >= 2, got {x}")
    u = math.log(x)
    total = 1.0
    term = 1.0
    k = 0
    while k < 1000:
        k += 1
        term *= u / k
        add = term / (k * zeta_int(k + 1))
        total += add
        if k > 3 and add < rel_tol * total:
            break
    return total


def riemann_r_mobius(x: float, n_max: int | None = None) -> float:
    """Riemann's R as the truncated Mobius sum  sum mu(n)/n * li(x^(1/n)).

    The default ``n_max = ceil(log2 x) + 2`` stops once the root arguments
    have dropped just below 2, before li's sign change makes further terms
    erratic.  The truncated tail is what separates this construction from
    :func:`riemann_r_gram`: negligible relative to R for large x, a few
    parts in a thousand by x = 10.
    """
    if x < 2.0:
        raise DomainError(f"riemann_r_mobius requires x >= 2, got {x}")
    if n_max is None:
        n_max = math.ceil(math.log2(x)) + 2
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    log_x = math.log(x)
    total = 0.0
    for n in range(1, n_max + 1):
        mu = mobius(n)
        if mu == 0:
            continue
        root = math.exp(log_x / n)
        if root <= 1.0:
            break
        total += mu / n * li(root)
    return total


def f_hat(y: float, params: FitParams = PUBLISHED_FIT) -> float:
    """The fitted correction model a/y + b*exp(c*y) + d at y = log10 x."""
    if y <= 0.0:
        raise DomainError(f"f_hat requires y > 0, got {y}")
    return params.a / y + params.b * math.exp(params.c * y) + params.d


def conjecture_pi(x: float, params: FitParams = PUBLISHED_FIT) -> float:
    """The corrected-denominator estimator x / (ln x - f_hat(log10 x))."""
    if x < 2.0:
        raise DomainError(f"conjecture_pi requires x >= 2, got {x}")
    denom = math.log(x) - f_hat(math.log10(x), params)
    if denom <= 0.0:
        raise PoleError(f"conjecture_pi pole: ln(x) - f_hat <= 0 at x={x}")
    return x / denom


def estimate(x: float, method: ApproxMethod | str, *,
             fit: FitParams = PUBLISHED_FIT, legendre_b: float = LEGENDRE_B) -> float:
    """Evaluate one of the five estimators at x."""
    method = ApproxMethod(method)
    if method is ApproxMethod.GAUSS:
        return gauss_ratio(x)
    if method is ApproxMethod.LEGENDRE:
        return legendre(x, legendre_b)
    if method is ApproxMethod.LOG_INTEGRAL:
        return li(x)
    if method is ApproxMethod.RIEMANN_R:
        return riemann_r_mobius(x)
    return conjecture_pi(x, fit)
