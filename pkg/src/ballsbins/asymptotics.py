"""Asymptotic constants and limit laws for the collision waiting time B(c, n).

Covers the mean-correction factor gamma(c) = Gamma(c + 1/2) / (sqrt(c) Gamma(c)),
the centering machinery w(x) = exp(-x) + x - 1, its inverse, beta(c, n) =
n * w^{-1}(c/n), the variance scale g, and the three limit distributions
(Rayleigh, Chi with 2c degrees of freedom, standard normal).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_SQRT2 = math.sqrt(2.0)
_W_SERIES_CUTOFF = 0.5
_WINV_REL_TOL = 1e-12


def gamma_c(c: int) -> float:
    """gamma(c) = Gamma(c + 1/2) / (sqrt(c) Gamma(c)).

    Strictly increasing from sqrt(pi/4) at c = 1 toward 1.  Evaluated via
    log-Gamma differences, which stay finite well past the c ~ 85 overflow
    point of the factorial form.
    """
    if c < 1:
        raise ValueError(f"need c >= 1, got c={c}")
    return math.exp(math.lgamma(c + 0.5) - math.lgamma(c) - 0.5 * math.log(c))


def gamma_c_factorial(c: int) -> float:
    """gamma(c) via the factorial form (2c)! / (2^{2c} (c!)^2) * sqrt(pi c).

    Exact-integer combinatorics; overflows the double range near c ~ 510.
    Kept as an independent cross-check of :func:`gamma_c` at small c.
    """
    if c < 1:
        raise ValueError(f"need c >= 1, got c={c}")
    ratio = math.comb(2 * c, c) / 4.0**c
    return ratio * math.sqrt(math.pi * c)


def gamma_c_series(c: int) -> float:
    """Four-term large-c expansion of gamma(c); error is O(1/c^5)."""
    if c < 1:
        raise ValueError(f"need c >= 1, got c={c}")
    u = 1.0 / c
    return 1.0 + u * (-1.0 / 8 + u * (1.0 / 128 + u * (5.0 / 1024 + u * (-21.0 / 32768))))


def w_eval(x: float) -> float:
    """w(x) = exp(-x) + x - 1, cancellation-safe for small x.

    Below the series cutoff the alternating Maclaurin series
    x^2/2 - x^3/6 + x^4/24 - ... is summed directly; otherwise expm1 is used.
    """
    if x < 0:
        raise ValueError(f"need x >= 0, got x={x}")
    if x < _W_SERIES_CUTOFF:
        term = x * x / 2.0
        total = term
        k = 2
        while True:
            k += 1
            term *= -x / k
            total += term
            if abs(term) <= 1e-17 * abs(total):
                return total
    return math.expm1(-x) + x


def _w_seed(delta: float) -> float:
    if delta < 1.0:
        return (
            math.sqrt(2.0 * delta)
            + delta / 3.0
            + delta**1.5 / (9.0 * _SQRT2)
            + 2.0 * delta**2 / 135.0
        )
    return delta + 1.0


def w_inverse(delta: float) -> float:
    """The unique x >= 0 with w(x) = delta.

    Newton iteration seeded by the small-delta expansion
    sqrt(2 delta) + delta/3 + delta^{3/2}/(9 sqrt(2)) + 2 delta^2/135,
    guarded by bisection (w is convex increasing, so the guard is cheap
    insurance).  Terminates at a forward residual of 1e-12 * max(1, delta).
    """
    if delta < 0:
        raise ValueError(f"need delta >= 0, got delta={delta}")
    if delta == 0.0:
        return 0.0
    tol = _WINV_REL_TOL * max(1.0, delta)
    x = _w_seed(delta)
    lo, hi = 0.0, x
    while w_eval(hi) < delta:
        lo = hi
        hi = 2.0 * hi + 1.0
    for _ in range(200):
        f = w_eval(x) - delta
        if abs(f) <= tol:
            return x
        if f > 0:
            hi = x
        else:
            lo = x
        fp = -math.expm1(-x)  # w'(x) = 1 - exp(-x)
        step = f / fp if fp > 0 else 0.0
        x_new = x - step
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        x = x_new
    raise ArithmeticError(f"w_inverse failed to converge for delta={delta!r}")


def beta_center(c: float, n: float) -> float:
    """beta(c, n) = n * w^{-1}(c / n); ~ sqrt(2 c n) when c/n -> 0."""
    if c <= 0 or n <= 0:
        raise ValueError(f"need c > 0 and n > 0, got c={c}, n={n}")
    return n * w_inverse(c / n)


def d_eval(x: float) -> float:
    """d(x) = exp(-x) (1 - (1 + x) exp(-x)); d(0) = 0, d ~ x^2/2 near 0.

    The inner factor 1 - (1 + x) e^{-x} = x^2/2 - x^3/3 + x^4/8 - ... is
    summed as a series below the cutoff to dodge the cancellation.
    """
    if x < 0:
        raise ValueError(f"need x >= 0, got x={x}")
    if x < _W_SERIES_CUTOFF:
        term = x * x / 2.0
        total = term
        k = 2
        while True:
            term *= -x * k / ((k + 1) * (k - 1))
            k += 1
            total += term
            if abs(term) <= 1e-17 * abs(total):
                break
        return math.exp(-x) * total
    e = math.exp(-x)
    return e * (1.0 - (1.0 + x) * e)


def g_eval(x: float) -> float:
    """g(x) = sqrt(d(x)) / (1 - exp(-x)) extended continuously by g(0) = 1/sqrt(2)."""
    if x < 0:
        raise ValueError(f"need x >= 0, got x={x}")
    if x == 0.0:
        return 1.0 / _SQRT2
    return math.sqrt(d_eval(x)) / -math.expm1(-x)


def regularized_gamma_p(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x).

    Series for x < a + 1, Lentz continued fraction for the complement
    otherwise (the standard split).
    """
    if a <= 0:
        raise ValueError(f"need a > 0, got a={a}")
    if x < 0:
        raise ValueError(f"need x >= 0, got x={x}")
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        return _gamma_p_series(a, x)
    return 1.0 - _gamma_q_cf(a, x)


def regularized_gamma_q(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x)."""
    if a <= 0:
        raise ValueError(f"need a > 0, got a={a}")
    if x < 0:
        raise ValueError(f"need x >= 0, got x={x}")
    if x == 0.0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_p_series(a, x)
    return _gamma_q_cf(a, x)


def _gamma_p_series(a: float, x: float) -> float:
    ap = a
    term = 1.0 / a
    total = term
    for _ in range(10_000):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * 1e-16:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_q_cf(a: float, x: float) -> float:
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b if b != 0 else 1.0 / tiny
    h = d
    for i in range(1, 10_000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def normal_cdf(x: float) -> float:
    """Standard normal CDF, accurate in both tails."""
    return 0.5 * math.erfc(-x / _SQRT2)


@dataclass(frozen=True)
class LimitLaw:
    """One of the three limit distributions: rayleigh, chi_2c, standard_normal."""

    kind: str
    c: int | None = None

    _KINDS = ("rayleigh", "chi_2c", "standard_normal")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown law kind {self.kind!r}; expected one of {self._KINDS}")
        if self.kind == "chi_2c":
            if self.c is None or self.c < 1:
                raise ValueError("chi_2c needs a collision count c >= 1")
        elif self.c is not None:
            raise ValueError(f"{self.kind} takes no c parameter")

    @classmethod
    def rayleigh(cls) -> "LimitLaw":
        return cls("rayleigh")

    @classmethod
    def chi(cls, c: int) -> "LimitLaw":
        return cls("chi_2c", c)

    @classmethod
    def normal(cls) -> "LimitLaw":
        return cls("standard_normal")


def limit_cdf(law: LimitLaw, x: float) -> float:
    """CDF of a limit law at x.

    Rayleigh: 1 - exp(-x^2/2).  Chi with 2c degrees of freedom (the law of
    sqrt(2 T_c) for T_c ~ Gamma(c, 1)): P(c, x^2/2).  Standard normal: Phi(x).
    """
    if law.kind == "rayleigh":
        return -math.expm1(-x * x / 2.0) if x > 0 else 0.0
    if law.kind == "chi_2c":
        return regularized_gamma_p(law.c, x * x / 2.0) if x > 0 else 0.0
    return normal_cdf(x)


_REGIME_KINDS = ("fixed_c", "growing_sublinear", "central")


@dataclass(frozen=True)
class RegimeSpec:
    """Growth regime of c relative to n; alpha0 is the limit of c/n."""

    kind: str
    alpha0: float = 0.0

    def __post_init__(self):
        if self.kind not in _REGIME_KINDS:
            raise ValueError(f"unknown regime {self.kind!r}; expected one of {_REGIME_KINDS}")
        if self.alpha0 < 0:
            raise ValueError(f"need alpha0 >= 0, got {self.alpha0}")
        if self.kind != "central" and self.alpha0 != 0.0:
            raise ValueError(f"regime {self.kind!r} requires alpha0 = 0")


def moments_approx(c: int, n: int, regime: RegimeSpec) -> tuple[float, float]:
    """Approximate (mean, variance) of B(c, n) in the given regime.

    fixed_c / growing_sublinear:  mean = gamma(c) sqrt(2 c n),
                                  variance = 2 c (1 - gamma(c)^2) n.
    central (alpha0 > 0):         mean = beta(c, n),
                                  variance = n g(w^{-1}(c/n))^2.
    """
    if c < 1 or n < 1:
        raise ValueError(f"need c >= 1 and n >= 1, got c={c}, n={n}")
    if regime.kind == "central":
        if regime.alpha0 == 0.0:
            raise ValueError("central regime requires alpha0 > 0")
        lam = w_inverse(c / n)
        return n * lam, n * g_eval(lam) ** 2
    g = gamma_c(c)
    return g * math.sqrt(2.0 * c * n), 2.0 * c * (1.0 - g * g) * n
