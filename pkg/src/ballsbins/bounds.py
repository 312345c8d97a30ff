"""Closed-form tail and concentration bounds for the collision process.

Each calculator returns the bound value clamped into (0, 1]; a bound above 1
is vacuous but should not confuse downstream dominance checks.  The
:class:`BoundQuery` / :class:`BoundResult` pair packages the same calculators
for the CLI and reporting layers, carrying the clamping and regime caveats
explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exact import expected_collisions


class OutOfRegimeError(ValueError):
    """Parameters fall outside the hypotheses of the quoted inequality."""


def crucial_tail_bound(c: int, n: int, t: float, K: float, variant: str = "statement") -> float:
    """Upper-tail bound for B(c, n) / sqrt(2 c n) > sqrt(t).

    Valid for 1 <= c <= K n and t > max(8 K, 44).  The ``statement`` variant
    is c exp(-c t / 8); the ``proof`` variant is the alternative exponent
    c exp(-t^2 / 16) reached at the end of the same derivation.  Both are
    exposed because the two disagree; neither is adjudicated here.
    """
    if K <= 0:
        raise ValueError(f"need K > 0, got K={K}")
    if not 1 <= c <= K * n:
        raise OutOfRegimeError(f"need 1 <= c <= K*n, got c={c}, K*n={K * n}")
    if not t > max(8.0 * K, 44.0):
        raise OutOfRegimeError(f"need t > max(8K, 44) = {max(8.0 * K, 44.0)}, got t={t}")
    if variant == "statement":
        raw = c * math.exp(-c * t / 8.0)
    elif variant == "proof":
        raw = c * math.exp(-t * t / 16.0)
    else:
        raise ValueError(f"unknown variant {variant!r}; expected 'statement' or 'proof'")
    return min(1.0, raw)


def azuma_bound(b: int, t: float) -> float:
    """One-sided martingale bound exp(-t^2 / (2b)) for each tail of N0 - E N0."""
    if b < 1:
        raise ValueError(f"need b >= 1, got b={b}")
    if t <= 0:
        raise ValueError(f"need t > 0, got t={t}")
    return math.exp(-t * t / (2.0 * b))


def ghosh_bound(n: int, b: int, t: float, side: str) -> float:
    """Size-bias tail bounds for C(b, n) - mu with mu = E C(b, n).

    lower: exp(-t^2 / (2 mu));  upper: exp(-t^2 / (2 mu + t)).  Sharper than
    the martingale bound whenever mu <= b, which always holds.
    """
    if b < 2:
        raise ValueError(f"need b >= 2 so that E C(b, n) > 0, got b={b}")
    if t <= 0:
        raise ValueError(f"need t > 0, got t={t}")
    mu = expected_collisions(n, b)
    if side == "lower":
        return math.exp(-t * t / (2.0 * mu))
    if side == "upper":
        return math.exp(-t * t / (2.0 * mu + t))
    raise ValueError(f"unknown side {side!r}; expected 'lower' or 'upper'")


CENTERED_CAVEAT = "asymptotic: valid only for n beyond an unspecified threshold n0"


def centered_tail_bound(y: float) -> float:
    """exp(-min(y, y^2) / 104), bounding P(|B - beta(c, n)| >= y sqrt(n)).

    Only valid for n large (the threshold is not explicit); see
    ``CENTERED_CAVEAT`` and the caveat field of :func:`evaluate_bound`.
    """
    if y <= 0:
        raise ValueError(f"need y > 0, got y={y}")
    return math.exp(-min(y, y * y) / 104.0)


_BOUND_KINDS = (
    "crucial",
    "azuma_upper",
    "azuma_lower",
    "ghosh_lower",
    "ghosh_upper",
    "centered_ui2a",
)


@dataclass(frozen=True)
class BoundQuery:
    """A tail-bound request: which inequality plus its parameters."""

    kind: str
    n: int | None = None
    b: int | None = None
    c: int | None = None
    t: float | None = None
    y: float | None = None
    K: float | None = None
    variant: str = "statement"

    def __post_init__(self):
        if self.kind not in _BOUND_KINDS:
            raise ValueError(f"unknown bound kind {self.kind!r}; expected one of {_BOUND_KINDS}")


@dataclass(frozen=True)
class BoundResult:
    """Numeric bound value plus clamping and regime metadata."""

    kind: str
    value: float
    clamped: bool = False
    caveat: str | None = None


def evaluate_bound(query: BoundQuery) -> BoundResult:
    """Dispatch a BoundQuery to its calculator."""
    k = query.kind
    if k == "crucial":
        raw = crucial_tail_bound(query.c, query.n, query.t, query.K, query.variant)
        unclamped = query.c * (
            math.exp(-query.c * query.t / 8.0)
            if query.variant == "statement"
            else math.exp(-query.t**2 / 16.0)
        )
        return BoundResult(kind=k, value=raw, clamped=unclamped > 1.0)
    if k in ("azuma_upper", "azuma_lower"):
        return BoundResult(kind=k, value=azuma_bound(query.b, query.t))
    if k in ("ghosh_lower", "ghosh_upper"):
        side = k.removeprefix("ghosh_")
        return BoundResult(kind=k, value=ghosh_bound(query.n, query.b, query.t, side))
    return BoundResult(kind=k, value=centered_tail_bound(query.y), caveat=CENTERED_CAVEAT)
