"""Exact finite-size laws for the balls-into-bins collision process.

Throw balls uniformly into ``n`` bins.  With ``C(b, n)`` the number of
collisions after ``b`` balls, ``I(b, n)`` the number of occupied bins and
``B(c, n)`` the number of balls needed for the c-th collision, everything
here is computed exactly (in double precision) by forward evolution of the
underlying birth chains:

    P(C(b+1) = c+1 | C(b) = c) = (b - c) / n
    P(I(b+1) = i+1 | I(b) = i) = (n - i) / n

and the waiting-time identity P(B = b) = P(C(b-1) = c-1) * (b - c) / n.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

MASS_TOL = 1e-12
EDGE_TRIM = 1e-300
DEFAULT_STATE_CAP = 200_000_000


class ResourceLimitError(RuntimeError):
    """A DP query would exceed the configured state budget (not a math error)."""


@dataclass(frozen=True, eq=False)
class Pmf:
    """Probability mass function on a contiguous integer support.

    ``masses[k]`` is P(X = support_min + k).  The support is trimmed: the
    first and last masses are strictly positive, every mass lies in [0, 1]
    and the total is 1 within ``MASS_TOL``.
    """

    support_min: int
    masses: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.masses, dtype=float)
        object.__setattr__(self, "masses", m)
        object.__setattr__(self, "support_min", int(self.support_min))
        if m.ndim != 1 or m.size == 0:
            raise ValueError("masses must be a nonempty 1-d array")
        if np.any(m < 0.0) or np.any(m > 1.0):
            raise ValueError("masses must lie in [0, 1]")
        if m[0] <= 0.0 or m[-1] <= 0.0:
            raise ValueError("support must be trimmed: edge masses must be positive")
        total = math.fsum(m.tolist())
        if not (1.0 - MASS_TOL <= total <= 1.0 + MASS_TOL):
            raise ValueError(f"total mass {total!r} deviates from 1 by more than {MASS_TOL}")

    @property
    def support_max(self) -> int:
        return self.support_min + self.masses.size - 1

    @property
    def support(self) -> np.ndarray:
        return np.arange(self.support_min, self.support_min + self.masses.size)

    def prob(self, x: int) -> float:
        k = x - self.support_min
        if 0 <= k < self.masses.size:
            return float(self.masses[k])
        return 0.0

    def cdf(self) -> np.ndarray:
        return np.cumsum(self.masses)

    def mean(self) -> float:
        return pmf_moment(self, 1)

    def variance(self) -> float:
        return pmf_moment(self, 2, center=self.mean())

    def to_dict(self) -> dict:
        return {"support_min": self.support_min, "masses": self.masses.tolist()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "Pmf":
        return cls(d["support_min"], np.asarray(d["masses"], dtype=float))

    @classmethod
    def from_json(cls, s: str) -> "Pmf":
        return cls.from_dict(json.loads(s))


def make_pmf(support_min: int, masses: np.ndarray) -> Pmf:
    """Build a Pmf, dropping sub-``EDGE_TRIM`` masses at the support edges.

    Interior masses are never dropped.
    """
    m = np.asarray(masses, dtype=float)
    nz = np.flatnonzero(m > EDGE_TRIM)
    if nz.size == 0:
        raise ValueError("all masses are (numerically) zero")
    lo, hi = int(nz[0]), int(nz[-1])
    return Pmf(support_min + lo, m[lo : hi + 1].copy())


def _check_bins(n: int) -> None:
    if n < 1:
        raise ValueError(f"need at least one bin, got n={n}")


def _check_states(states: int, max_states: int) -> None:
    if states > max_states:
        raise ResourceLimitError(
            f"DP would touch ~{states:.2e} states, above the cap {max_states:.2e}; "
            "raise max_states to proceed"
        )


def collision_pmf(n: int, b: int, *, max_states: int = DEFAULT_STATE_CAP) -> Pmf:
    """Exact law of C(b, n), the collision count after b balls.

    Support is contained in [max(0, b - n), max(0, b - 1)].
    """
    _check_bins(n)
    if b < 0:
        raise ValueError(f"ball count must be nonnegative, got b={b}")
    width = min(b, n) + 1
    _check_states(b * width, max_states)
    if b == 0:
        return make_pmf(0, np.array([1.0]))

    row = np.array([1.0])
    lo = 0  # current window is C(t) restricted to [lo, lo + row.size)
    for t in range(b):
        cs = lo + np.arange(row.size)
        p_hit = (t - cs) / n
        flow = row * p_hit
        nxt = np.zeros(row.size + 1)
        nxt[:-1] = row - flow
        nxt[1:] += flow
        row = nxt
        if t + 1 - n > lo:  # mass at c < (t+1) - n is structurally zero
            row = row[1:]
            lo += 1
    return make_pmf(lo, row)


def occupied_pmf(n: int, b: int, *, max_states: int = DEFAULT_STATE_CAP) -> Pmf:
    """Exact law of I(b, n), the number of occupied bins after b balls.

    The empty-bin count N0 is the reflection n - I, and C = b - I holds
    distributionally against :func:`collision_pmf`.
    """
    _check_bins(n)
    if b < 0:
        raise ValueError(f"ball count must be nonnegative, got b={b}")
    size = min(b, n) + 1
    _check_states(b * size, max_states)
    row = np.zeros(size)
    row[0] = 1.0
    occ = np.arange(size)
    p_up = (n - occ) / n
    for _ in range(b):
        flow = row * p_up
        row -= flow
        row[1:] += flow[:-1]
    return make_pmf(0, row)


def balls_needed_pmf(n: int, c: int, *, max_states: int = DEFAULT_STATE_CAP) -> Pmf:
    """Exact law of B(c, n), the number of balls needed for the c-th collision.

    Support is contained in [c + 1, c + n].  B(0, n) = 0 is degenerate and is
    rejected here; callers treat it as the constant 0.
    """
    _check_bins(n)
    if c < 1:
        raise ValueError("collision target must be >= 1 (B(0, n) = 0 is a constant)")
    _check_states((c + n) * min(c, n + 1), max_states)

    # Evolve C(t) restricted to {0, ..., c-1}; mass absorbed into state c at
    # ball t+1 is exactly P(B = t+1).
    row = np.zeros(c)
    row[0] = 1.0
    cs = np.arange(c)
    out = np.zeros(n)  # index k holds P(B = c + 1 + k)
    for t in range(c + n):
        p_hit = (t - cs) / n
        flow = row * p_hit
        if t >= c:
            out[t - c] += flow[c - 1]
        row -= flow
        row[1:] += flow[:-1]
    return make_pmf(c + 1, out)


def expected_collisions(n: int, b: int) -> float:
    """E C(b, n) = b - n + n (1 - 1/n)^b, in closed form."""
    _check_bins(n)
    if b < 0:
        raise ValueError(f"ball count must be nonnegative, got b={b}")
    if b == 0:
        return 0.0
    return b - n + n * math.exp(b * math.log1p(-1.0 / n))


def expected_occupied(n: int, b: int) -> float:
    """E I(b, n) = n (1 - (1 - 1/n)^b), in closed form."""
    return b - expected_collisions(n, b)


def expected_empty(n: int, b: int) -> float:
    """E N0(b, n) = n (1 - 1/n)^b, in closed form."""
    return n - expected_occupied(n, b)


def pmf_moment(pmf: Pmf, k: int, center: float = 0.0) -> float:
    """k-th moment about ``center``, with compensated summation."""
    if k < 1:
        raise ValueError(f"moment order must be >= 1, got k={k}")
    xs = pmf.support - center
    return math.fsum((xs**k * pmf.masses).tolist())


def pmf_quantile(pmf: Pmf, p: float) -> int:
    """Smallest x with CDF(x) >= p, for p in the open interval (0, 1)."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"quantile level must be in (0, 1), got p={p}")
    cdf = pmf.cdf()
    idx = int(np.searchsorted(cdf, p, side="left"))
    idx = min(idx, pmf.masses.size - 1)
    return pmf.support_min + idx
