"""Deterministic coupling of the collision process to unit-rate arrival times.

Given a strictly increasing sequence of arrival times, the waiting times
B(1, n), B(2, n), ... are produced by a hit/miss walk: at occupancy i a miss
consumes hazard f(i/n) = -log(1 - i/n) and occupies a new bin; a hit occurs
once the remaining inter-arrival gap fits inside the current hazard.  When the
arrivals come from a rate-1 Poisson process, the resulting B-sequence has
exactly the balls-into-bins law, and the per-path sandwich inequalities

    a(i, n) <= T_c <= a(i, n) + c f(i/n),       i = B(c, n) - c,
    |(B - c)^2 / (2n) - T_c| <= i/(2n) + i^3/(3n^2) + 2ci/n   (when i < n/2)

hold deterministically, with a(i, n) = sum_{j < i} f(j/n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def f_hazard(p: float) -> float:
    """f(p) = -log(1 - p) on [0, 1], with f(1) = +inf."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"need p in [0, 1], got p={p}")
    if p == 1.0:
        return math.inf
    return -math.log1p(-p)


def a_accum(i: int, n: int) -> float:
    """a(i, n) = sum_{0 <= j < i} f(j/n), compensated; requires 0 <= i <= n."""
    if n < 1:
        raise ValueError(f"need n >= 1, got n={n}")
    if not 0 <= i <= n:
        raise ValueError(f"need 0 <= i <= n, got i={i}")
    return math.fsum(f_hazard(j / n) for j in range(i))


def hazard_table(n: int) -> np.ndarray:
    """f(i/n) for i = 0..n as an array; the last entry is +inf."""
    t = np.empty(n + 1)
    t[:n] = -np.log1p(-np.arange(n) / n)
    t[n] = np.inf
    return t


def accum_table(n: int) -> np.ndarray:
    """a(i, n) for i = 0..n as an array (cumulative sums of the hazard table)."""
    t = np.zeros(n + 1)
    np.cumsum(hazard_table(n)[:n], out=t[1:])
    return t


@dataclass(frozen=True)
class ArrivalSequence:
    """Strictly increasing, strictly positive arrival times."""

    times: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        object.__setattr__(self, "times", t)
        if t.ndim != 1 or t.size == 0:
            raise ValueError("times must be a nonempty 1-d array")
        if t[0] <= 0.0 or np.any(np.diff(t) <= 0.0):
            raise ValueError("times must be strictly increasing and positive")

    def __len__(self) -> int:
        return self.times.size


@dataclass(frozen=True)
class CoupledPath:
    """One embedded path: arrays indexed by the collision count c = 0..c_max.

    ``balls[c]`` is B(c, n), ``times[c]`` is T_c, and ``remainders[c]`` is the
    residual arrival time R(c) spent inside the final (hit) hazard window;
    index 0 holds the base point B(0) = 0, T_0 = 0, R(0) = 0.
    """

    n: int
    balls: np.ndarray
    times: np.ndarray
    remainders: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.balls, dtype=np.int64)
        t = np.asarray(self.times, dtype=float)
        r = np.asarray(self.remainders, dtype=float)
        object.__setattr__(self, "balls", b)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "remainders", r)
        if not (b.size == t.size == r.size) or b.size < 1:
            raise ValueError("balls, times, remainders must share a nonempty length")
        if b[0] != 0 or t[0] != 0.0:
            raise ValueError("path must start at B(0) = 0, T_0 = 0")
        if np.any(np.diff(b) <= 0):
            raise ValueError("B must be strictly increasing in c")
        j = self.occupied[1:]
        if j.size and (j.min() < 1 or j.max() > self.n):
            raise ValueError("occupied counts J(c) must lie in [1, n]")

    @property
    def c_max(self) -> int:
        return self.balls.size - 1

    @property
    def occupied(self) -> np.ndarray:
        """J(c) = B(c) - c, the occupied-bin count at the c-th collision."""
        return self.balls - np.arange(self.balls.size)

    def records(self):
        """Yield one dict per collision index c >= 1 (for JSON-lines dumps)."""
        occ = self.occupied
        for c in range(1, self.balls.size):
            yield {
                "c": c,
                "B": int(self.balls[c]),
                "T": float(self.times[c]),
                "J": int(occ[c]),
                "R": float(self.remainders[c]),
            }


def embed_path(arrivals: ArrivalSequence, n: int, c_max: int) -> CoupledPath:
    """Run the hit/miss walk on one arrival sequence up to c_max collisions.

    Pure and deterministic: identical inputs give identical paths.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got n={n}")
    if c_max < 1:
        raise ValueError(f"need c_max >= 1, got c_max={c_max}")
    if len(arrivals) < c_max:
        raise ValueError(f"need at least {c_max} arrivals, got {len(arrivals)}")
    times = arrivals.times
    balls = np.zeros(c_max + 1, dtype=np.int64)
    tvec = np.zeros(c_max + 1)
    rems = np.zeros(c_max + 1)
    i = 0
    prev = 0.0
    for c in range(1, c_max + 1):
        rem = float(times[c - 1]) - prev
        while True:
            h = math.inf if i == n else -math.log1p(-i / n)
            if h >= rem:  # hit: the arrival lands inside this hazard window
                break
            rem -= h
            i += 1
        balls[c] = i + c
        tvec[c] = times[c - 1]
        rems[c] = rem
        prev = float(times[c - 1])
    return CoupledPath(n=n, balls=balls, times=tvec, remainders=rems)


def embed_gaps(gaps: np.ndarray, n: int) -> np.ndarray:
    """Vectorized walk over many paths at once.

    ``gaps[r, c-1]`` is the inter-arrival gap T_c - T_{c-1} of path r; the
    return value holds B(c, n) per path and c, shape (runs, c_max).  Uses the
    same remaining-gap update as :func:`embed_path`, so the two agree exactly
    on shared inputs.
    """
    gaps = np.asarray(gaps, dtype=float)
    if gaps.ndim != 2 or gaps.shape[1] < 1:
        raise ValueError("gaps must have shape (runs, c_max >= 1)")
    if np.any(gaps <= 0.0):
        raise ValueError("gaps must be strictly positive")
    runs, c_max = gaps.shape
    haz = hazard_table(n)

    occ = np.zeros(runs, dtype=np.int64)
    cidx = np.zeros(runs, dtype=np.int64)
    rem = gaps[:, 0].copy()
    out = np.zeros((runs, c_max), dtype=np.int64)
    alive = np.arange(runs)
    while alive.size:
        h = haz[occ[alive]]
        hit = h >= rem[alive]
        hit_rows = alive[hit]
        if hit_rows.size:
            cs = cidx[hit_rows]
            out[hit_rows, cs] = occ[hit_rows] + cs + 1
            cidx[hit_rows] = cs + 1
            cont = hit_rows[cidx[hit_rows] < c_max]
            rem[cont] = gaps[cont, cidx[cont]]
        miss_rows = alive[~hit]
        rem[miss_rows] -= h[~hit]
        occ[miss_rows] += 1
        alive = alive[cidx[alive] < c_max]
    return out


@dataclass(frozen=True)
class SandwichRecord:
    """Per-c outcome of the deterministic sandwich checks; slack >= 0 means OK."""

    c: int
    i: int
    lower_slack: float
    upper_slack: float
    combined_slack: float | None

    @property
    def lower_ok(self) -> bool:
        return self.lower_slack >= 0.0

    @property
    def upper_ok(self) -> bool:
        return self.upper_slack >= 0.0

    @property
    def combined_ok(self) -> bool | None:
        if self.combined_slack is None:
            return None
        return self.combined_slack >= 0.0

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.upper_ok and self.combined_ok is not False


@dataclass(frozen=True)
class SandwichReport:
    records: list[SandwichRecord] = field(default_factory=list)

    @property
    def all_ok(self) -> bool:
        return all(r.ok for r in self.records)

    @property
    def violations(self) -> list[SandwichRecord]:
        return [r for r in self.records if not r.ok]


def check_sandwich(path: CoupledPath) -> SandwichReport:
    """Evaluate the per-path inequalities for every c on a coupled path.

    Violations are reported, never raised: the inequalities are theorems, so
    a failure indicates an implementation bug.
    """
    n = path.n
    occ = path.occupied
    haz = hazard_table(n)
    acc = accum_table(n)
    recs = []
    for c in range(1, path.c_max + 1):
        i = int(occ[c])
        t_c = float(path.times[c])
        a_i = float(acc[i])
        lower = t_c - a_i
        upper = a_i + c * haz[i] - t_c
        combined = None
        if i < n / 2:
            lhs = abs((path.balls[c] - c) ** 2 / (2.0 * n) - t_c)
            rhs = i / (2.0 * n) + i**3 / (3.0 * n**2) + 2.0 * c * i / n
            combined = rhs - lhs
        recs.append(
            SandwichRecord(c=c, i=i, lower_slack=lower, upper_slack=upper, combined_slack=combined)
        )
    return SandwichReport(records=recs)


@dataclass(frozen=True)
class SandwichBatchSummary:
    checked: int
    lower_violations: int
    upper_violations: int
    combined_checked: int
    combined_violations: int
    min_lower_slack: float
    min_upper_slack: float
    min_combined_slack: float

    @property
    def total_violations(self) -> int:
        return self.lower_violations + self.upper_violations + self.combined_violations


def check_sandwich_batch(balls: np.ndarray, times: np.ndarray, n: int) -> SandwichBatchSummary:
    """Vectorized sandwich check over many paths.

    ``balls`` and ``times`` have shape (runs, c_max) holding B(c, n) and T_c
    for c = 1..c_max.
    """
    balls = np.asarray(balls, dtype=np.int64)
    times = np.asarray(times, dtype=float)
    if balls.shape != times.shape or balls.ndim != 2:
        raise ValueError("balls and times must share a 2-d shape")
    runs, c_max = balls.shape
    cs = np.arange(1, c_max + 1)
    occ = balls - cs
    haz = hazard_table(n)
    acc = accum_table(n)
    a_i = acc[occ]
    lower = times - a_i
    upper = a_i + cs * haz[occ] - times
    mask = occ < n / 2
    lhs = np.abs((balls - cs) ** 2 / (2.0 * n) - times)
    rhs = occ / (2.0 * n) + occ.astype(float) ** 3 / (3.0 * n**2) + 2.0 * cs * occ / n
    combined = np.where(mask, rhs - lhs, np.inf)
    return SandwichBatchSummary(
        checked=balls.size,
        lower_violations=int((lower < 0).sum()),
        upper_violations=int((upper < 0).sum()),
        combined_checked=int(mask.sum()),
        combined_violations=int((combined < 0).sum()),
        min_lower_slack=float(lower.min()),
        min_upper_slack=float(np.min(upper)),
        min_combined_slack=float(combined[mask].min()) if mask.any() else math.inf,
    )
