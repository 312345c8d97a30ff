"""Seeded Monte Carlo for the collision process.

All randomness flows through :class:`Seed`, a (seed, stream) pair keying a
counter-based Philox generator, so distinct streams are independent and every
sampler is reproducible from its arguments.  The module offers the literal
ball-by-ball simulator (the oracle for everything else), batch samplers for
B(c, n) and I(b, n), the embedded-path sampler, and the bounded size-biased
coupling for the collision count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .asymptotics import beta_center
from .embedding import ArrivalSequence, embed_gaps
from .exact import Pmf, make_pmf

_U64 = 2**64
_DENSE_BIN_LIMIT = 10**7
_ELEM_BUDGET = 2**23  # per-chunk array elements for the batch samplers


@dataclass(frozen=True)
class Seed:
    """64-bit (seed, stream) pair; distinct streams give disjoint Philox keys."""

    seed: int
    stream: int = 0

    def __post_init__(self):
        if not 0 <= self.seed < _U64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not 0 <= self.stream < _U64:
            raise ValueError(f"stream must be a 64-bit unsigned integer, got {self.stream}")

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed, self.stream], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class Trajectory:
    """Bookkeeping for one simulated run.

    ``occupancy_counts[k]`` is N_k, the number of bins holding exactly k
    balls; ``first_passages[c]`` is B(c, n) as realized on this run.  The
    identities sum_k N_k = n, sum_k k N_k = b and C = b - I are enforced at
    construction.
    """

    n: int
    b_thrown: int
    occupancy_counts: np.ndarray
    occupied: int
    collisions: int
    first_passages: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        counts = np.asarray(self.occupancy_counts, dtype=np.int64)
        object.__setattr__(self, "occupancy_counts", counts)
        ks = np.arange(counts.size)
        if int(counts.sum()) != self.n:
            raise ValueError("occupancy histogram must sum to n")
        if int((ks * counts).sum()) != self.b_thrown:
            raise ValueError("ball-weighted occupancy histogram must sum to b")
        if self.collisions != self.b_thrown - self.occupied:
            raise ValueError("collision count must equal b - I")


def sample_arrivals(seed: Seed, count: int) -> ArrivalSequence:
    """Arrival times of a rate-1 Poisson process: cumulative Exp(1) spacings."""
    if count < 1:
        raise ValueError(f"need count >= 1, got {count}")
    rng = seed.generator()
    return ArrivalSequence(np.cumsum(rng.standard_exponential(count)))


def _collide_mask(draws: np.ndarray) -> np.ndarray:
    """Per-ball indicator: ball t collides iff its bin was already hit earlier."""
    mask = np.ones(draws.size, dtype=bool)
    _, first_idx = np.unique(draws, return_index=True)
    mask[first_idx] = False
    return mask


def _occupancy_histogram(draws: np.ndarray, n: int) -> np.ndarray:
    if n <= _DENSE_BIN_LIMIT:
        return np.bincount(np.bincount(draws, minlength=n))
    # huge n: tally only occupied bins, then add the empties
    _, per_bin = np.unique(draws, return_counts=True)
    hist = np.bincount(per_bin, minlength=1)
    hist[0] = n - per_bin.size
    return hist


def simulate_throws(
    seed: Seed, n: int, *, balls: int | None = None, collisions: int | None = None
) -> Trajectory:
    """Throw balls uniformly into n bins until a ball or collision target.

    Exactly one of ``balls`` / ``collisions`` must be given.  Stopping on
    ``collisions=c`` needs at most c + n balls, which are drawn up front and
    truncated at the c-th collision, so ``b_thrown`` realizes B(c, n).
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got n={n}")
    if (balls is None) == (collisions is None):
        raise ValueError("give exactly one of balls= or collisions=")
    rng = seed.generator()
    if collisions is not None:
        if collisions < 0:
            raise ValueError(f"collision target must be >= 0, got {collisions}")
        if collisions == 0:
            draws = np.empty(0, dtype=np.int64)
        else:
            full = rng.integers(0, n, size=collisions + n)
            cum = np.cumsum(_collide_mask(full))
            b = int(np.searchsorted(cum, collisions, side="left")) + 1
            draws = full[:b]
    else:
        if balls < 0:
            raise ValueError(f"ball count must be >= 0, got {balls}")
        draws = rng.integers(0, n, size=balls)

    b = draws.size
    mask = _collide_mask(draws)
    cum = np.cumsum(mask)
    c_total = int(cum[-1]) if b else 0
    passages = {
        int(cc): int(np.searchsorted(cum, cc, side="left")) + 1 for cc in range(1, c_total + 1)
    }
    return Trajectory(
        n=n,
        b_thrown=b,
        occupancy_counts=_occupancy_histogram(draws, n),
        occupied=b - c_total,
        collisions=c_total,
        first_passages=passages,
    )


def sample_occupied_counts(seed: Seed, n: int, b: int, size: int) -> np.ndarray:
    """size independent draws of I(b, n), vectorized across runs."""
    if n < 1 or b < 0 or size < 1:
        raise ValueError("need n >= 1, b >= 0, size >= 1")
    if b == 0:
        return np.zeros(size, dtype=np.int64)
    rng = seed.generator()
    out = np.empty(size, dtype=np.int64)
    rows_per = max(1, _ELEM_BUDGET // b)
    pos = 0
    while pos < size:
        r = min(rows_per, size - pos)
        draws = rng.integers(0, n, size=(r, b))
        draws.sort(axis=1)
        out[pos : pos + r] = (np.diff(draws, axis=1) != 0).sum(axis=1) + 1
        pos += r
    return out


def sample_balls_needed(seed: Seed, n: int, c: int, size: int) -> np.ndarray:
    """size independent draws of B(c, n) via per-level collision counts.

    While the occupancy sits at i, each throw collides with probability i/n,
    so the number of collisions made at level i is geometric with success
    probability (n - i)/n, independently across levels; B(c, n) = c + J where
    J is the first level at which the cumulative collision count reaches c.
    Levels are drawn in blocks sized from the typical J, with rare stragglers
    extended until they finish (level n absorbs whatever is left).
    """
    if n < 1 or c < 1 or size < 1:
        raise ValueError("need n >= 1, c >= 1, size >= 1")
    rng = seed.generator()
    out = np.empty(size, dtype=np.int64)
    j_typ = beta_center(c, n) - c
    block0 = int(min(n - 1, math.ceil(j_typ + 12.0 * math.sqrt(n) + 16.0 * math.sqrt(c) + 64)))
    ext = max(int(4.0 * math.sqrt(n)) + 64, 512)
    rows_per = min(size, max(32, _ELEM_BUDGET // max(block0, 1)))

    pos = 0
    while pos < size:
        r = min(rows_per, size - pos)
        s_run = np.zeros(r, dtype=np.int64)
        j_out = np.full(r, n, dtype=np.int64)  # default: finish at full occupancy
        undecided = np.arange(r)
        lvl_lo = 1
        block = block0
        while undecided.size and lvl_lo <= n - 1:
            lvl_hi = min(n - 1, lvl_lo + block - 1)
            width = lvl_hi - lvl_lo + 1
            q = 1.0 - np.arange(lvl_lo, lvl_hi + 1) / n
            draws = rng.geometric(np.broadcast_to(q, (undecided.size, width))) - 1
            cum = s_run[undecided, None] + np.cumsum(draws, axis=1)
            finished = cum[:, -1] >= c
            hit = np.argmax(cum >= c, axis=1)
            j_out[undecided[finished]] = lvl_lo + hit[finished]
            s_run[undecided[~finished]] = cum[~finished, -1]
            undecided = undecided[~finished]
            lvl_lo = lvl_hi + 1
            block = ext
        out[pos : pos + r] = c + j_out
        pos += r
    return out


def sample_embedded_paths(
    seed: Seed, n: int, c_max: int, size: int
) -> tuple[np.ndarray, np.ndarray]:
    """size embedded paths at once: returns (balls, times), each (size, c_max).

    ``balls[r, c-1]`` is B(c, n) and ``times[r, c-1]`` is T_c for path r, with
    the gaps drawn as independent Exp(1) variables.
    """
    if c_max < 1 or size < 1:
        raise ValueError("need c_max >= 1 and size >= 1")
    rng = seed.generator()
    gaps = rng.standard_exponential((size, c_max))
    return embed_gaps(gaps, n), np.cumsum(gaps, axis=1)


def sample_from_pmf(seed: Seed, pmf: Pmf, size: int) -> np.ndarray:
    """size inverse-CDF draws from an exact pmf."""
    if size < 1:
        raise ValueError(f"need size >= 1, got {size}")
    rng = seed.generator()
    cdf = pmf.cdf()
    idx = np.searchsorted(cdf, rng.random(size), side="left")
    np.clip(idx, 0, pmf.masses.size - 1, out=idx)
    return pmf.support_min + idx


def empirical_distribution(samples) -> Pmf:
    """Normalized histogram of integer samples as a Pmf."""
    a = np.asarray(samples, dtype=np.int64)
    if a.size == 0:
        raise ValueError("need at least one sample")
    lo = int(a.min())
    counts = np.bincount(a - lo)
    return make_pmf(lo, counts / a.size)


def _row_unique_counts(x: np.ndarray) -> np.ndarray:
    s = np.sort(x, axis=1)
    return (np.diff(s, axis=1) != 0).sum(axis=1) + 1


def _binomial_pmf(m: int, p: float) -> np.ndarray:
    """pmf of Binomial(m, p) as a length m+1 array, via log-gamma."""
    ks = np.arange(m + 1)
    if p >= 1.0:
        pmf = np.zeros(m + 1)
        pmf[m] = 1.0
        return pmf
    if p <= 0.0:
        pmf = np.zeros(m + 1)
        pmf[0] = 1.0
        return pmf
    logc = (
        math.lgamma(m + 1)
        - np.array([math.lgamma(k + 1) for k in ks])
        - np.array([math.lgamma(m - k + 1) for k in ks])
    )
    return np.exp(logc + ks * math.log(p) + (m - ks) * math.log1p(-p))


def size_biased_collision_pair(
    seed: Seed, n: int, b: int, size: int = 1
) -> tuple[np.ndarray, np.ndarray]:
    """Coupled draws (C, C') with C ~ C(b, n) and C' its size-biased version.

    Construction: pick the biased ball j in {2..b} with weight
    1 - (1 - 1/n)^(j-1), draw the full throw vector, and condition ball j to
    collide by coupling S = #{i < j : X_i = X_j} ~ Binomial(j-1, 1/n) to
    S' ~ (S | S > 0) through a shared uniform on the inverse CDF.  When
    S' = S + 1, one uniformly chosen earlier ball with X_i != X_j moves into
    bin X_j.  Every outcome satisfies C' - C in {0, 1}.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got n={n}")
    if b < 2:
        raise ValueError("need b >= 2: with fewer balls no collision can occur")
    if size < 1:
        raise ValueError(f"need size >= 1, got {size}")
    rng = seed.generator()

    # E W_j = 1 - (1 - 1/n)^(j-1); for n = 1 the log is -inf and every weight is 1
    weights = -np.expm1(np.arange(1, b) * math.log1p(-1.0 / n))
    j = rng.choice(np.arange(2, b + 1), size=size, p=weights / weights.sum())
    x = rng.integers(0, n, size=(size, b))
    rows = np.arange(size)
    target = x[rows, j - 1]
    before = np.arange(b)[None, :] < (j - 1)[:, None]
    s = ((x == target[:, None]) & before).sum(axis=1)
    v = rng.random(size)

    sp = np.empty(size, dtype=np.int64)
    for jv in np.unique(j):
        sel = np.flatnonzero(j == jv)
        m = int(jv) - 1
        pmf = _binomial_pmf(m, 1.0 / n)
        cdf = np.cumsum(pmf)
        cond_cdf = (cdf[1:] - cdf[0]) / (1.0 - cdf[0]) if cdf[0] < 1.0 else cdf[1:]
        s_here = s[sel]
        lo = np.where(s_here > 0, cdf[np.maximum(s_here - 1, 0)], 0.0)
        u = lo + v[sel] * (cdf[s_here] - lo)
        sp_here = np.searchsorted(cond_cdf, u, side="left") + 1
        # float ties at a cell edge can undershoot by one; the real-valued
        # coupling never moves S' below S
        sp[sel] = np.maximum(sp_here, s_here)
    if np.any(sp < 1) or np.any(sp < s) or np.any(sp - s > 1):
        raise AssertionError("inverse-CDF coupling left {0, 1}; this is a bug")

    c_plain = b - _row_unique_counts(x)
    move = sp == s + 1
    x2 = x.copy()
    mrows = np.flatnonzero(move)
    if mrows.size:
        elig = before[mrows] & (x[mrows] != target[mrows, None])
        cnt = elig.sum(axis=1)
        pick = rng.integers(0, cnt)
        ranks = np.cumsum(elig, axis=1)
        cols = np.argmax(elig & (ranks == (pick + 1)[:, None]), axis=1)
        x2[mrows, cols] = target[mrows]
    c_biased = b - _row_unique_counts(x2)
    return c_plain, c_biased
