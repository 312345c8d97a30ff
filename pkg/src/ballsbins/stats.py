"""Goodness-of-fit utilities used by the verification suite and the CLI."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .asymptotics import regularized_gamma_q
from .exact import Pmf


def ks_statistic(samples, cdf) -> float:
    """Sup-norm distance between the empirical CDF and a reference CDF.

    ``cdf`` is a scalar callable; it is evaluated once per distinct sorted
    sample.  The statistic is max(D+, D-) with the usual one-sided forms, so
    ties are handled conservatively.
    """
    x = np.sort(np.asarray(samples, dtype=float))
    m = x.size
    if m == 0:
        raise ValueError("need at least one sample")
    ref = np.array([cdf(v) for v in x])
    steps = np.arange(1, m + 1) / m
    d_plus = float((steps - ref).max())
    d_minus = float((ref - (steps - 1.0 / m)).max())
    return max(d_plus, d_minus)


@dataclass(frozen=True)
class GofResult:
    statistic: float
    df: int
    pvalue: float
    n_bins: int


def chi_squared_gof(samples, pmf: Pmf, min_expected: float = 5.0) -> GofResult:
    """Pearson chi-squared test of integer samples against an exact pmf.

    Support cells are pooled left to right until each pooled cell has
    expected count >= ``min_expected``; a trailing remainder is merged into
    the last pool.  Observed values outside the pmf support land in cells
    with zero expected mass, which (correctly) torpedoes the fit.
    """
    a = np.asarray(samples, dtype=np.int64)
    m = a.size
    if m == 0:
        raise ValueError("need at least one sample")
    lo = min(int(a.min()), pmf.support_min)
    hi = max(int(a.max()), pmf.support_max)
    width = hi - lo + 1
    observed = np.bincount(a - lo, minlength=width).astype(float)
    expected = np.zeros(width)
    off = pmf.support_min - lo
    expected[off : off + pmf.masses.size] = m * pmf.masses

    pool_obs: list[float] = []
    pool_exp: list[float] = []
    acc_o = acc_e = 0.0
    for o, e in zip(observed, expected):
        acc_o += o
        acc_e += e
        if acc_e >= min_expected:
            pool_obs.append(acc_o)
            pool_exp.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e > 0 or acc_o > 0:
        if pool_exp:
            pool_obs[-1] += acc_o
            pool_exp[-1] += acc_e
        else:
            pool_obs.append(acc_o)
            pool_exp.append(acc_e)

    k = len(pool_exp)
    if k < 2:
        return GofResult(statistic=0.0, df=0, pvalue=1.0, n_bins=k)
    po = np.array(pool_obs)
    pe = np.array(pool_exp)
    if np.any(pe <= 0.0):
        # all mass observed where none was expected
        return GofResult(statistic=float("inf"), df=k - 1, pvalue=0.0, n_bins=k)
    stat = float(((po - pe) ** 2 / pe).sum())
    df = k - 1
    pvalue = regularized_gamma_q(df / 2.0, stat / 2.0)
    return GofResult(statistic=stat, df=df, pvalue=pvalue, n_bins=k)


def _aligned(p: Pmf, q: Pmf) -> tuple[np.ndarray, np.ndarray]:
    lo = min(p.support_min, q.support_min)
    hi = max(p.support_max, q.support_max)
    width = hi - lo + 1
    pm = np.zeros(width)
    qm = np.zeros(width)
    pm[p.support_min - lo : p.support_min - lo + p.masses.size] = p.masses
    qm[q.support_min - lo : q.support_min - lo + q.masses.size] = q.masses
    return pm, qm


def total_variation(p: Pmf, q: Pmf) -> float:
    """Total-variation distance between two integer pmfs."""
    pm, qm = _aligned(p, q)
    return 0.5 * float(np.abs(pm - qm).sum())


def max_abs_diff(p: Pmf, q: Pmf) -> float:
    """Largest per-point mass discrepancy between two integer pmfs."""
    pm, qm = _aligned(p, q)
    return float(np.abs(pm - qm).max())
