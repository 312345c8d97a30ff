import math

import numpy as np
import pytest

from ballsbins.exact import balls_needed_pmf, collision_pmf, make_pmf
from ballsbins.simulate import sample_from_pmf, Seed
from ballsbins.stats import chi_squared_gof, ks_statistic, max_abs_diff, total_variation


class TestKs:
    def test_single_midpoint_sample_vs_uniform(self):
        assert ks_statistic([0.5], lambda x: min(max(x, 0.0), 1.0)) == pytest.approx(0.5)

    def test_constant_samples_vs_continuous_law(self):
        stat = ks_statistic([2.0] * 50, lambda x: 1 - math.exp(-x * x / 2) if x > 0 else 0.0)
        assert stat >= 0.5

    def test_exact_law_samples_stay_below_critical_value(self):
        m = 100_000
        rng = Seed(271828).generator()
        u = rng.random(m)
        stat = ks_statistic(u, lambda x: min(max(x, 0.0), 1.0))
        assert stat < 1.95 / math.sqrt(m)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            ks_statistic([], lambda x: x)


class TestChiSquaredGof:
    def test_correct_law_passes(self):
        pmf = balls_needed_pmf(20, 2)
        draws = sample_from_pmf(Seed(55), pmf, 50_000)
        assert chi_squared_gof(draws, pmf).pvalue >= 1e-3

    def test_wrong_law_fails(self):
        draws = sample_from_pmf(Seed(56), balls_needed_pmf(20, 2), 50_000)
        assert chi_squared_gof(draws, balls_needed_pmf(25, 2)).pvalue < 1e-3

    def test_observation_outside_support_kills_fit(self):
        pmf = make_pmf(0, np.array([0.5, 0.5]))
        res = chi_squared_gof(np.array([0, 1, 0, 1, 9]), pmf)
        assert res.pvalue == 0.0

    def test_tiny_sample_degenerates_gracefully(self):
        pmf = collision_pmf(4, 4)
        res = chi_squared_gof(np.array([1, 1]), pmf)
        assert res.df == 0 and res.pvalue == 1.0

    def test_pools_thin_cells(self):
        pmf = balls_needed_pmf(365, 1)  # hundreds of thin support points
        draws = sample_from_pmf(Seed(57), pmf, 20_000)
        res = chi_squared_gof(draws, pmf)
        assert res.n_bins < pmf.masses.size
        assert res.pvalue >= 1e-3


class TestPmfDistances:
    def test_total_variation_disjoint_supports(self):
        p = make_pmf(0, np.array([1.0]))
        q = make_pmf(5, np.array([1.0]))
        assert total_variation(p, q) == 1.0

    def test_total_variation_self_is_zero(self):
        p = collision_pmf(5, 5)
        assert total_variation(p, p) == 0.0

    def test_max_abs_diff(self):
        p = make_pmf(0, np.array([0.5, 0.5]))
        q = make_pmf(0, np.array([0.25, 0.75]))
        assert max_abs_diff(p, q) == pytest.approx(0.25)
