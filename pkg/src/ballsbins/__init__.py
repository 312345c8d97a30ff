"""Exact, simulated, and asymptotic analysis of the balls-into-bins collision process."""

from .asymptotics import (
    beta_center,
    d_eval,
    g_eval,
    gamma_c,
    gamma_c_series,
    limit_cdf,
    LimitLaw,
    moments_approx,
    RegimeSpec,
    w_eval,
    w_inverse,
)
from .bounds import (
    azuma_bound,
    BoundQuery,
    BoundResult,
    centered_tail_bound,
    crucial_tail_bound,
    evaluate_bound,
    ghosh_bound,
    OutOfRegimeError,
)
from .embedding import (
    a_accum,
    ArrivalSequence,
    check_sandwich,
    CoupledPath,
    embed_path,
    f_hazard,
)
from .exact import (
    balls_needed_pmf,
    collision_pmf,
    expected_collisions,
    expected_empty,
    expected_occupied,
    occupied_pmf,
    Pmf,
    pmf_moment,
    pmf_quantile,
    ResourceLimitError,
)
from .simulate import (
    empirical_distribution,
    sample_arrivals,
    sample_balls_needed,
    sample_from_pmf,
    Seed,
    simulate_throws,
    size_biased_collision_pair,
    Trajectory,
)
from .stats import chi_squared_gof, ks_statistic, total_variation
from .verify import default_config, Report, run_verification_suite, VerifyConfig

__version__ = "0.1.0"
