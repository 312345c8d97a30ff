import pytest
from hypothesis import HealthCheck, settings

from ballsbins.verify import default_config, run_verification_suite

settings.register_profile(
    "ci",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def acceptance_report():
    """One shared run of the full default verification battery."""
    return run_verification_suite(default_config())
