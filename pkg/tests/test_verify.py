import json
import math

import pytest

from ballsbins.verify import (
    CRITERION_SCENARIOS,
    default_config,
    enumerate_collision_pmf,
    Report,
    run_verification_suite,
    Scenario,
    VerifyConfig,
)
from helpers import enumerate_collision_counts, pmf_as_dict


def _tiny_config():
    return VerifyConfig([
        Scenario("gamma-table", "gamma-table", 3, 0, {"tol": 1e-12}),
        Scenario("median", "quantile-exact", 3, 1,
                 {"n": 365, "c": 1, "p": 0.5, "expected": 23}),
        Scenario("embed", "embedding-gof", 3, 2,
                 {"n": 5, "c": 1, "samples": 20_000, "alpha": 1e-3}),
    ])


class TestConfig:
    def test_json_round_trip(self):
        cfg = default_config()
        back = VerifyConfig.from_json(cfg.to_json())
        assert back == cfg

    def test_rejects_duplicate_names(self):
        sc = Scenario("x", "gamma-table", 1, 0, {"tol": 1e-12})
        with pytest.raises(ValueError):
            VerifyConfig([sc, sc])

    def test_rejects_small_sample_counts(self):
        with pytest.raises(ValueError):
            VerifyConfig([
                Scenario("embed", "embedding-gof", 1, 0,
                         {"n": 5, "c": 1, "samples": 10, "alpha": 1e-3}),
            ])

    def test_unknown_kind_raises(self):
        cfg = VerifyConfig([Scenario("x", "no-such-kind", 1, 0, {})])
        with pytest.raises(ValueError):
            run_verification_suite(cfg)

    def test_empty_config_gives_empty_report(self):
        report = run_verification_suite(VerifyConfig([]))
        assert report.results == [] and report.all_passed

    def test_criterion_map_names_exist(self):
        names = {s.name for s in default_config().scenarios}
        for scenario_names in CRITERION_SCENARIOS.values():
            for name in scenario_names:
                assert name in names


class TestReport:
    def test_deterministic_modulo_runtime(self):
        cfg = _tiny_config()
        a = run_verification_suite(cfg).to_dict()
        b = run_verification_suite(cfg).to_dict()
        for doc in (a, b):
            for entry in doc["scenarios"]:
                entry.pop("runtime_ms")
        assert a == b

    def test_schema_fields(self):
        report = run_verification_suite(_tiny_config())
        doc = json.loads(report.to_json())
        assert set(doc) == {"scenarios", "summary"}
        assert doc["summary"] == {"passed": 3, "failed": 0}
        for entry in doc["scenarios"]:
            for key in ("name", "statistic", "threshold", "pass", "seed", "runtime_ms"):
                assert key in entry

    def test_runner_exceptions_recorded_not_raised(self):
        cfg = VerifyConfig([
            Scenario("broken", "quantile-exact", 1, 0,
                     {"n": 0, "c": 1, "p": 0.5, "expected": 23}),
        ])
        report = run_verification_suite(cfg)
        assert not report.all_passed
        assert "error" in report["broken"].detail
        assert math.isnan(report["broken"].statistic)

    def test_table_renders(self):
        text = run_verification_suite(_tiny_config()).table()
        assert "PASS" in text and "summary: 3 passed, 0 failed" in text

    def test_lookup_by_name(self):
        report = run_verification_suite(_tiny_config())
        assert report["median"].passed
        with pytest.raises(KeyError):
            report["nope"]
        assert isinstance(report, Report)


class TestEnumerationOracle:
    @pytest.mark.parametrize("n,b", [(1, 1), (2, 4), (3, 3), (4, 5)])
    def test_matches_pure_python_counter(self, n, b):
        assert pmf_as_dict(enumerate_collision_pmf(n, b)) == pytest.approx(
            enumerate_collision_counts(n, b), abs=1e-15
        )
