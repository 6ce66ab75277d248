import pytest

from hhverify.errors import ConfigError
from hhverify.runner import (DEFAULT_INTERVALS, RunConfig, RunReport, run)


def test_me1_on_two_quartics_example():
    cfg = RunConfig.from_dict({"tasks": ["bounds"], "corpus": ["x^4", "x^5"],
                               "intervals": [[0.0, 1.0]], "theorems": ["ME1"]})
    report = run(cfg)
    assert len(report.bound_checks) == 2
    assert all(r["pass"] for r in report.bound_checks)
    ratios = sorted(r["ratio"] for r in report.bound_checks)
    assert ratios[1] == pytest.approx(1.0, abs=1e-9)
    assert report.exit_code() == 0


def test_summary_counts_equal_record_tallies():
    cfg = RunConfig.from_dict({"tasks": ["applications"], "intervals": [[1.0, 2.0]],
                               "applications": ["A3_1"], "alpha_grid": [1.0]})
    report = run(cfg)
    summary = report.summary()
    assert summary["total"] == len(report.records)
    assert summary["pass"] + summary["fail"] == summary["total"]
    assert summary["fail"] >= 1  # the printed-coefficient variant
    assert report.exit_code() == 2


def test_interval_grid_is_filtered_by_domain():
    cfg = RunConfig.from_dict({"tasks": ["identities"], "corpus": ["sin"],
                               "intervals": [[0.0, 1.0], [0.25, 0.75]]})
    report = run(cfg)
    # sin's default domain is [0.2, 1.3]; [0.0, 1.0] falls outside it.
    assert {tuple(r["interval"]) for r in report.identity_checks} == {(0.25, 0.75)}


def test_unknown_corpus_name_names_field():
    cfg = RunConfig.from_dict({"corpus": ["x^9"]})
    with pytest.raises(ConfigError, match="corpus"):
        run(cfg)


def test_validation_names_offending_field():
    with pytest.raises(ConfigError, match="theorems"):
        RunConfig.from_dict({"theorems": []})
    with pytest.raises(ConfigError, match="quad_tol"):
        RunConfig.from_dict({"quad_tol": -1.0})
    with pytest.raises(ConfigError, match="p_grid"):
        RunConfig.from_dict({"p_grid": [0.5]})
    with pytest.raises(ConfigError, match="intervals"):
        RunConfig.from_dict({"intervals": [[2.0, 1.0]]})
    with pytest.raises(ConfigError, match="format"):
        RunConfig.from_dict({"format": "xml"})
    with pytest.raises(ConfigError, match="unknown configuration key"):
        RunConfig.from_dict({"not_a_key": 1})


def test_default_interval_grid_is_wide_enough():
    assert len(DEFAULT_INTERVALS) >= 10


def test_exit_code_precedence():
    report = RunReport(config=RunConfig(), generated_at="X")
    report.bound_checks = [{"status": "fail"}, {"status": "non_converged"}]
    assert report.exit_code() == 2
    report.bound_checks = [{"status": "non_converged"}, {"status": "pass"}]
    assert report.exit_code() == 3
    report.bound_checks = [{"status": "pass"}]
    assert report.exit_code() == 0


def test_threads_parameter_accepted():
    cfg = RunConfig.from_dict({"tasks": ["bounds"], "corpus": ["x^4"],
                               "intervals": [[0.0, 1.0]], "theorems": ["ME1", "ME4"]})
    seq = run(cfg, threads=1)
    par = run(cfg, threads=4)
    assert seq.bound_checks == par.bound_checks
