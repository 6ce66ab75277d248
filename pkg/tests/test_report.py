import json
import math
from pathlib import Path

import pytest

from hhverify.report import (emit, parse_json, render_csv, render_json,
                             render_markdown)
from hhverify.runner import RunConfig, RunReport, run

GOLDEN_DIR = Path(__file__).parent / "golden"

GOLDEN_CONFIG = {
    "tasks": ["identities", "bounds", "applications", "searches"],
    "corpus": ["x^4", "x^5"],
    "intervals": [[0.0, 1.0], [1.0, 2.0]],
    "theorems": ["ME1", "ME2", "ME4"],
    "identities": ["L1", "L2"],
    "applications": ["A3_1"],
    "variants": ["derived", "paper"],
    "alpha_grid": [1.0],
    "p_grid": [2.0],
    "q_grid": [2.0],
    "search_p_theorems": ["ME2"],
    "search_alpha_theorems": ["ME1"],
}


@pytest.fixture(scope="module")
def golden_report():
    report = run(RunConfig.from_dict(GOLDEN_CONFIG))
    data = report.to_dict()
    data["generated_at"] = "GOLDEN"
    return data


def test_json_round_trips(golden_report):
    text = render_json(golden_report)
    assert parse_json(text) == golden_report


def test_json_floats_use_17_significant_digits():
    text = render_json({"x": 1.0 / 3.0})
    assert "0.33333333333333331" in text
    assert json.loads(text)["x"] == 1.0 / 3.0


def test_json_whole_floats_stay_floats():
    text = render_json({"x": 4.0})
    assert isinstance(json.loads(text)["x"], float)


def test_json_nonfinite_serializes_as_null():
    assert json.loads(render_json({"x": math.inf}))["x"] is None
    assert json.loads(render_json({"x": math.nan}))["x"] is None


def test_empty_report_is_valid_json():
    report = RunReport(config=RunConfig(), generated_at="X")
    data = report.to_dict()
    parsed = parse_json(render_json(data))
    assert parsed["identity_checks"] == []
    assert parsed["summary"]["total"] == 0


def test_summary_counts_match_record_tallies(golden_report):
    summary = golden_report["summary"]
    records = (golden_report["identity_checks"] + golden_report["bound_checks"]
               + golden_report["application_checks"] + golden_report["searches"])
    assert summary["total"] == len(records)
    for status, key in [("pass", "pass"), ("fail", "fail"),
                        ("refuted_hypothesis", "refuted_hypothesis"),
                        ("non_converged", "non_converged")]:
        assert summary[key] == sum(1 for r in records if r["status"] == status)


def test_golden_json(golden_report):
    expected = (GOLDEN_DIR / "golden.json").read_text(encoding="utf-8")
    assert render_json(golden_report) == expected


@pytest.mark.parametrize("kind,key", [
    ("identity", "identity_checks"), ("bound", "bound_checks"),
    ("application", "application_checks"), ("search", "searches"),
])
def test_golden_csv(golden_report, kind, key):
    expected = (GOLDEN_DIR / f"golden_{kind}.csv").read_text(encoding="utf-8")
    assert render_csv(golden_report[key], kind) == expected


def test_golden_markdown(golden_report):
    expected = (GOLDEN_DIR / "golden.md").read_text(encoding="utf-8")
    assert render_markdown(golden_report) == expected


def test_emit_csv_writes_one_file_per_kind(golden_report, tmp_path):
    emit(golden_report, "csv", tmp_path / "out.csv")
    for kind in ("identity", "bound", "application", "search"):
        target = tmp_path / f"out_{kind}.csv"
        assert target.exists()
        header = target.read_text(encoding="utf-8").splitlines()[0]
        assert "," in header


def test_emit_csv_requires_path(golden_report):
    with pytest.raises(ValueError):
        emit(golden_report, "csv", None)


def test_emit_rejects_unknown_format(golden_report):
    with pytest.raises(ValueError):
        emit(golden_report, "yaml", None)


def test_emit_unwritable_path_mentions_path(golden_report, tmp_path):
    bad = tmp_path / "missing_dir" / "out.json"
    with pytest.raises(OSError, match="out.json"):
        emit(golden_report, "json", bad)


def test_markdown_contains_summary(golden_report):
    text = render_markdown(golden_report)
    assert "# hhverify run report" in text
    assert "| total | pass | fail |" in text


def test_config_round_trip():
    config = RunConfig.from_dict(GOLDEN_CONFIG)
    assert RunConfig.from_dict(config.to_dict()) == config
