"""CSV/JSON persistence: schemas, round trips, determinism, golden fixtures."""

import json
from pathlib import Path

import pytest

from torusdamp.analysis import ExtinctionReport, TimeSeriesRecord
from torusdamp.experiments import (
    CheckOutcome,
    ScenarioResult,
    SuiteResult,
    scenario_extinction_1d,
)
from torusdamp.reporting import (
    CSV_COLUMNS,
    build_report,
    environment_stamp,
    read_report_json,
    read_timeseries_csv,
    write_report_json,
    write_timeseries_csv,
)

GOLDEN = Path(__file__).parent / "golden"

PINNED_RECORDS = [
    TimeSeriesRecord(t=0.0, mass_sq=6.283185307179586, l2ma_pow=6.283185307179586,
                     h1=2.5066282746310002, h2=2.5066282746310002, linf=1.0,
                     mass_law_residual=None, dtu_l2=None, nls_energy=None),
    TimeSeriesRecord(t=0.125, mass_sq=4.811823616524426, l2ma_pow=5.497787143782138,
                     h1=2.1933437678519463, h2=2.1933437678519463, linf=0.875,
                     mass_law_residual=1.0717639762195734e-05, dtu_l2=2.5066282746310002,
                     nls_energy=0.0),
]

PINNED_ENV = {
    "python": "3.10.0",
    "platform": "pinned-test-platform",
    "numpy": "0.0.0",
    "float_precision": "binary64",
    "kernel_backend": "pinned",
}


def pinned_suite():
    entry = ScenarioResult(
        name="golden_constant",
        records=PINNED_RECORDS,
        extinction=ExtinctionReport(
            extinct=True, t_v=1.0, mass_at_end=0.0, linf_at_end=0.0,
            bound_1d=2.0, bound_23d=None, nash_constant_estimate=0.15915494309189535,
        ),
        checks=[
            CheckOutcome("extinct", True, 1.0, ""),
            CheckOutcome("mass_monotone", True, -1.25e-16, ""),
            CheckOutcome("nash_constant", None, 0.15915494309189535, ""),
        ],
        duration_s=0.25,
        extras={"gamma": 1.0, "alpha": 1.0, "delta": 0.0, "dt": 0.001, "dim": 1,
                "initial": {"kind": "constant", "amplitude": 1.0}},
    )
    return SuiteResult(scenarios=[entry])


class TestTimeseriesCsv:
    def test_empty_series_is_header_only(self, tmp_path):
        path = tmp_path / "empty.csv"
        write_timeseries_csv([], path)
        assert path.read_text() == ",".join(CSV_COLUMNS) + "\n"

    def test_one_record_two_lines(self, tmp_path):
        path = tmp_path / "one.csv"
        write_timeseries_csv(PINNED_RECORDS[:1], path)
        assert len(path.read_text().splitlines()) == 2

    def test_round_trip_is_exact(self, tmp_path):
        path = tmp_path / "series.csv"
        write_timeseries_csv(PINNED_RECORDS, path)
        back = read_timeseries_csv(path)
        assert back == PINNED_RECORDS

    def test_round_trip_of_real_run(self, tmp_path):
        records = scenario_extinction_1d(seed=0, points=64, t_max=2.0).records
        path = tmp_path / "run.csv"
        write_timeseries_csv(records, path)
        assert read_timeseries_csv(path) == records

    def test_byte_determinism(self, tmp_path):
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        write_timeseries_csv(PINNED_RECORDS, p1)
        write_timeseries_csv(PINNED_RECORDS, p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_golden_bytes(self, tmp_path):
        path = tmp_path / "series.csv"
        write_timeseries_csv(PINNED_RECORDS, path)
        assert path.read_bytes() == (GOLDEN / "series.csv").read_bytes()

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError):
            read_timeseries_csv(path)


class TestReportJson:
    def test_empty_suite_document(self, tmp_path):
        doc = build_report(SuiteResult(), "cfg", "empty", environment=PINNED_ENV)
        assert doc["scenarios"] == []
        assert doc["summary"]["passed"] is True
        path = tmp_path / "r.json"
        write_report_json(doc, path)
        assert read_report_json(path) == doc

    def test_round_trip_lossless(self, tmp_path):
        doc = build_report(pinned_suite(), "cfg text", "suite", environment=PINNED_ENV)
        path = tmp_path / "report.json"
        write_report_json(doc, path)
        assert read_report_json(path) == doc

    def test_verdict_counts_match_suite(self):
        suite = pinned_suite()
        doc = build_report(suite, "cfg", "s", environment=PINNED_ENV)
        assert doc["summary"]["n_scenarios"] == len(suite.scenarios)
        assert doc["summary"]["n_checks"] == sum(len(e.checks) for e in suite.scenarios)
        assert doc["summary"]["n_checks_failed"] == 0
        assert doc["summary"]["passed"] is True

    def test_config_embedded_verbatim(self):
        text = "[grid]\ndim = 1\n# comment\n"
        doc = build_report(SuiteResult(), text, "s", environment=PINNED_ENV)
        assert doc["config"] == text

    def test_stash_and_nonjson_extras_dropped(self):
        entry = ScenarioResult(name="x")
        entry.extras = {"states": object(), "value": 1.5, "seq": [1, object(), 2]}
        doc = build_report(
            SuiteResult(scenarios=[entry]), "c", "s", environment=PINNED_ENV
        )
        extras = doc["scenarios"][0]["extras"]
        assert extras == {"value": 1.5, "seq": [1, 2]}

    def test_nonfinite_values_become_null(self):
        entry = ScenarioResult(name="x")
        entry.extras = {"bad": float("nan"), "worse": float("inf")}
        doc = build_report(
            SuiteResult(scenarios=[entry]), "c", "s", environment=PINNED_ENV
        )
        assert doc["scenarios"][0]["extras"] == {"bad": None, "worse": None}

    def test_stable_key_ordering(self, tmp_path):
        doc = build_report(pinned_suite(), "cfg", "s", environment=PINNED_ENV)
        path = tmp_path / "r.json"
        write_report_json(doc, path)
        text = path.read_text()
        assert text.index('"config"') < text.index('"environment"') < text.index('"name"')

    def test_golden_bytes(self, tmp_path):
        doc = build_report(
            pinned_suite(),
            "[grid]\ndim = 1\n[damping]\ngamma = 1.0\nalpha = 1.0\n",
            "golden_suite",
            environment=PINNED_ENV,
            series_files={"golden_constant": "golden_constant.csv"},
        )
        path = tmp_path / "report.json"
        write_report_json(doc, path)
        assert path.read_bytes() == (GOLDEN / "report.json").read_bytes()

    def test_environment_stamp_fields(self):
        env = environment_stamp()
        assert env["float_precision"] == "binary64"
        assert env["kernel_backend"] in ("compiled", "python")
        assert set(env) == {"python", "platform", "numpy", "float_precision", "kernel_backend"}
