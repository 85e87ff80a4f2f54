"""Persistent outputs: CSV time series and JSON summary reports.

CSV: one row per record, full double precision (17 significant digits),
empty cell for absent values; byte-deterministic for identical input.
JSON: schema-versioned document with sorted keys embedding the exact
configuration text that produced it, every check verdict, and an environment
stamp. Both round-trip losslessly through their readers.
"""

from __future__ import annotations

import dataclasses
import json
import platform
import sys

import numpy as np

from .analysis import TimeSeriesRecord
from .experiments import ScenarioResult, SuiteResult
from . import kernels

SCHEMA_VERSION = 1

CSV_COLUMNS = (
    "t",
    "mass_sq",
    "l2ma_pow",
    "h1",
    "h2",
    "linf",
    "mass_law_residual",
    "dtu_l2",
    "nls_energy",
)

__all__ = [
    "SCHEMA_VERSION",
    "CSV_COLUMNS",
    "write_timeseries_csv",
    "read_timeseries_csv",
    "environment_stamp",
    "build_report",
    "write_report_json",
    "read_report_json",
]


def _format(value: float | None) -> str:
    return "" if value is None else "%.17e" % value


def write_timeseries_csv(records: list[TimeSeriesRecord], path) -> None:
    lines = [",".join(CSV_COLUMNS)]
    for rec in records:
        lines.append(",".join(_format(getattr(rec, col)) for col in CSV_COLUMNS))
    try:
        with open(path, "w", encoding="ascii", newline="\n") as handle:
            handle.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write time series to {path}: {exc}") from None


def read_timeseries_csv(path) -> list[TimeSeriesRecord]:
    with open(path, "r", encoding="ascii") as handle:
        lines = [line.rstrip("\n") for line in handle if line.strip()]
    if not lines or lines[0] != ",".join(CSV_COLUMNS):
        raise ValueError(f"{path}: unexpected header")
    records = []
    for line in lines[1:]:
        cells = line.split(",")
        kwargs = {
            col: (None if cell == "" else float(cell))
            for col, cell in zip(CSV_COLUMNS, cells)
        }
        records.append(TimeSeriesRecord(**kwargs))
    return records


def environment_stamp() -> dict:
    return {
        "python": sys.version.split()[0],
        "platform": platform.platform(),
        "numpy": np.__version__,
        "float_precision": "binary64",
        "kernel_backend": kernels.BACKEND,
    }


_DROP = object()


def _sanitize(value):
    # strict-JSON projection: non-finite floats become null, non-JSON objects
    # (stashed fields and the like) are dropped
    if value is None or isinstance(value, (str, bool)):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if np.isfinite(value) else None
    if isinstance(value, dict):
        out = {}
        for key, item in value.items():
            clean = _sanitize(item)
            if clean is not _DROP:
                out[str(key)] = clean
        return out
    if isinstance(value, (list, tuple)):
        return [v for v in (_sanitize(item) for item in value) if v is not _DROP]
    return _DROP


def _scenario_payload(entry: ScenarioResult, series_file: str | None = None) -> dict:
    payload = {
        "name": entry.name,
        "passed": entry.passed,
        "duration_s": float(entry.duration_s),
        "error": entry.error,
        "n_records": len(entry.records),
        "checks": [
            {
                "name": c.name,
                "passed": c.passed,
                "value": None if _sanitize(c.value) is _DROP else _sanitize(c.value),
                "detail": c.detail,
            }
            for c in entry.checks
        ],
        "extinction": (
            _sanitize(dataclasses.asdict(entry.extinction)) if entry.extinction else None
        ),
        "extras": _sanitize(entry.extras),
    }
    if series_file is not None:
        payload["series_csv"] = series_file
    return payload


def build_report(
    suite: SuiteResult,
    config_text: str,
    name: str,
    environment: dict | None = None,
    series_files: dict[str, str] | None = None,
) -> dict:
    """Assemble the report document (a plain JSON-ready dict)."""
    series_files = series_files or {}
    scenarios = [
        _scenario_payload(entry, series_files.get(entry.name))
        for entry in suite.scenarios
    ]
    n_checks = sum(len(entry.checks) for entry in suite.scenarios)
    n_checks_failed = sum(
        1
        for entry in suite.scenarios
        for check in entry.checks
        if check.passed is False
    )
    return {
        "schema_version": SCHEMA_VERSION,
        "name": name,
        "config": config_text,
        "environment": environment if environment is not None else environment_stamp(),
        "scenarios": scenarios,
        "summary": {
            "n_scenarios": len(suite.scenarios),
            "n_scenarios_failed": suite.n_failed,
            "n_checks": n_checks,
            "n_checks_failed": n_checks_failed,
            "passed": suite.passed,
        },
    }


def write_report_json(document: dict, path) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            json.dump(document, handle, indent=2, sort_keys=True, allow_nan=False)
            handle.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from None


def read_report_json(path) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)
