"""Line-oriented `key = value` configuration with [section] headers.

Two layouts are accepted:

* single scenario: a [scenario] section with a named `kind` plus overrides,
  or the full custom layout with [grid]/[damping]/[nls]/[scheme]/[initial]/
  [run] sections;
* suite: a [suite] section followed by one `[scenario <label>]` section per
  entry, each holding a `kind` and overrides.

Unknown sections or keys are rejected with the offending line number. All
physical parameters are in the dimensionless units of the equations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import experiments
from .dynamics import DampingParams, NlsParams, StepScheme
from .errors import ConfigError
from .experiments import InitialSpec, Scenario

__all__ = ["RunConfig", "parse_config", "parse_config_file"]


@dataclass
class RunConfig:
    """Parsed configuration: named jobs ready for `experiments.run_suite`."""

    name: str
    jobs: list[tuple[str, Callable]]
    threads: int
    raw_text: str
    is_suite: bool


def _parse_ini(text: str) -> dict[str, dict[str, tuple[str, int]]]:
    sections: dict[str, dict[str, tuple[str, int]]] = {}
    current: dict[str, tuple[str, int]] | None = None
    current_name = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith(";"):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"line {lineno}: malformed section header {line!r}")
            name = line[1:-1].strip()
            if not name:
                raise ConfigError(f"line {lineno}: empty section name")
            if name in sections:
                raise ConfigError(f"line {lineno}: duplicate section [{name}]")
            current = {}
            current_name = name
            sections[name] = current
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        if current is None:
            raise ConfigError(f"line {lineno}: key outside any [section]")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in current:
            raise ConfigError(
                f"line {lineno}: duplicate key '{key}' in section [{current_name}]"
            )
        current[key] = (value, lineno)
    return sections


def _convert(kind: str, key: str, value: str, lineno: int):
    try:
        if kind == "int":
            return int(value)
        if kind == "float":
            return float(value)
        if kind == "bool":
            lowered = value.lower()
            if lowered in ("true", "yes", "on", "1"):
                return True
            if lowered in ("false", "no", "off", "0"):
                return False
            raise ValueError(f"not a boolean: {value!r}")
        if kind == "str":
            return value
        if kind == "int_list":
            return tuple(int(v.strip()) for v in value.split(","))
        if kind == "float_list":
            return tuple(float(v.strip()) for v in value.split(","))
        if kind == "str_list":
            return tuple(v.strip() for v in value.split(",") if v.strip())
    except ValueError as exc:
        raise ConfigError(f"line {lineno}: key '{key}': {exc}") from None
    raise AssertionError(f"unknown schema type {kind}")


def _read_section(sections, name, schema, *, required=()):
    raw = sections.get(name, {})
    out = {}
    for key, (value, lineno) in raw.items():
        if key not in schema:
            raise ConfigError(f"line {lineno}: unknown key '{key}' in section [{name}]")
        out[key] = _convert(schema[key], key, value, lineno)
    for key in required:
        if key not in out:
            raise ConfigError(f"section [{name}] is missing required key '{key}'")
    return out


def _line_of(sections, name, key, default=0):
    entry = sections.get(name, {}).get(key)
    return entry[1] if entry else default


_CUSTOM_SCHEMA = {
    "grid": {"dim": "int", "points": "int_list", "lengths": "float_list"},
    "damping": {"gamma": "float", "alpha": "float", "delta": "float"},
    "nls": {"enabled": "bool", "lambda": "float", "sigma": "float"},
    "scheme": {"dt": "float", "splitting": "str", "substeps": "str"},
    "initial": {
        "kind": "str",
        "amplitude": "float",
        "mode": "int_list",
        "seed": "int",
        "decay": "float",
        "band_limit": "int",
        "path": "str",
    },
    "run": {
        "name": "str",
        "t_max": "float",
        "record_every": "int",
        "checks": "str_list",
        "threads": "int",
        "compute_dtu": "bool",
        "mass_floor_frac": "float",
    },
}

_CUSTOM_SECTIONS = set(_CUSTOM_SCHEMA)

_COMMON_OVERRIDES = {
    "seed": "int",
    "alpha": "float",
    "gamma": "float",
    "dt": "float",
    "t_max": "float",
}

_KIND_SCHEMAS: dict[str, dict[str, str]] = {
    "extinction_1d": {
        **_COMMON_OVERRIDES,
        "points": "int",
        "initial_kind": "str",
        "amplitude": "float",
    },
    "extinction_2d": {**_COMMON_OVERRIDES, "exploratory_h1": "bool"},
    "extinction_3d": {**_COMMON_OVERRIDES, "exploratory_h1": "bool"},
    "regularized_sweep": {
        "deltas": "float_list",
        "alpha": "float",
        "gamma": "float",
        "dt": "float",
        "seed": "int",
        "initial_kind": "str",
    },
    "delta_convergence": {**_COMMON_OVERRIDES, "deltas": "float_list"},
    "nls_corollary": {**_COMMON_OVERRIDES, "lambda": "float", "sigma": "float"},
    "nash_ensemble": {
        "count": "int",
        "seed": "int",
        "alphas": "float_list",
        "orders": "int_list",
        "dims": "int_list",
    },
    "gamma_scaling": {"gammas": "float_list", "alpha": "float", "dt": "float"},
}

_KIND_BUILDERS: dict[str, Callable] = {
    "extinction_1d": experiments.scenario_extinction_1d,
    "extinction_2d": lambda **kw: experiments.scenario_extinction_23d(2, **kw),
    "extinction_3d": lambda **kw: experiments.scenario_extinction_23d(3, **kw),
    "regularized_sweep": experiments.scenario_regularized_sweep,
    "delta_convergence": experiments.scenario_delta_convergence,
    "nls_corollary": experiments.scenario_nls_corollary,
    "nash_ensemble": experiments.scenario_nash_ensemble,
    "gamma_scaling": lambda **kw: experiments.scenario_gamma_scaling(**kw),
}

_KIND_RENAMES = {"lambda": "lam"}

# builders returning several results take no `name` keyword
_MULTI_KINDS = {
    "regularized_sweep",
    "delta_convergence",
    "nash_ensemble",
    "gamma_scaling",
}


def _validate_overrides(kind, overrides, sections, section_name):
    alpha = overrides.get("alpha")
    if alpha is not None and not 0.0 < alpha <= 1.0:
        raise ConfigError(
            f"line {_line_of(sections, section_name, 'alpha')}: "
            f"key 'alpha': must lie in (0, 1], got {alpha}"
        )
    gamma = overrides.get("gamma")
    if gamma is not None and not gamma > 0.0:
        raise ConfigError(
            f"line {_line_of(sections, section_name, 'gamma')}: "
            f"key 'gamma': must be positive, got {gamma}"
        )
    if kind == "nls_corollary":
        lam = overrides.get("lambda", 0.0)
        sigma = overrides.get("sigma", 1.0)
        if lam < 0.0 and sigma >= 2.0:
            raise ConfigError(
                f"line {_line_of(sections, section_name, 'sigma')}: "
                f"key 'sigma': lambda < 0 requires sigma < 2, got sigma={sigma}"
            )


def _kind_job(kind, overrides, label):
    builder = _KIND_BUILDERS[kind]
    kwargs = {_KIND_RENAMES.get(k, k): v for k, v in overrides.items()}
    if kind == "nls_corollary" and "lam" not in kwargs:
        raise ConfigError(f"scenario '{label}': nls_corollary requires 'lambda'")
    return lambda: builder(**kwargs)


def _build_custom_scenario(sections) -> Scenario:
    grid_conf = _read_section(sections, "grid", _CUSTOM_SCHEMA["grid"], required=("dim",))
    damping_conf = _read_section(
        sections, "damping", _CUSTOM_SCHEMA["damping"], required=("gamma", "alpha")
    )
    nls_conf = _read_section(sections, "nls", _CUSTOM_SCHEMA["nls"])
    scheme_conf = _read_section(sections, "scheme", _CUSTOM_SCHEMA["scheme"])
    initial_conf = _read_section(sections, "initial", _CUSTOM_SCHEMA["initial"])
    run_conf = _read_section(sections, "run", _CUSTOM_SCHEMA["run"])

    try:
        damping = DampingParams(
            gamma=damping_conf["gamma"],
            alpha=damping_conf["alpha"],
            delta=damping_conf.get("delta", 0.0),
        )
    except ConfigError as exc:
        raise ConfigError(
            f"line {_line_of(sections, 'damping', 'alpha')}: [damping]: {exc}"
        ) from None
    try:
        nls = NlsParams(
            lam=nls_conf.get("lambda", 0.0),
            sigma=nls_conf.get("sigma", 1.0),
            enabled=nls_conf.get("enabled", False),
        )
    except ConfigError as exc:
        raise ConfigError(
            f"line {_line_of(sections, 'nls', 'sigma')}: [nls]: {exc}"
        ) from None

    substeps_raw = scheme_conf.get("substeps", "adaptive")
    substeps: str | int = substeps_raw
    if substeps_raw != "adaptive":
        try:
            substeps = int(substeps_raw)
        except ValueError:
            raise ConfigError(
                f"line {_line_of(sections, 'scheme', 'substeps')}: key 'substeps': "
                f"must be 'adaptive' or a positive integer, got {substeps_raw!r}"
            ) from None
    scheme = StepScheme(
        dt=scheme_conf.get("dt", 1e-3),
        splitting=scheme_conf.get("splitting", "strang"),
        substeps=substeps,
    )

    initial_kwargs = dict(initial_conf)
    if "kind" not in initial_kwargs:
        initial_kwargs["kind"] = "constant"
    initial = InitialSpec(**initial_kwargs)

    return Scenario(
        name=run_conf.get("name", "run"),
        dim=grid_conf["dim"],
        points=grid_conf.get("points"),
        lengths=grid_conf.get("lengths"),
        damping=damping,
        nls=nls,
        scheme=scheme,
        t_max=run_conf.get("t_max", 10.0 / damping.gamma),
        initial=initial,
        cadence=run_conf.get("record_every", 10),
        checks=run_conf.get("checks", ("mass_monotone",)),
        compute_dtu=run_conf.get("compute_dtu", False),
        mass_floor_frac=run_conf.get("mass_floor_frac"),
    )


def parse_config(text: str) -> RunConfig:
    """Parse and fully validate a configuration document."""
    sections = _parse_ini(text)
    scenario_sections = [s for s in sections if s == "scenario" or s.startswith("scenario ")]

    if "suite" in sections:
        suite_conf = _read_section(
            sections, "suite", {"name": "str", "threads": "int", "scenarios": "str_list"}
        )
        jobs = []
        known = set(("suite",)) | set(scenario_sections)
        for name in sections:
            if name not in known:
                raise ConfigError(f"unknown section [{name}] in a suite configuration")
        for sec_name in scenario_sections:
            label = sec_name[len("scenario") :].strip() or "scenario"
            raw = sections[sec_name]
            if "kind" not in raw:
                raise ConfigError(f"section [{sec_name}] is missing required key 'kind'")
            kind = raw["kind"][0]
            if kind not in _KIND_SCHEMAS:
                raise ConfigError(
                    f"line {raw['kind'][1]}: unknown scenario kind {kind!r}"
                )
            schema = dict(_KIND_SCHEMAS[kind], kind="str", name="str")
            conf = _read_section(sections, sec_name, schema)
            conf.pop("kind")
            if kind in _MULTI_KINDS:
                conf.pop("name", None)
            else:
                conf.setdefault("name", label)
            _validate_overrides(kind, conf, sections, sec_name)
            jobs.append((label, _kind_job(kind, conf, label)))
        if not jobs and suite_conf.get("scenarios"):
            raise ConfigError("suite lists scenarios but defines no [scenario ...] sections")
        return RunConfig(
            name=suite_conf.get("name", "suite"),
            jobs=jobs,
            threads=suite_conf.get("threads", 1),
            raw_text=text,
            is_suite=True,
        )

    if "scenario" in sections and "kind" in sections["scenario"]:
        raw = sections["scenario"]
        kind = raw["kind"][0]
        if kind not in _KIND_SCHEMAS:
            raise ConfigError(f"line {raw['kind'][1]}: unknown scenario kind {kind!r}")
        schema = dict(_KIND_SCHEMAS[kind], kind="str", name="str")
        conf = _read_section(sections, "scenario", schema)
        conf.pop("kind")
        label = conf.get("name", kind)
        if kind in _MULTI_KINDS:
            conf.pop("name", None)
        _validate_overrides(kind, conf, sections, "scenario")
        return RunConfig(
            name=label,
            jobs=[(label, _kind_job(kind, conf, label))],
            threads=1,
            raw_text=text,
            is_suite=False,
        )

    unknown = set(sections) - _CUSTOM_SECTIONS
    if unknown:
        raise ConfigError(f"unknown sections {sorted(unknown)}")
    if "grid" not in sections or "damping" not in sections:
        raise ConfigError("a run configuration needs at least [grid] and [damping]")
    scenario = _build_custom_scenario(sections)
    threads = _read_section(sections, "run", _CUSTOM_SCHEMA["run"]).get("threads", 1)
    return RunConfig(
        name=scenario.name,
        jobs=[(scenario.name, lambda: experiments.run_scenario(scenario))],
        threads=threads,
        raw_text=text,
        is_suite=False,
    )


def parse_config_file(path) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    return parse_config(text)
