"""Command-line entry point.

Subcommands:
  run         one scenario from a config file
  suite       several scenarios from a suite config file
  nash-bench  empirical interpolation-constant ensembles
  ode-oracle  closed-form / high-accuracy scalar decay values
  sweep       delta or gamma parameter sweeps

Every simulating subcommand writes one CSV per scenario plus a report.json
into the output directory; the exit status is 0 only when every asserted
check passed.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import experiments, reporting
from .config import parse_config_file
from .errors import ConfigError
from .experiments import SuiteResult, run_suite

logger = logging.getLogger(__name__)


def _add_verbosity(parser):
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings only")


def _setup_logging(args):
    level = logging.INFO
    if getattr(args, "verbose", False):
        level = logging.DEBUG
    elif getattr(args, "quiet", False):
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(","))


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(","))


def _emit(suite: SuiteResult, out_dir: Path, config_text: str, name: str) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    series_files = {}
    for entry in suite.scenarios:
        if entry.records:
            filename = f"{entry.name}.csv"
            reporting.write_timeseries_csv(entry.records, out_dir / filename)
            series_files[entry.name] = filename
    document = reporting.build_report(
        suite, config_text, name, series_files=series_files
    )
    reporting.write_report_json(document, out_dir / "report.json")
    for entry in suite.scenarios:
        status = "PASS" if entry.passed else "FAIL"
        print(f"[{status}] {entry.name} ({entry.duration_s:.2f} s)")
        for check in entry.checks:
            verdict = {True: "ok", False: "FAILED", None: "reported"}[check.passed]
            value = "" if check.value is None else f" value={check.value:.6g}"
            print(f"    {check.name}: {verdict}{value}")
        if entry.error:
            print(f"    error: {entry.error.splitlines()[-1]}")
    print(f"report: {out_dir / 'report.json'}")
    return 0 if suite.passed else 1


def _cmd_run(args) -> int:
    config = parse_config_file(args.config)
    if config.is_suite:
        raise ConfigError("this is a suite configuration; use the 'suite' subcommand")
    suite = run_suite(config.jobs, threads=config.threads)
    return _emit(suite, Path(args.out), config.raw_text, config.name)


def _cmd_suite(args) -> int:
    config = parse_config_file(args.config)
    threads = args.threads if args.threads else config.threads
    suite = run_suite(config.jobs, threads=threads)
    return _emit(suite, Path(args.out), config.raw_text, config.name)


def _cmd_nash_bench(args) -> int:
    result = experiments.scenario_nash_ensemble(
        count=args.count,
        seed=args.seed,
        alphas=args.alphas,
        orders=args.orders,
        dims=args.dims,
    )
    suite = SuiteResult(scenarios=[result])
    config_echo = (
        f"# nash-bench count={args.count} seed={args.seed} "
        f"alphas={args.alphas} orders={args.orders} dims={args.dims}\n"
    )
    return _emit(suite, Path(args.out), config_echo, "nash_bench")


def _cmd_ode_oracle(args) -> int:
    from . import oracles

    if args.delta > 0.0:
        value = oracles.ode_oracle_regularized(
            args.y0, args.alpha, args.gamma, args.delta, args.t
        )
    else:
        value = oracles.ode_oracle_exact(args.y0, args.alpha, args.gamma, args.t)
    print(repr(float(value)))
    return 0


def _cmd_sweep(args) -> int:
    if args.param == "delta":
        results = experiments.scenario_regularized_sweep(
            deltas=args.values, alpha=args.alpha, gamma=args.gamma, dt=args.dt
        )
        name = "delta_sweep"
    else:
        results = experiments.scenario_gamma_scaling(
            gammas=args.values, alpha=args.alpha, dt=args.dt
        )
        name = "gamma_sweep"
    suite = SuiteResult(scenarios=results)
    config_echo = (
        f"# sweep param={args.param} values={list(args.values)} "
        f"alpha={args.alpha} gamma={args.gamma} dt={args.dt}\n"
    )
    return _emit(suite, Path(args.out), config_echo, name)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torusdamp",
        description="Damped Schrodinger dynamics on flat tori: simulation and verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one scenario from a config file")
    run_p.add_argument("--config", required=True)
    run_p.add_argument("--out", default="out")
    _add_verbosity(run_p)
    run_p.set_defaults(func=_cmd_run)

    suite_p = sub.add_parser("suite", help="run a suite of scenarios")
    suite_p.add_argument("--config", required=True)
    suite_p.add_argument("--out", default="out")
    suite_p.add_argument("--threads", type=int, default=0, help="override [suite] threads")
    _add_verbosity(suite_p)
    suite_p.set_defaults(func=_cmd_suite)

    nash_p = sub.add_parser("nash-bench", help="interpolation-constant ensembles")
    nash_p.add_argument("--count", type=int, default=50)
    nash_p.add_argument("--seed", type=int, default=7)
    nash_p.add_argument("--alphas", type=_float_list, default=(0.5, 1.0))
    nash_p.add_argument("--orders", type=_int_list, default=(1, 2))
    nash_p.add_argument("--dims", type=_int_list, default=(1, 2))
    nash_p.add_argument("--out", default="out")
    _add_verbosity(nash_p)
    nash_p.set_defaults(func=_cmd_nash_bench)

    ode_p = sub.add_parser("ode-oracle", help="print scalar decay oracle values")
    ode_p.add_argument("--y0", type=float, required=True)
    ode_p.add_argument("--alpha", type=float, required=True)
    ode_p.add_argument("--gamma", type=float, required=True)
    ode_p.add_argument("--t", type=float, required=True)
    ode_p.add_argument("--delta", type=float, default=0.0)
    ode_p.set_defaults(func=_cmd_ode_oracle)

    sweep_p = sub.add_parser("sweep", help="delta or gamma sweeps")
    sweep_p.add_argument("--param", choices=("delta", "gamma"), required=True)
    sweep_p.add_argument("--values", type=_float_list, required=True)
    sweep_p.add_argument("--alpha", type=float, default=1.0)
    sweep_p.add_argument("--gamma", type=float, default=1.0)
    sweep_p.add_argument("--dt", type=float, default=1e-3)
    sweep_p.add_argument("--out", default="out")
    _add_verbosity(sweep_p)
    sweep_p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
