"""
Command-line interface.

Subcommands::

    robustaf run <config-file | scenario-name> [--runs R] [--seed S] [--output DIR] [--format csv|json]
    robustaf list-scenarios
    robustaf theory <L> <mu> <lambda> <sigma_v2> [--trace-rx T]
    robustaf chua-gen [config-file] [--samples N] [--output PATH]

Exit status: 0 success, 2 configuration or usage error, 3 I/O error,
4 runtime (numerical) failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .chua import ChuaIntegrationError, ChuaParams, chua_series, write_series_csv
from .config import SEED_ENV, ConfigError, ExperimentConfig, build_scenario, emit_config, parse_config
from .experiments import OutOfRegimeError, predict_steady_state_msd, run_scenario, scenario_registry, write_trace

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_RUNTIME = 0, 2, 3, 4
FULL_SCALE_RUNS = 1000

log = logging.getLogger("robustaf")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="robustaf", description="Robust adaptive filtering experiments.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="run a named scenario or a configuration file")
    r.add_argument("target", help="scenario name (see list-scenarios) or path to a configuration file")
    r.add_argument("--runs", type=int, help="Monte Carlo runs (seeds for time-series scenarios)")
    r.add_argument("--full-scale", action="store_true", help=f"use {FULL_SCALE_RUNS} Monte Carlo runs")
    r.add_argument("--seed", type=int, help=f"master seed (default: config, then ${SEED_ENV}, then 0)")
    r.add_argument("--output", help="output directory")
    r.add_argument("--format", choices=("csv", "json"))

    sub.add_parser("list-scenarios", help="print the scenario registry")

    t = sub.add_parser("theory", help="closed-form steady-state MSD and stability bound")
    t.add_argument("L", type=int)
    t.add_argument("mu", type=float)
    t.add_argument("lam", metavar="lambda", type=float)
    t.add_argument("sigma_v2", type=float)
    t.add_argument("--trace-rx", type=float, help="trace of the input covariance (default: L)")

    c = sub.add_parser("chua-gen", help="export a raw Chua voltage series as CSV")
    c.add_argument("config", nargs="?", help="optional key = value file with series settings")
    c.add_argument("--samples", type=int, help="number of samples (default 3105)")
    c.add_argument("--output", help="CSV path (default chua.csv)")
    return p


def _load_config(target: str) -> ExperimentConfig:
    path = Path(target)
    if path.is_file():
        try:
            text = path.read_text()
        except OSError as exc:
            raise OSError(f"cannot read {target}: {exc.strerror}") from exc
        return parse_config(text)
    if target in scenario_registry():
        return parse_config(f"scenario = {target}\n")
    if path.suffix or os.sep in target:
        raise OSError(f"configuration file {target!r} not found")
    return parse_config(f"scenario = {target}\n")


def _cmd_run(args) -> int:
    cfg = _load_config(args.target)
    changes = {}
    if args.full_scale:
        changes["runs"] = FULL_SCALE_RUNS
    if args.runs is not None:
        changes["runs"] = args.runs
    if args.seed is not None:
        changes["seed"] = args.seed
        changes["seed_source"] = "flag"
    if args.output is not None:
        changes["output"] = args.output
    if args.format is not None:
        changes["format"] = args.format
    if changes:
        cfg = cfg.replace(**changes)
        if cfg.runs is not None and cfg.runs < 1:
            raise ConfigError("must be >= 1", field="runs")
        if cfg.seed < 0:
            raise ConfigError("must be >= 0", field="seed")
    scenario = build_scenario(cfg)
    log.info("running %s with seed %d (%s)", scenario.name, cfg.seed, cfg.seed_source)
    trace = run_scenario(scenario, cfg.seed)
    out = Path(cfg.output)
    meta = trace.metadata()
    meta["config"] = emit_config(cfg)
    meta["seed_source"] = cfg.seed_source
    if cfg.format == "csv":
        csv_path, json_path = write_trace(trace, out)
        json_path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
        print(csv_path)
        print(json_path)
    else:
        out.mkdir(parents=True, exist_ok=True)
        json_path = out / f"{scenario.name}.json"
        meta["columns"] = list(trace.csv_header)
        meta["rows"] = [list(r) for r in trace.rows()]
        json_path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
        print(json_path)
    return EXIT_OK


def _cmd_list(args) -> int:
    for name, s in scenario_registry().items():
        print(f"{name}\t{s.kind}\t{s.description}")
    return EXIT_OK


def _cmd_theory(args) -> int:
    try:
        t = predict_steady_state_msd(args.L, args.mu, args.lam, args.sigma_v2, args.trace_rx)
    except OutOfRegimeError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    print(f"eta = {t.eta!r}")
    print(f"msd = {t.msd:.6f}")
    print(f"msd_db = {t.msd_db:.4f}")
    print(f"eta_max = {t.eta_max!r}")
    print(f"mu_max = {t.mu_max!r}")
    return EXIT_OK


_CHUA_KEYS = {"samples": int, "h": float, "sample_every": int, "transient": int, "output": str,
              "c1": float, "c2": float, "r": float, "l_ind": float, "m0": float, "m1": float, "bp": float,
              "variant": str, "u1": float, "u2": float, "il": float}


def _parse_chua(text: str) -> dict:
    import configparser

    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    cp.optionxform = str
    try:
        cp.read_string("[chua]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None
    if len(cp.sections()) != 1:
        raise ConfigError("chua-gen configuration takes no sections")
    out = {}
    for k, v in cp["chua"].items():
        if k not in _CHUA_KEYS:
            raise ConfigError("unknown key; accepted: " + ", ".join(_CHUA_KEYS), field=k)
        try:
            out[k] = _CHUA_KEYS[k](v.strip())
        except ValueError:
            raise ConfigError(f"bad value {v!r}", field=k) from None
    return out


def _cmd_chua(args) -> int:
    opts = {}
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise OSError(f"cannot read {args.config}: {exc.strerror}") from exc
        opts = _parse_chua(text)
    if args.samples is not None:
        opts["samples"] = args.samples
    if args.output is not None:
        opts["output"] = args.output
    n = opts.pop("samples", 3105)
    if n < 1:
        raise ConfigError("must be >= 1", field="samples")
    output = opts.pop("output", "chua.csv")
    state0 = (opts.pop("u1", 0.1), opts.pop("u2", 0.0), opts.pop("il", 0.0))
    kw = {k: opts.pop(k) for k in ("h", "sample_every", "transient") if k in opts}
    try:
        params = ChuaParams(**opts)
        series = chua_series(n, params, state0, **kw)
    except ChuaIntegrationError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    Path(output).parent.mkdir(parents=True, exist_ok=True)
    write_series_csv(output, series)
    print(output)
    return EXIT_OK


_COMMANDS = {"run": _cmd_run, "list-scenarios": _cmd_list, "theory": _cmd_theory, "chua-gen": _cmd_chua}


def run_cli(argv=None) -> int:
    """Entry point; returns the process exit status."""
    try:
        args = _parser().parse_args(argv)
    except ConfigError as exc:
        print(f"robustaf: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, KeyError) as exc:
        print(f"robustaf: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OutOfRegimeError as exc:
        print(f"robustaf: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"robustaf: io error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ArithmeticError, RuntimeError, ValueError) as exc:
        print(f"robustaf: runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def main() -> None:
    sys.exit(run_cli())
