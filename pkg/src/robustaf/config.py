"""
Human-editable experiment configuration.

The format is ``key = value`` lines (``#`` starts a comment). Top-level keys
describe the experiment; an optional ``[noise]`` section overrides fields of
the chosen noise preset and each ``[algorithm NAME]`` section declares one
algorithm. Example::

    scenario = fig7b
    runs = 50
    seed = 3

    [noise]
    imp_prob = 0.02

    [algorithm RGA]
    kind = RGA
    mu = 0.45
    alpha = -100
    beta = 2.1
    lam = 0.01

When ``scenario`` names a registry entry its settings are the defaults and
anything given in the file replaces them; algorithm sections, if present,
replace the whole algorithm list. Without ``scenario``, ``kind``, ``noise``
and at least one algorithm are required.
"""
from __future__ import annotations

import configparser
import dataclasses
import difflib
import math
import os
from dataclasses import dataclass, field

from .experiments import KERNEL_KINDS, AlgorithmSpec, SysIdScenario, TimeSeriesScenario, scenario_registry
from .linear import BASELINES
from .noise import PRESETS, preset

__all__ = ["ConfigError", "ExperimentConfig", "parse_config", "emit_config", "build_scenario", "SEED_ENV"]

SEED_ENV = "ROBUSTAF_SEED"
_ROOT = "experiment"

_INT_KEYS = ("L", "N", "runs", "seed", "flip_at", "order", "n_train", "n_test")
_STR_KEYS = ("scenario", "kind", "noise", "output", "format")
_TOP_KEYS = _STR_KEYS + _INT_KEYS

_KERNEL_PARAMS = {
    "KRNRGA": ("b", "beta", "lam", "gamma", "ald_threshold"),
    "KRLS": ("sigma", "gamma", "ald_threshold"),
    "KRGMCC": ("sigma", "alpha_g", "gamma", "ald_threshold"),
}


class ConfigError(ValueError):
    """Invalid configuration; ``line`` and ``field`` locate the problem when known."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(field)
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.field = field


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated experiment description; ``None`` means "take the scenario default"."""

    scenario: str | None = None
    kind: str | None = None
    noise: str | None = None
    noise_overrides: tuple = ()
    algorithms: tuple | None = None
    L: int | None = None
    N: int | None = None
    runs: int | None = None
    seed: int = 0
    flip_at: int | None = None
    order: int | None = None
    n_train: int | None = None
    n_test: int | None = None
    output: str = "results"
    format: str = "csv"
    seed_source: str = field(default="default", compare=False)

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes)


def _suggest(name: str, choices) -> str:
    hit = difflib.get_close_matches(name, list(choices), n=1)
    return f"; did you mean {hit[0]!r}?" if hit else f"; choose from {sorted(choices)}"


def _number(text: str, key: str, section: str):
    t = text.strip()
    if t.lower() == "none":
        return None
    try:
        return float(t)
    except ValueError:
        raise ConfigError(f"expected a number, got {text!r}", field=f"[{section}] {key}") from None


def _int(text: str, key: str):
    try:
        v = float(text)
    except ValueError:
        raise ConfigError(f"expected an integer, got {text!r}", field=key) from None
    if not (math.isfinite(v) and v == int(v)):
        raise ConfigError(f"expected an integer, got {text!r}", field=key)
    return int(v)


def _read(text: str) -> configparser.ConfigParser:
    cp = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=("#",), comment_prefixes=("#",), strict=True
    )
    cp.optionxform = str
    try:
        cp.read_string(f"[{_ROOT}]\n" + text)
    except configparser.DuplicateOptionError as exc:
        raise ConfigError(f"duplicate key {exc.option!r}", line=exc.lineno - 1) from None
    except configparser.DuplicateSectionError as exc:
        raise ConfigError(f"duplicate section [{exc.section}]", line=(exc.lineno or 1) - 1) from None
    except configparser.ParsingError as exc:
        lineno, line = exc.errors[0]
        raise ConfigError(f"cannot parse {line!r}", line=lineno - 1) from None
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None
    return cp


def _parse_algorithm(section: str, items: dict) -> AlgorithmSpec:
    name = section[len("algorithm"):].strip()
    if not name:
        raise ConfigError("algorithm section needs a name, e.g. [algorithm RGA]", field=f"[{section}]")
    items = dict(items)
    kind = items.pop("kind", name).strip().upper()
    if kind in KERNEL_KINDS:
        allowed = _KERNEL_PARAMS[kind]
    elif kind in BASELINES:
        allowed = ("mu",) + BASELINES[kind][1]
    else:
        raise ConfigError(f"unknown algorithm kind {kind!r}" + _suggest(kind, list(BASELINES) + list(KERNEL_KINDS)),
                          field=f"[{section}] kind")
    for key in items:
        if key not in allowed:
            raise ConfigError(f"unknown key for {kind}" + _suggest(key, allowed), field=f"[{section}] {key}")
    values = {k: _number(v, k, section) for k, v in items.items()}
    mu = values.pop("mu", None)
    try:
        spec = AlgorithmSpec(name, kind, mu, values)
        if spec.is_kernel:
            spec.build(1)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc), field=f"[{section}]") from None
    return spec


def parse_config(text: str, env: dict | None = None) -> ExperimentConfig:
    """Parse and validate a configuration text.

    The seed falls back to the ``ROBUSTAF_SEED`` environment variable and
    then to 0 when the text does not set it.

    Raises
    ------
    ConfigError
        Syntax errors (with the line number), unknown keys or names (with a
        suggestion) and range violations (with the field name).
    """
    cp = _read(text)
    top = dict(cp[_ROOT])
    for key in top:
        if key not in _TOP_KEYS:
            raise ConfigError("unknown key" + _suggest(key, _TOP_KEYS), field=key)
    kw = {}
    for key in _STR_KEYS:
        if key in top:
            kw[key] = top[key].strip()
    for key in _INT_KEYS:
        if key in top:
            kw[key] = _int(top[key], key)
    env = os.environ if env is None else env
    if "seed" in kw:
        kw["seed_source"] = "config"
    elif env.get(SEED_ENV, "").strip():
        kw["seed"] = _int(env[SEED_ENV], SEED_ENV)
        kw["seed_source"] = "env"
    overrides = ()
    algorithms = []
    for section in cp.sections():
        if section == _ROOT:
            continue
        if section == "noise":
            overrides = tuple((k, _number(v, k, "noise")) for k, v in cp[section].items())
        elif section.startswith("algorithm"):
            algorithms.append(_parse_algorithm(section, cp[section]))
        else:
            raise ConfigError("unknown section" + _suggest(section, ["noise", "algorithm NAME"]), field=f"[{section}]")
    if algorithms:
        names = [a.name for a in algorithms]
        if len(set(names)) != len(names):
            raise ConfigError("algorithm names must be unique", field="[algorithm]")
        kw["algorithms"] = tuple(algorithms)
    kw["noise_overrides"] = overrides
    cfg = ExperimentConfig(**kw)
    validate(cfg)
    return cfg


def validate(cfg: ExperimentConfig) -> None:
    """Range- and name-check ``cfg`` by building the scenario it describes."""
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"must be 'csv' or 'json', got {cfg.format!r}", field="format")
    if cfg.kind is not None and cfg.kind not in ("sysid", "timeseries"):
        raise ConfigError(f"must be 'sysid' or 'timeseries', got {cfg.kind!r}", field="kind")
    for key in ("L", "N", "runs", "order", "n_train", "n_test"):
        v = getattr(cfg, key)
        if v is not None and v < 1:
            raise ConfigError("must be >= 1", field=key)
    if cfg.seed < 0:
        raise ConfigError("must be >= 0", field="seed")
    build_scenario(cfg)


def build_scenario(cfg: ExperimentConfig):
    """Materialize the scenario object described by ``cfg``."""
    reg = scenario_registry()
    base = None
    if cfg.scenario is not None:
        if cfg.scenario not in reg:
            raise ConfigError(f"unknown scenario {cfg.scenario!r}" + _suggest(cfg.scenario, reg), field="scenario")
        base = reg[cfg.scenario]
    kind = cfg.kind or (base.kind if base is not None else None)
    if kind is None:
        raise ConfigError("either 'scenario' or 'kind' must be given", field="kind")
    if base is not None and base.kind != kind:
        raise ConfigError(f"scenario {cfg.scenario!r} is of kind {base.kind!r}", field="kind")
    if cfg.noise is not None:
        if cfg.noise not in PRESETS:
            raise ConfigError(f"unknown noise {cfg.noise!r}" + _suggest(cfg.noise, PRESETS), field="noise")
        noise = PRESETS[cfg.noise]
    elif base is not None:
        noise = base.noise
    else:
        raise ConfigError("required when no scenario is given", field="noise")
    if cfg.noise_overrides:
        fields = {f.name for f in dataclasses.fields(noise)}
        for k, _ in cfg.noise_overrides:
            if k not in fields:
                raise ConfigError(f"unknown field for {noise.kind} noise" + _suggest(k, fields), field=f"[noise] {k}")
        try:
            noise = noise.replace(**dict(cfg.noise_overrides))
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc), field="[noise]") from None
    algorithms = cfg.algorithms if cfg.algorithms is not None else (base.algorithms if base is not None else None)
    if not algorithms:
        raise ConfigError("at least one [algorithm NAME] section is required", field="[algorithm]")
    name = cfg.scenario or "custom"
    try:
        if kind == "sysid":
            if any(x is not None for x in (cfg.order, cfg.n_train, cfg.n_test)):
                raise ConfigError("order/n_train/n_test apply to timeseries scenarios only", field="kind")
            s = base if base is not None else SysIdScenario(name, noise, tuple(algorithms))
            changes = {"noise": noise, "algorithms": tuple(algorithms)}
            for key in ("L", "N", "runs", "flip_at"):
                if getattr(cfg, key) is not None:
                    changes[key] = getattr(cfg, key)
        else:
            if any(x is not None for x in (cfg.L, cfg.N, cfg.flip_at)):
                raise ConfigError("L/N/flip_at apply to sysid scenarios only", field="kind")
            s = base if base is not None else TimeSeriesScenario(name, noise, tuple(algorithms))
            changes = {"noise": noise, "algorithms": tuple(algorithms)}
            for key in ("runs", "order", "n_train", "n_test"):
                if getattr(cfg, key) is not None:
                    changes[key] = getattr(cfg, key)
        return s.replace(**changes)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _fmt(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def emit_config(cfg: ExperimentConfig) -> str:
    """Serialize ``cfg`` so that ``parse_config(emit_config(cfg)) == cfg``."""
    lines = []
    for key in _TOP_KEYS:
        v = getattr(cfg, key)
        if v is not None:
            lines.append(f"{key} = {v}")
    if cfg.noise_overrides:
        lines += ["", "[noise]"] + [f"{k} = {_fmt(v)}" for k, v in cfg.noise_overrides]
    for a in cfg.algorithms or ():
        lines += ["", f"[algorithm {a.name}]", f"kind = {a.kind}"]
        if a.mu is not None:
            lines.append(f"mu = {_fmt(float(a.mu))}")
        lines += [f"{k} = {_fmt(None if v is None else float(v))}" for k, v in a.params.items()]
    return "\n".join(lines) + "\n"
