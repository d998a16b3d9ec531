import csv
import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from robustaf.cli import EXIT_CONFIG, EXIT_IO, EXIT_OK, run_cli
from robustaf.config import SEED_ENV, ConfigError, build_scenario, emit_config, parse_config
from robustaf.experiments import AlgorithmSpec, predict_steady_state_msd, scenario_registry
from robustaf.noise import PRESETS


def test_named_scenario_defaults():
    cfg = parse_config("scenario = fig7a\n", env={})
    s = build_scenario(cfg)
    assert s.noise == PRESETS["noise1"]
    assert (s.L, s.N) == (9, 5000)
    assert s.algorithms == scenario_registry()["fig7a"].algorithms
    assert cfg.seed == 0 and cfg.seed_source == "default"
    assert "seed = 0" in emit_config(cfg)


def test_seed_priority():
    assert parse_config("scenario = fig6\n", env={SEED_ENV: "11"}).seed == 11
    cfg = parse_config("scenario = fig6\nseed = 4\n", env={SEED_ENV: "11"})
    assert (cfg.seed, cfg.seed_source) == (4, "config")


def test_range_violation_names_field():
    text = "scenario = fig6\n[algorithm R]\nkind = RGA\nmu = 0.1\nalpha = -100\nbeta = -1\nlam = 0.1\n"
    with pytest.raises(ConfigError, match="beta"):
        parse_config(text, env={})
    with pytest.raises(ConfigError, match="runs"):
        parse_config("scenario = fig6\nruns = 0\n", env={})


def test_unknown_names_get_suggestions():
    with pytest.raises(ConfigError, match="did you mean 'runs'"):
        parse_config("scenario = fig6\nrnus = 3\n", env={})
    with pytest.raises(ConfigError, match="did you mean 'fig7a'"):
        parse_config("scenario = fig7aa\n", env={})
    with pytest.raises(ConfigError, match="did you mean 'noise2'"):
        parse_config("scenario = fig6\nnoise = noise22\n", env={})
    with pytest.raises(ConfigError, match="did you mean 'RGA'"):
        parse_config("scenario = fig6\n[algorithm X]\nkind = RGB\nmu = 0.1\n", env={})
    with pytest.raises(ConfigError, match="did you mean 'lam'"):
        parse_config("scenario = fig6\n[algorithm X]\nkind = RGA\nmu = 0.1\nalpha = -1\nbeta = 2\nlamb = 1\n", env={})
    with pytest.raises(ConfigError, match="imp_prob"):
        parse_config("scenario = fig7b\n[noise]\nimp_porb = 0.1\n", env={})


def test_syntax_error_has_line_number():
    with pytest.raises(ConfigError) as info:
        parse_config("scenario = fig6\nruns = 3\nthis line is broken\n", env={})
    assert info.value.line == 3
    assert "line 3" in str(info.value)


def test_inline_definition():
    text = """
kind = sysid
noise = noise2
L = 4
N = 100
runs = 2

[noise]
imp_prob = 0.2

[algorithm mine]
kind = RGA
mu = 0.3
alpha = -100
beta = 2
lam = 0.01
"""
    s = build_scenario(parse_config(text, env={}))
    assert s.noise.imp_prob == 0.2
    assert (s.L, s.N, s.runs) == (4, 100, 2)
    assert s.algorithms == (AlgorithmSpec("mine", "RGA", 0.3, {"alpha": -100.0, "beta": 2.0, "lam": 0.01}),)
    with pytest.raises(ConfigError, match="algorithm"):
        parse_config("kind = sysid\nnoise = noise1\n", env={})
    with pytest.raises(ConfigError):
        parse_config("scenario = fig13a\nL = 4\n", env={})


_names = st.sampled_from(sorted(scenario_registry()))
_pos_int = st.one_of(st.none(), st.integers(1, 10_000))


@settings(max_examples=40, deadline=None)
@given(_names, _pos_int, st.integers(0, 2**31), st.sampled_from(["csv", "json"]),
       st.floats(1e-4, 1.0), st.floats(-1e4, -1e-3), st.floats(0.5, 8.0), st.floats(1e-4, 10.0))
def test_round_trip(name, runs, seed, fmt, mu, alpha, beta, lam):
    base = parse_config(f"scenario = {name}\n", env={})
    cfg = base.replace(runs=runs, seed=seed, format=fmt)
    if base.kind is None and scenario_registry()[name].kind == "sysid":
        algs = (AlgorithmSpec("A", "RGA", mu, {"alpha": alpha, "beta": beta, "lam": lam}),
                AlgorithmSpec("B", "LMS", mu))
        cfg = cfg.replace(algorithms=algs, noise_overrides=(("variance", lam),), noise="noise1")
    assert parse_config(emit_config(cfg), env={}) == cfg


# --- CLI -------------------------------------------------------------------

def test_list_scenarios(capsys):
    assert run_cli(["list-scenarios"]) == EXIT_OK
    names = [line.split("\t")[0] for line in capsys.readouterr().out.splitlines()]
    assert names == list(scenario_registry())
    assert len(names) == 15


def test_theory_command(capsys):
    assert run_cli(["theory", "9", "1.0", "0.01", "1.0"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "msd = 0.047120" in out
    assert "msd_db = -13.2679" in out
    assert run_cli(["theory", "9", "100", "0.01", "1.0"]) == EXIT_CONFIG


def test_usage_errors(capsys):
    assert run_cli([]) == EXIT_CONFIG
    assert run_cli(["bogus"]) == EXIT_CONFIG
    assert run_cli(["run", "fig7z"]) == EXIT_CONFIG
    assert "fig7f" in capsys.readouterr().err
    assert run_cli(["run", "fig6", "--runs", "0"]) == EXIT_CONFIG


def test_io_errors(tmp_path):
    assert run_cli(["run", str(tmp_path / "missing.cfg")]) == EXIT_IO
    assert run_cli(["chua-gen", str(tmp_path / "missing.cfg")]) == EXIT_IO
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert run_cli(["run", "fig6", "--runs", "1", "--output", str(blocker / "sub")]) == EXIT_IO


def test_run_fig14_with_theory(tmp_path, capsys):
    out = tmp_path / "res"
    assert run_cli(["run", "fig14", "--runs", "3", "--seed", "7", "--output", str(out)]) == EXIT_OK
    rows = list(csv.reader((out / "fig14.csv").open()))
    assert rows[0] == ["scenario", "algorithm", "iteration", "nmsd_db"]
    assert len(rows) == 1 + 4 * 5000
    meta = json.loads((out / "fig14.json").read_text())
    assert meta["master_seed"] == 7 and meta["seed_source"] == "flag" and meta["runs"] == 3
    t = meta["theory"]["RGA(lam=0.01,mu=1)"]
    assert t["msd_db"] == pytest.approx(predict_steady_state_msd(9, 1.0, 0.01, 1.0).msd_db)
    assert round(t["msd_db"], 2) == -13.27
    assert "seed = 7" in meta["config"]


def test_run_is_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("scenario = fig9a\nN = 300\nruns = 2\nseed = 5\n")
    assert run_cli(["run", str(cfg), "--output", str(a)]) == EXIT_OK
    assert run_cli(["run", str(cfg), "--output", str(b)]) == EXIT_OK
    assert (a / "fig9a.csv").read_bytes() == (b / "fig9a.csv").read_bytes()


def test_run_json_format(tmp_path):
    assert run_cli(["run", "fig6", "--runs", "1", "--format", "json", "--output", str(tmp_path)]) == EXIT_OK
    meta = json.loads((tmp_path / "fig6.json").read_text())
    assert meta["columns"] == ["scenario", "algorithm", "iteration", "nmsd_db"]
    assert len(meta["rows"]) == 4 * 5000


def test_env_seed_reaches_metadata(tmp_path, monkeypatch):
    monkeypatch.setenv(SEED_ENV, "13")
    assert run_cli(["run", "fig6", "--runs", "1", "--output", str(tmp_path)]) == EXIT_OK
    meta = json.loads((tmp_path / "fig6.json").read_text())
    assert (meta["master_seed"], meta["seed_source"]) == (13, "env")


def test_chua_gen(tmp_path):
    out = tmp_path / "series.csv"
    assert run_cli(["chua-gen", "--samples", "20", "--output", str(out)]) == EXIT_OK
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["index", "u1"] and len(rows) == 21
    assert all(math.isfinite(float(r[1])) for r in rows[1:])
    cfg = tmp_path / "chua.cfg"
    cfg.write_text(f"samples = 5\ntransient = 0\noutput = {tmp_path / 'b.csv'}\n")
    assert run_cli(["chua-gen", str(cfg)]) == EXIT_OK
    assert len((tmp_path / "b.csv").read_text().splitlines()) == 6
    cfg.write_text("smaples = 5\n")
    assert run_cli(["chua-gen", str(cfg)]) == EXIT_CONFIG


def test_chua_gen_alternate_is_runtime_error(tmp_path):
    cfg = tmp_path / "chua.cfg"
    cfg.write_text(f"samples = 500\ntransient = 0\nvariant = alternate\noutput = {tmp_path / 'x.csv'}\n")
    assert run_cli(["chua-gen", str(cfg)]) == 4
