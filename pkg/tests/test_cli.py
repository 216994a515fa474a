"""Command-line interface: JSON output, exit codes, determinism, dumps."""
from __future__ import annotations

import json

import pytest

from evacregret.cli import run


@pytest.fixture
def t1_file(tmp_path):
    doc = {
        "vertices": [
            {"position": "0", "w_min": "0", "w_max": "2"},
            {"position": "1", "w_min": "0", "w_max": "2"},
            {"position": "2", "w_min": "0", "w_max": "2"},
        ],
        "capacities": ["1", "2"],
    }
    path = tmp_path / "t1.json"
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def scenario_file(tmp_path):
    path = tmp_path / "sA.json"
    path.write_text(json.dumps({"weights": ["1", "0", "1"]}))
    return str(path)


def test_validate_ok(t1_file, capsys):
    assert run(["validate", "--instance", t1_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == {"errors": [], "ok": True}


def test_validate_bad(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "vertices": [
            {"position": "0", "w_min": "0", "w_max": "2"},
            {"position": "1", "w_min": "0", "w_max": "2"},
        ],
        "capacities": ["0"],
    }))
    assert run(["validate", "--instance", str(bad)]) == 1
    out = json.loads(capsys.readouterr().out)
    assert out["ok"] is False
    assert any("capacity" in e for e in out["errors"])


def test_unknown_flag_usage_error(t1_file):
    with pytest.raises(SystemExit) as exc:
        run(["validate", "--instance", t1_file, "--bogus"])
    assert exc.value.code == 2


def test_evacuate(t1_file, scenario_file, capsys):
    assert run([
        "evacuate", "--instance", t1_file, "--scenario", scenario_file, "--sink", "1",
    ]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["theta_left"] == "2"
    assert out["theta_right"] == "3/2"
    assert out["theta"] == "2"
    assert out["approx"]["theta_right"] == 1.5


def test_optimal_sink(t1_file, scenario_file, capsys):
    assert run(["optimal-sink", "--instance", t1_file, "--scenario", scenario_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert (out["location"], out["value"]) == ("1", "2")


def test_regret(t1_file, scenario_file, capsys):
    assert run([
        "regret", "--instance", t1_file, "--scenario", scenario_file, "--sink", "0",
    ]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == "1"


def test_maxregret(t1_file, capsys):
    assert run(["maxregret", "--instance", t1_file, "--sink", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"] == "4"
    assert out["witness"]["scenario"] == ["2", "0", "0"]


def test_minmax_regret(t1_file, capsys):
    assert run(["minmax-regret", "--instance", t1_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert (out["location"], out["value"]) == ("1", "3")
    assert out["witness"] is not None


def test_deterministic_output(t1_file, capsys):
    run(["minmax-regret", "--instance", t1_file])
    first = capsys.readouterr().out
    run(["minmax-regret", "--instance", t1_file])
    second = capsys.readouterr().out
    assert first == second


def test_oracle_subcommands(t1_file, scenario_file, capsys):
    assert run([
        "oracle", "simulate", "--instance", t1_file, "--scenario", scenario_file,
        "--sink", "1", "--dt", "1/128",
    ]) == 0
    sim = json.loads(capsys.readouterr().out)
    assert abs(sim["approx"]["value"] - 2.0) < 0.1

    assert run([
        "oracle", "grid-rmax", "--instance", t1_file, "--sink", "2", "--grid", "1/16",
    ]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == "4"

    assert run([
        "oracle", "sweep-ropt", "--instance", t1_file, "--grid", "1/16", "--samples", "16",
    ]) == 0
    out = json.loads(capsys.readouterr().out)
    assert (out["location"], out["value"]) == ("1", "3")

    assert run([
        "oracle", "check-shift", "--instance", t1_file, "--trials", "50", "--seed", "3",
    ]) == 0
    assert json.loads(capsys.readouterr().out)["violations"] == 0


def test_dump_pwl(t1_file, capsys):
    assert run(["dump-pwl", "--instance", t1_file, "--name", "mk:0:2:1"]) == 0
    rows = capsys.readouterr().out.strip().split("\n")
    assert rows[0] == "0,1,1/3"
    assert rows[-1].startswith("4,3,")

    assert run(["dump-pwl", "--instance", t1_file, "--name", "F:0:1:2"]) == 0
    rows = capsys.readouterr().out.strip().split("\n")
    assert rows[0] == "0,1,1/2"


def test_missing_file_is_validation_error(capsys):
    assert run(["maxregret", "--instance", "/nonexistent.json", "--sink", "0"]) == 1


def test_sink_outside_path_rejected(t1_file, scenario_file):
    assert run([
        "evacuate", "--instance", t1_file, "--scenario", scenario_file, "--sink", "9",
    ]) == 1
