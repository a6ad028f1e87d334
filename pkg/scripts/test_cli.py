#!/usr/bin/env python3
"""
Command Line Test Script

Tests:
1. run writes snapshots, a plot script and a manifest
2. validate reports every violation with exit code 2
3. GFSHOCK_OUT overrides the requested directory
4. Solver aborts exit with code 3
5. Runs are deterministic

Run: pytest scripts/test_cli.py
"""
import sys
sys.path.insert(0, '.')

import json
import os

import pytest

from app import __version__
from app.cli import EXIT_CONFIG, EXIT_OK, EXIT_SOLVER, main
from app.core.config import get_settings
from app.core.exceptions import ConfigError
from app.services.scenario_service import PRESETS, parse_config, preset_config

ABORTING_CONFIG = """\
[scenario]
system = euler_split
end_time = 0.1
cfl = 0.4

[grid]
n = 20
h = 0.05

[params]
gamma = 1.4

[initial]
interfaces = 0.5
state0 = rho=1.0, u=2.0, e=1.0
state1 = rho=1.0, u=0.0, e=1.0
"""


def _write(tmp_path, text, name="scenario.ini"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_run_writes_snapshots_and_manifest(tmp_path, burgers_config):
    out = tmp_path / "out"
    code = main(["run", _write(tmp_path, burgers_config), "--out", str(out)])
    assert code == EXIT_OK

    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["system"] == "burgers"
    assert manifest["version"] == __version__
    assert manifest["snapshot_times"] == [0.1, 0.2]
    assert manifest["steps"] > 0
    assert manifest["stages"][0]["name"] == "burgers"
    for name in manifest["files"]:
        assert (out / name).exists(), name

    lines = (out / "shock_t0.200000.csv").read_text().splitlines()
    assert lines[0] == "x,u"
    assert len(lines) == 51


def test_parse_minimal_burgers_config(burgers_config):
    config = parse_config(burgers_config, "shock.ini")
    assert config.system.value == "burgers"
    assert config.initial.interfaces == [0.3]
    assert config.initial.states == [{"u": 1.0}, {"u": 0.0}]
    assert config.grid.n == 50
    assert config.prefix == "shock"


def test_validate_accepts_a_good_config(tmp_path, burgers_config, capsys):
    assert main(["validate", _write(tmp_path, burgers_config)]) == EXIT_OK
    assert "valid burgers scenario" in capsys.readouterr().out


def test_validate_rejects_large_cfl(tmp_path, burgers_config, capsys):
    text = burgers_config.replace("cfl = 0.4", "cfl = 0.9")
    assert main(["validate", _write(tmp_path, text)]) == EXIT_CONFIG
    assert "exceeds 0.5" in capsys.readouterr().err


def test_hurricane_allows_cfl_up_to_one(tmp_path, capsys):
    """The semi-Lagrangian step only needs a backtrack within one spacing."""
    text = PRESETS["hurricane_ring"].text
    assert parse_config(text, "ring.ini").scenario.cfl == 0.8
    assert main(["validate", _write(tmp_path, text.replace("cfl = 0.8", "cfl = 1.2"))]) == EXIT_CONFIG
    assert "exceeds 1" in capsys.readouterr().err


def test_validate_reports_missing_parameter(tmp_path, capsys):
    text = ABORTING_CONFIG.replace("[params]\ngamma = 1.4\n", "")
    assert main(["validate", _write(tmp_path, text)]) == EXIT_CONFIG
    assert "params.gamma: required for system euler_split" in capsys.readouterr().err


def test_every_violation_is_reported_at_once():
    text = """\
[scenario]
system = k2
end_time = -1
cfl = 0.4

[grid]
n = 0
h = 0.1

[params]
k = 1
gamma = 1.4

[initial]
interfaces = 0.0
state0 = v=1, u=0, sigma=0
state1 = v=1, u=0, sigma=0

[extra]
a = 1
"""
    with pytest.raises(ConfigError) as info:
        parse_config(text, "bad.ini")
    joined = "\n".join(info.value.violations)
    assert "[extra]: unknown section" in joined
    assert "params.gamma: unknown parameter for system k2" in joined
    assert "scenario.end_time" in joined
    assert "grid" in joined
    assert info.value.source == "bad.ini"


def test_missing_file_is_a_config_error(tmp_path):
    assert main(["validate", str(tmp_path / "nope.ini")]) == EXIT_CONFIG


def test_environment_overrides_output_directory(tmp_path, burgers_config, monkeypatch):
    forced = tmp_path / "forced"
    monkeypatch.setenv("GFSHOCK_OUT", str(forced))
    get_settings.cache_clear()
    requested = tmp_path / "requested"
    assert main(["run", _write(tmp_path, burgers_config), "--out", str(requested)]) == EXIT_OK
    assert (forced / "manifest.json").exists()
    assert not requested.exists()


def test_solver_abort_exit_code(tmp_path, capsys):
    code = main(["run", _write(tmp_path, ABORTING_CONFIG), "--out", str(tmp_path / "out")])
    assert code == EXIT_SOLVER
    assert "solver abort" in capsys.readouterr().err


def test_runs_are_deterministic(tmp_path, burgers_config):
    path = _write(tmp_path, burgers_config)
    for name in ("a", "b"):
        assert main(["run", path, "--out", str(tmp_path / name)]) == EXIT_OK
    for snapshot in ("shock_t0.100000.csv", "shock_t0.200000.csv"):
        assert (tmp_path / "a" / snapshot).read_bytes() == (tmp_path / "b" / snapshot).read_bytes()


def test_preset_run(tmp_path):
    out = tmp_path / "preset"
    assert main(["preset", "burgers_shock", "--out", str(out)]) == EXIT_OK
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["snapshot_times"] == [0.25, 0.5]
    assert "burgers_t0.500000.csv" in os.listdir(out)


def test_every_preset_validates():
    for name in PRESETS:
        assert preset_config(name).system.value in PRESETS[name].text


def test_unknown_preset_is_rejected():
    with pytest.raises(ConfigError):
        preset_config("nope")


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert __version__ in capsys.readouterr().out


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
