import json

import pytest
from click.testing import CliRunner

from zenodae.app.main import cli
from zenodae.app.utils.csv_writer import read_table

COST_CONFIG = "suite = cost\nh = 1/8, 1/16, 1/32\nt = 1, 4\n"


@pytest.fixture
def runner():
    return CliRunner()


def _write(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_help_lists_exit_codes(runner):
    result = runner.invoke(cli, ["run", "--help"])
    assert result.exit_code == 0
    assert "invariant violation" in result.output
    assert "capacity" in result.output


def test_run_cost_table(runner, tmp_path):
    config = _write(tmp_path, COST_CONFIG)
    out = tmp_path / "out"
    result = runner.invoke(cli, ["run", str(config), "--out", str(out)])
    assert result.exit_code == 0, result.output
    lines = (out / "cost.csv").read_text().splitlines()
    assert lines[0].startswith("# suite=cost, version=")
    assert len(lines[1].split(",")) == 12
    rows = read_table(out / "cost.csv")
    assert len(rows) == 6
    assert [row["h"] for row in rows[:2]] == ["0.03125", "0.03125"]
    assert {row["verdict"] for row in rows} <= {"quantum", "classical"}


def test_run_is_byte_deterministic(runner, tmp_path):
    config = _write(tmp_path, "suite = rlc\nN = 2, 4\n")
    first, second = tmp_path / "a", tmp_path / "b"
    assert runner.invoke(cli, ["run", str(config), "--out", str(first)]).exit_code == 0
    assert runner.invoke(cli, ["run", str(config), "--out", str(second), "--threads", "2"]).exit_code == 0
    assert (first / "rlc.csv").read_bytes() == (second / "rlc.csv").read_bytes()


def test_seed_override_from_environment(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("ZENO_DAE_SEED", "7")
    config = _write(tmp_path, "suite = rlc\nN = 2\nseed = 3\n")
    result = runner.invoke(cli, ["run", str(config), "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert ", seed=7," in (tmp_path / "rlc.csv").read_text().splitlines()[0]


def test_config_error_exit_code(runner, tmp_path):
    config = _write(tmp_path, "suite = rlc\nN = two\n")
    result = runner.invoke(cli, ["run", str(config), "--out", str(tmp_path)])
    assert result.exit_code == 2
    assert "line 2" in result.stderr
    report = json.loads(next(line for line in result.stderr.splitlines() if line.startswith("{")))
    assert report["exit_code"] == 2
    assert report["severity"] == "low"


def test_invariant_violation_exit_code(runner, tmp_path):
    config = _write(tmp_path, "suite = rlc\nN = 2\ntol = 1e-300\n")
    result = runner.invoke(cli, ["run", str(config), "--out", str(tmp_path)])
    assert result.exit_code == 3
    assert not (tmp_path / "rlc.csv").exists()


def test_capacity_exit_code(runner, tmp_path):
    config = _write(tmp_path, "suite = stokes\nn = 65\n")
    result = runner.invoke(cli, ["run", str(config), "--out", str(tmp_path)])
    assert result.exit_code == 4


def test_missing_config_is_io_error(runner, tmp_path):
    result = runner.invoke(cli, ["run", str(tmp_path / "absent.cfg")])
    assert result.exit_code == 5


def test_dump_operators(runner, tmp_path):
    config = _write(tmp_path, "suite = rlc\nN = 2\n")
    result = runner.invoke(cli, ["run", str(config), "--out", str(tmp_path), "--dump-operators"])
    assert result.exit_code == 0, result.output
    lines = (tmp_path / "rlc_D_N2.mtx").read_text().splitlines()
    assert lines[0] == "% operator=D N=2 shape=2x6"
    assert len(lines) == 4
    assert (tmp_path / "rlc_L_N2.mtx").exists()


def test_check_single_suite(runner):
    result = runner.invoke(cli, ["check", "--suite", "cost"])
    assert result.exit_code == 0
    assert "cost" in result.output and "ok" in result.output


def test_check_dilate_suite(runner):
    result = runner.invoke(cli, ["check", "--suite", "dilate"])
    assert result.exit_code == 0, result.output
