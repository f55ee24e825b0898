import json
import subprocess
import sys

import pytest

from fpsums.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_OK, EXIT_RESOURCE, main


def _json_out(capsys):
    return json.loads(capsys.readouterr().out.strip().splitlines()[-1])


def test_compute_d_times(capsys):
    assert main(["compute", "d_times", "--p", "5", "--set", "explicit:1,2"]) == EXIT_OK
    assert _json_out(capsys)["value"] == 152


def test_compute_oracle_strategy(capsys):
    argv = ["compute", "n_count", "--p", "5", "--set", "explicit:1", "--set2", "explicit:1,2", "--set3", "explicit:0"]
    assert main(argv + ["--strategy", "oracle"]) == EXIT_OK
    assert _json_out(capsys)["value"] == 2


def test_compute_energy_op(capsys):
    assert main(["compute", "energy", "--p", "5", "--set", "explicit:1,2", "--op", "+"]) == EXIT_OK
    assert _json_out(capsys)["value"] == 6


def test_compute_trilinear(capsys):
    assert main(["compute", "trilinear_s", "--p", "5", "--set", "interval:0..5"]) == EXIT_OK
    assert abs(_json_out(capsys)["abs"] - 45) < 1e-9


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "d_times", "--p", "4", "--set", "explicit:1"],
        ["compute", "d_times", "--p", "5", "--set", "interval:1..0"],
        ["verify"],
        ["replay", "--row", "not json"],
    ],
)
def test_config_errors_exit_2(argv, capsys):
    assert main(argv) == EXIT_CONFIG


def test_resource_limit_exit_3(capsys):
    assert main(["compute", "collinear_quadruples", "--p", "101", "--set", "random:41:1"]) == EXIT_RESOURCE


def test_verify_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"primes": [7], "families": ["subgroup:3"]}))
    assert main(["verify", "--config", str(cfg)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "PASS sandwich_dtilde_dtimes" in out


def test_verify_reports_failure(tmp_path, capsys, monkeypatch):
    # the literal Cauchy link is false here: N = 4 > 8 * 1
    from fpsums.harness import checks

    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"primes": [11], "families": ["explicit:5,6"]}))
    monkeypatch.setattr(checks, "_aux_specs", lambda n, aux: ("explicit:1", "explicit:1"))
    assert main(["verify", "--config", str(cfg)]) == EXIT_FAIL
    assert "FAIL cauchy_n_count:" in capsys.readouterr().out


def test_sweep_and_replay(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"primes": [13], "families": ["random:3:1"], "seed": 4}))
    out = tmp_path / "rows.jsonl"
    assert main(["sweep", "--config", str(cfg), "--out", str(out), "--format", "jsonl"]) == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines
    capsys.readouterr()
    assert main(["replay", "--row", lines[0]]) == EXIT_OK
    assert _json_out(capsys)["match"] is True
    tampered = json.loads(lines[0])
    tampered["value"] = -1
    assert main(["replay", "--row", json.dumps(tampered)]) == EXIT_FAIL


def test_selftest(capsys):
    assert main(["selftest"]) == EXIT_OK
    assert "FAIL" not in capsys.readouterr().out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fpsums", "selftest"], capture_output=True, text=True)
    assert proc.returncode == 0
