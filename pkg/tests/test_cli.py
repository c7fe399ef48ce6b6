import subprocess
import sys

import pytest

from qsteg import cli


def run(*args, env=None):
    import os

    e = dict(os.environ)
    e.update(env or {})
    return subprocess.run([sys.executable, "-m", "qsteg.cli", *args], capture_output=True, text=True, env=e)


def fields(text):
    return dict(line.split(": ", 1) for line in text.strip().splitlines())


def test_encode_worked_example(capsys):
    assert cli.main(["encode", "41", "--rank-mode", "--nbar", "0.56"]) == 0
    out = fields(capsys.readouterr().out)
    assert out["codeword"] == "10001100"
    assert (out["N"], out["n_z"]) == ("8", "5")
    photons = out["photons"].split()
    assert [p == "0" for p in photons] == [c == "0" for c in "10001100"]


def test_decode_inverts_encode(capsys):
    assert cli.main(["decode", "10001100", "--nbar", "0.56"]) == 0
    assert fields(capsys.readouterr().out)["rank"] == "41"
    assert cli.main(["encode", "--value", "0b101101", "--nbar", "0.56"]) == 0
    word = fields(capsys.readouterr().out)["codeword"]
    assert cli.main(["decode", word, "--nbar", "0.56"]) == 0
    assert fields(capsys.readouterr().out)["value"] == str(0b101101)


@pytest.mark.parametrize("argv", [
    ["decode", "10201100"],
    ["decode", "10001100", "--nbar", "1.0"],
    ["encode", "0", "--rank-mode", "--nbar", "1"],
    ["encode", "99", "--bits", "3", "--nbar", "1"],
    ["encode", "--nbar", "1"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert cli.main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_bad_flag_exits_2():
    r = run("figure", "fig9")
    assert r.returncode == 2
    r = run("encode", "1", "--nbar", "1", "--seed", "-1")
    assert r.returncode == 2


def test_env_defaults_and_flag_precedence(tmp_path):
    out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
    env = {"QSTEG_SAMPLES": "500", "QSTEG_NBAR_GRID": "1:2:1", "QSTEG_SEED": "9"}
    assert run("figure", "fig3", "--out", str(out_a), env=env).returncode == 0
    assert run("figure", "fig3", "--out", str(out_b), "--seed", "9", "--samples", "500",
               "--nbar-grid", "1:2:1", env={"QSTEG_SEED": "3"}).returncode == 0
    a, b = out_a.read_text(), out_b.read_text()
    assert a == b
    assert "samples=500" in a.splitlines()[1]


def test_figure_json_to_stdout(capsys):
    assert cli.main(["figure", "fig1", "--nbar-grid", "1:2:1", "--format", "json"]) == 0
    assert '"records"' in capsys.readouterr().out


def test_verify_exit_codes(capsys):
    assert cli.main(["verify", "codec"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 5 and "5/5 passed" in out


def test_verify_failure_exit_1(monkeypatch, capsys):
    from qsteg import verify

    monkeypatch.setitem(verify.SUITES, "codec", lambda: [verify.Check("x", False)])
    assert cli.main(["verify", "codec"]) == 1
    assert "FAIL  x" in capsys.readouterr().out
