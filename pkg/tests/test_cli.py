import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from lindef import cli

DEMOS = Path(__file__).resolve().parent.parent / "demos" / "sessions"


def _run(argv, capsys):
    code = cli.run([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_resolve_periodic(capsys):
    code, rep = _run(["resolve", DEMOS / "periodic.lds", "--module", "k", "--steps", "4"], capsys)
    assert code == 0
    assert rep["schema"] == "lindef/1"
    assert rep["command"] == "resolve"
    assert rep["parameters"]["h"] == 4 and rep["parameters"]["p"] == 32003
    assert rep["results"]["k"]["ranks"] == [1, 2, 2, 2, 2]
    assert "wall_time" not in rep


def test_lind_roos_via_session_flag(capsys):
    code, rep = _run(["lind", "--session", DEMOS / "roos.lds", "--module", "N",
                      "--steps", "5", "--smax", "4"], capsys)
    assert code == 0
    r = rep["results"]["N"]
    assert r["lind"]["status"] == "at_least"
    assert r["lind"]["nonzero_h"] == [1, 2, 3, 4, 5]
    assert r["sega"]["agrees"] is True


def test_out_file_and_timing(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = cli.run(["lind", str(DEMOS / "small.lds"), "--module", "C", "--out", str(out),
                    "--timing"])
    assert code == 0
    assert capsys.readouterr().out == ""
    rep = json.loads(out.read_text())
    assert rep["results"]["C"]["lind"]["value"] == 1
    assert rep["wall_time"] >= 0


@pytest.mark.parametrize("cmd,extra,key", [
    ("ses", ["--ses", "E"], "E"),
    ("filtration", ["--filtration", "F"], "F"),
    ("quotients", ["--module", "m"], "m"),
    ("chrings", ["--ring", "R", "--ideal", "J", "--module", "N"], "N"),
    ("threeideals", ["--ideals", "I,J,K", "--minors", "x1,x2;y1,y2"], "I,J,K"),
    ("sega", ["--module", "C", "--smax", "2"], "C"),
])
def test_commands_succeed_on_demo_sessions(cmd, extra, key, capsys):
    session = {"ses": "ses", "filtration": "filtration", "quotients": "quotients",
               "chrings": "chrings", "threeideals": "threeideals", "sega": "small"}[cmd]
    code, rep = _run([cmd, DEMOS / f"{session}.lds", "--steps", "4"] + extra, capsys)
    assert code == 0, rep
    assert key in rep["results"]


def test_conca_rejection_names_identity(capsys):
    code, rep = _run(["filtration", DEMOS / "filtration.lds", "--conca", "bad"], capsys)
    assert code == 0
    assert rep["results"]["conca_gen(bad)"]["failed_identity"] == ["m^2 = qm"]


def test_input_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.lds"
    bad.write_text("ring R = poly(p=32003; x,y);\nideal I = (x^2 + y);\n")
    code, rep = _run(["lind", bad], capsys)
    assert code == 2
    assert rep["line"] == 2 and rep["declaration"] == "I"
    code, _ = _run(["lind", tmp_path / "missing.lds"], capsys)
    assert code == 2
    code, _ = _run(["lind", DEMOS / "small.lds", "--module", "nope"], capsys)
    assert code == 2
    code, _ = _run(["paper", "--example", "nope"], capsys)
    assert code == 2


def test_all_inconclusive_exit_3(tmp_path, capsys):
    f = tmp_path / "m.lds"
    f.write_text("ring R = poly(p=32003; x,y,z) / (z^2);\nmodule Q = quotient((x - y, z));\n")
    code, rep = _run(["lind", f, "--steps", "2", "--no-sega"], capsys)
    assert rep["results"]["Q"]["lind"]["status"] == "zero_up_to_window"
    assert code == 3


def test_violation_exit_1(monkeypatch, capsys):
    monkeypatch.setattr(cli, "run_case", lambda name: {"example": name, "ok": False, "checks": []})
    code, rep = _run(["paper", "--example", "periodic"], capsys)
    assert code == 1
    assert rep["outcomes"] == ["violated"]


def test_reports_are_deterministic(capsys):
    argv = ["fuzz", "--corpus", "hypersurface", "--count", "4", "--seed", "5"]
    a = _run(argv, capsys)
    b = _run(argv + ["--jobs", "2"], capsys)
    assert a == b


def test_console_script_and_env_jobs(tmp_path):
    env = dict(os.environ, LINDEF_JOBS="2")
    p = subprocess.run([sys.executable, "-m", "lindef.cli", "paper", "--example", "periodic"],
                       capture_output=True, text=True, env=env)
    assert p.returncode == 0, p.stderr
    rep = json.loads(p.stdout)
    assert rep["results"]["periodic"]["ok"] is True
