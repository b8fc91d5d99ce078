from __future__ import annotations

import json
import re
import subprocess
import sys

import numpy as np
import pytest

from tangle_tqft.cli import main
from tangle_tqft.oracles import bracket_statesum
from tangle_tqft.tangle import braid_to_diagram, closure


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    (tmp_path / "circle.tng").write_text("bottom:\ncup+\ncap+\n", encoding="utf-8")
    (tmp_path / "bad.tng").write_text("bottom: ++\nid+ id+\ncap+\n", encoding="utf-8")
    (tmp_path / "syntax.tng").write_text("bottom: ++\nid+ idd+\n", encoding="utf-8")
    (tmp_path / "trefoil.brd").write_text("# the trefoil\nbraid n=2: 1 1 1\n", encoding="utf-8")
    return tmp_path


def test_eval_trefoil_bracket(capsys):
    code, out, err = run(capsys, "eval", "--braid", "braid n=2: 1 1 1", "--closure", "trace")
    assert code == 0 and err == ""
    want = bracket_statesum(closure(braid_to_diagram([1, 1, 1], 2), "trace"))
    assert out.strip() == str(want)


def test_eval_circle_file(capsys, files):
    code, out, _ = run(capsys, "eval", "--sliced", str(files / "circle.tng"))
    assert code == 0 and out.strip() == "-A^-2 - A^2"


def test_eval_errors(capsys, files):
    code, out, err = run(capsys, "eval", "--sliced", str(files / "bad.tng"))
    assert code == 2 and out == "" and "slice 2" in err and "line 3, column 1" in err
    code, out, err = run(capsys, "eval", "--sliced", str(files / "syntax.tng"))
    assert code == 1 and out == "" and "line 2, column 5" in err
    code, _, err = run(capsys, "eval", "--braid", "braid n=2: 2")
    assert code == 1 and "out of range" in err
    code, _, err = run(capsys, "eval", "--sliced", str(files / "missing.tng"))
    assert code == 1 and "cannot read" in err


def test_eval_json_and_matching(capsys):
    code, out, _ = run(capsys, "eval", "--braid", "braid n=2: 1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1 and data["matrix"]["rows"] == 4
    assert data["matrix"]["entries"][0][0] == "A"
    code, out, _ = run(capsys, "eval", "--matching", "1cob src= tgt= pairs=[] circles=1")
    assert code == 0 and out.strip() == "2"
    code, out, _ = run(capsys, "eval", "--matching", "1cob src= tgt= pairs=[] circles=1", "--dim", "3")
    assert out.strip() == "3"
    code, _, err = run(capsys, "eval", "--matching", "1cob src=++ tgt= pairs=[(b1,b2)] circles=0")
    assert code == 1 and "opposite signs" in err


def test_invariant(capsys, files):
    code, out, _ = run(capsys, "invariant", "--sliced", str(files / "circle.tng"))
    assert code == 0 and "normalized: 1\n" in out
    _, tre, _ = run(capsys, "invariant", "--sliced", str(files / "trefoil.brd"), "--closure", "trace", "--format", "json")
    _, mir, _ = run(capsys, "invariant", "--braid", "braid n=2: -1 -1 -1", "--closure", "trace", "--format", "json")
    tre, mir = json.loads(tre), json.loads(mir)
    assert tre["normalized"] == "t + t^3 - t^4" and tre["schema"] == 1
    assert mir["normalized"] == "-t^-4 + t^-3 + t^-1"
    code, out, err = run(capsys, "invariant", "--braid", "braid n=2: 1 1 1")
    assert code == 2 and out == "" and "--closure" in err


def test_invariant_plat(capsys):
    code, out, _ = run(capsys, "invariant", "--braid", "braid n=2: 1 1 1", "--closure", "plat",
                       "--orientation", "alternating")
    assert code == 0 and "normalized: 1\n" in out
    code, _, err = run(capsys, "invariant", "--braid", "braid n=2: 1", "--closure", "plat")
    assert code == 2 and "plat" in err


def test_check_suites(capsys):
    code, out, _ = run(capsys, "check", "--suite", "tqft1", "--samples", "5")
    assert code == 0 and "Z(S^1) = 2" in out and "PASS" in out
    code, out, _ = run(capsys, "check", "--suite", "theory", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["cases"] == 4 and data["passed"]
    code, out, _ = run(capsys, "check", "--suite", "oracle", "--max-crossings", "3")
    passed, total = re.search(r"(\d+)/(\d+) passed", out).groups()
    assert code == 0 and passed == total == "100"


def test_check_deterministic(capsys, monkeypatch):
    a = run(capsys, "check", "--suite", "moves", "--samples", "10", "--seed", "5", "--format", "json")
    b = run(capsys, "check", "--suite", "moves", "--samples", "10", "--seed", "5", "--format", "json")
    assert a == b
    monkeypatch.setenv("TANGLE_SEED", "5")
    c = run(capsys, "check", "--suite", "moves", "--samples", "10", "--format", "json")
    assert c == a
    assert json.loads(c[1])["seed"] == 5


def test_kz(capsys):
    code, out, _ = run(capsys, "kz", "--braid", "braid n=2: 1 -1", "--h", "0.1", "--steps", "256")
    data = json.loads(out)
    m = np.array([[complex(*z) for z in row] for row in data["transport"]])
    assert code == 0 and data["steps"] == 256 and data["schema"] == 1
    assert np.linalg.norm(m - np.eye(4), 2) < 1e-6 and data["error_estimate"] < 1e-6
    code, out, _ = run(capsys, "kz", "--h", "0")
    m = np.array([[complex(*z) for z in row] for row in json.loads(out)["transport"]])
    assert code == 0 and np.array_equal(m, np.eye(4))
    code, out, _ = run(capsys, "kz", "--relation", "--h", "0.2", "--steps", "512")
    assert code == 0 and json.loads(out)["passed"]
    code, _, err = run(capsys, "kz", "--steps", "4")
    assert code == 2 and "at least 8" in err


def test_parse_round_trip(capsys, files):
    code, out, _ = run(capsys, "parse", "--braid", "braid n=3:   1 -2")
    assert code == 0 and out == "bottom: +++\nx++ id+\nid+ y++\n"
    code, out, _ = run(capsys, "parse", "--braid", "braid n=3:   1 -2", "--emit", "braid")
    assert out == "braid n=3: 1 -2\n"
    code, _, err = run(capsys, "parse", "--sliced", str(files / "bad.tng"))
    assert code == 2 and "slice 2" in err


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "tangle_tqft", "eval", "--sliced", str(files / "circle.tng")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "-A^-2 - A^2" and proc.stderr == ""
