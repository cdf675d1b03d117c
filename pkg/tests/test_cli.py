from __future__ import annotations

import json
import subprocess
import sys

import pytest

from qcotangent import cli


def _run(tmp_path, *args):
    out = tmp_path / "report.json"
    code = cli.main(["verify", *args, "--json", str(out)])
    return code, json.loads(out.read_text()), out.read_bytes()


def test_rmatrix_suite_exact(tmp_path):
    code, rep, _ = _run(tmp_path, "--suite", "rmatrix", "--n", "2", "--mode", "exact")
    assert code == cli.EXIT_OK
    assert rep["config"] == {"n": 2, "mode": "exact", "seed": 0, "suites": ["rmatrix"]}
    ids = [c["id"] for c in rep["checks"]]
    assert "rmatrix/R(2)/braid" in ids and "rmatrix/R^f(2)/hecke" in ids
    for c in rep["checks"]:
        assert set(c) == {"id", "anchor", "verdict", "millis", "detail"}
        assert c["millis"] is None


def test_rational_mode_records_points_and_is_deterministic(tmp_path):
    args = ("--suite", "dybe", "--n", "2", "--mode", "rational", "--seed", "7")
    code1, rep, raw1 = _run(tmp_path, *args)
    code2, _, raw2 = _run(tmp_path, *args)
    assert raw1 == raw2
    assert code1 == code2 == cli.EXIT_FAIL  # R^A is refuted
    rs = next(c for c in rep["checks"] if c["id"] == "dybe/RS")
    assert rs["verdict"] == "verified" and len(rs["points"]) == 3
    assert rep["config"]["prng"].startswith("python random.Random")


def test_timing_flag(tmp_path):
    out = tmp_path / "t.json"
    assert cli.main(["verify", "--suite", "modular", "--n", "2", "--timing", "--json", str(out)]) == 0
    assert all(isinstance(c["millis"], float) for c in json.loads(out.read_text())["checks"])


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "nope"],
    ["verify", "--n", "5"],
    ["verify", "--suite", "spectral", "--n", "3"],
    ["verify", "--suite", "modular", "--tau", "0,-1"],
    ["verify", "--suite", "modular", "--n", "3", "--z", "0.1,0"],
    ["verify", "--cutoff", "-1"],
    [],
])
def test_usage_errors(argv):
    assert cli.main(argv) == cli.EXIT_USAGE


def test_exit_code_mapping():
    rep = {"checks": [{"verdict": "verified"}, {"verdict": "inconclusive"}]}
    assert cli.exit_code(rep) == cli.EXIT_INCONCLUSIVE
    rep["checks"].append({"verdict": "refuted"})
    assert cli.exit_code(rep) == cli.EXIT_FAIL


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qcotangent", "suites"], capture_output=True, text=True)
    assert res.returncode == 0
    assert set(res.stdout.split()) == set(cli.SUITES)
