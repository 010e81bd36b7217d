import csv
import json
import shutil
import subprocess

import numpy as np
import pytest

from qwstationary import WalkOperator, check_stationary, read_edge_list, read_marked
from qwstationary.cli import main
from qwstationary.report import read_state_csv


def gen(tmp_path, family, *params):
    prefix = tmp_path / family
    argv = ["generate", family, "--out", str(prefix)]
    for p in params:
        argv += ["--param", p]
    assert main(argv) == 0
    return str(prefix) + ".edges", str(prefix) + ".marked"


def run_json(capsys, argv):
    code = main(argv + ["--format", "machine"])
    return code, json.loads(capsys.readouterr().out)


def test_analyze_gstar(tmp_path, capsys):
    e, m = gen(tmp_path, "counterexample")
    capsys.readouterr()
    assert main(["analyze", "--graph", e, "--marked", m]) == 0
    out = capsys.readouterr().out
    assert "exists: true" in out and "reason: DISCONNECTED_UNMARKED" in out
    code, doc = run_json(capsys, ["analyze", "--graph", e, "--marked", m])
    assert doc["analysis"]["degsum1"] == 2 and doc["analysis"]["degsum2"] == 3


def test_analyze_c4_single(tmp_path, capsys):
    e, _ = gen(tmp_path, "cycle", "n=4", "span=1")
    capsys.readouterr()
    code, doc = run_json(capsys, ["analyze", "--graph", e, "--marked", "0"])
    assert code == 0 and doc["exists"] is False


def test_exit_codes(tmp_path, capsys):
    assert main(["analyze", "--graph", str(tmp_path / "nope.edges"), "--marked", "0"]) == 2
    e, _ = gen(tmp_path, "cycle", "n=6", "span=2")
    assert main(["analyze", "--graph", e, "--marked", "0,3"]) == 3
    assert main(["analyze", "--graph", e, "--marked", "99"]) == 3
    assert main(["construct", "--graph", e, "--marked", "0,1", "--objective", "custom:1,2"]) == 1
    c4, _ = gen(tmp_path, "cycle", "n=4", "span=1")
    assert main(["construct", "--graph", c4, "--marked", "0"]) == 4
    g, m = gen(tmp_path, "counterexample")
    assert main(["bound", "--graph", g, "--marked", m]) == 5
    assert main(["generate", "cycle", "--param", "n=2", "--out", str(tmp_path / "x")]) == 2


def test_construct_gstar_state_file(tmp_path, capsys):
    e, m = gen(tmp_path, "counterexample")
    out = tmp_path / "state.csv"
    capsys.readouterr()
    code, doc = run_json(capsys, ["construct", "--graph", e, "--marked", m, "--out", str(out),
                                  "--objective", "custom:2,1"])
    assert code == 0
    assert doc["residual_norm"] <= 1e-10 and doc["stationary"] is True
    assert doc["a"][0] == pytest.approx(2 * doc["a"][1], abs=1e-12)
    assert doc["c"][0]["amplitude"] == pytest.approx(-doc["a"][0], abs=1e-12)
    with out.open() as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["from", "to", "amplitude"] and len(rows) == 11
    g = read_edge_list(e)
    x = read_state_csv(g, out)
    M = [g.index_of(v) for v in read_marked(m)]
    assert check_stationary(WalkOperator(g, M), x) <= 1e-10


def test_construct_zero_overlap(tmp_path, capsys):
    e, m = gen(tmp_path, "zero-overlap")
    capsys.readouterr()
    code, doc = run_json(capsys, ["construct", "--graph", e, "--marked", m])
    assert code == 0 and abs(doc["overlap"]) <= 1e-12 and doc["zero_overlap_fallback"] is True


def test_simulate_csv(tmp_path, capsys):
    e, m = gen(tmp_path, "cycle", "n=50", "span=2")
    out = tmp_path / "p.csv"
    capsys.readouterr()
    code, doc = run_json(capsys, ["simulate", "--graph", e, "--marked", m, "--steps", "1000", "--out", str(out)])
    assert code == 0
    assert len(out.read_text().splitlines()) == 1002
    assert doc["p0"] == pytest.approx(0.04)


def test_bound_with_simulation(tmp_path, capsys):
    e, m = gen(tmp_path, "cycle", "n=50", "span=2")
    capsys.readouterr()
    code, doc = run_json(capsys, ["bound", "--graph", e, "--marked", m, "--steps", "1000"])
    assert code == 0
    assert doc["bound"] == pytest.approx(7 / 24, abs=1e-12)
    assert doc["violation"] is False and doc["sim_max_p"] <= doc["bound"]


def test_reports_are_byte_identical(tmp_path):
    e, m = gen(tmp_path, "zero-overlap")
    outs = []
    for i in range(2):
        rep = tmp_path / f"r{i}.json"
        assert main(["construct", "--graph", e, "--marked", m, "--format", "machine", "--report", str(rep)]) == 0
        outs.append(rep.read_bytes())
    assert outs[0] == outs[1]


@pytest.mark.parametrize("family, params, marked_span", [
    ("counterexample", [], None), ("zero-overlap", [], None), ("cycle", ["n=10", "span=2"], None),
    ("complete", ["n=5", "k=3"], None), ("star", ["n=4"], None), ("two-components", ["k11=2", "k12=1", "k21=0", "k22=1"], None),
])
def test_round_trip(tmp_path, capsys, family, params, marked_span):
    e, m = gen(tmp_path, family, *params)
    assert main(["analyze", "--graph", e, "--marked", m]) == 0
    assert main(["construct", "--graph", e, "--marked", m, "--out", str(tmp_path / "s.csv")]) == 0
    assert main(["simulate", "--graph", e, "--marked", m, "--steps", "20"]) == 0


@pytest.mark.skipif(shutil.which("qwstat") is None, reason="console script not installed")
def test_console_script(tmp_path):
    e, m = gen(tmp_path, "counterexample")
    res = subprocess.run(["qwstat", "analyze", "--graph", e, "--marked", m], capture_output=True, text=True)
    assert res.returncode == 0 and "DISCONNECTED_UNMARKED" in res.stdout
