import json
import subprocess
import sys

import pytest

from agtlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def doc(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_edges_k2(capsys):
    code, d = doc(capsys, "edges", "--k", "2", "--v", "1")
    assert code == 0 and d["schema"] == "agt-lab/1"
    assert d["ell"] == "mu" and d["n"] == 1
    _, d = doc(capsys, "edges", "--k", "2", "--v", "-1")
    assert d["ell"] == "-e1 - e2 + mu"


def test_jack_at_beta_one_gives_schur(capsys):
    code, d = doc(capsys, "jack", "--n", "2", "--beta", "1")
    assert code == 0
    rows = {tuple(j["partition"]): {tuple(p): c for p, c in j["m"]} for j in d["result"]["table"]["jacks"]}
    assert rows[(2,)] == {(2,): "1", (1, 1): "1"}
    assert rows[(1, 1)] == {(1, 1): "1"}


def test_z_c2_sampled_passes(capsys):
    code, d = doc(capsys, "z-c2", "--quiver", "pure", "--order", "3", "--mode", "sampled", "--seed", "7")
    assert code == 0 and d["result"]["pass"]
    assert d["config"]["seed"] == 7


def test_printed_cycle_formula_fails_with_exit_one(capsys):
    code, d = doc(capsys, "z-c2", "--quiver", "ahat:1", "--order", "2", "--mode", "sampled", "--samples", "1")
    assert code == 1 and not d["result"]["pass"]


def test_usage_errors(capsys):
    assert run(capsys, "z-c2", "--order", "x")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "edges", "--k", "3", "--v", "1")[0] == 2


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"seed": 5, "samples": 2, "mode": "sampled"}))
    _, d = doc(capsys, "z-c2", "--config", str(cfg), "--order", "2")
    assert (d["config"]["seed"], d["config"]["samples"], d["config"]["mode"]) == (5, 2, "sampled")
    _, d = doc(capsys, "z-c2", "--config", str(cfg), "--order", "2", "--seed", "9")
    assert d["config"]["seed"] == 9


def test_csv_output(capsys):
    code, out = run(capsys, "verify", "--suite", "integrals", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "criterion,suite,check,kind,pass" and len(lines) == 3


def test_output_file_and_report(tmp_path, capsys):
    path = tmp_path / "integrals.json"
    assert run(capsys, "verify", "--suite", "integrals", "-o", str(path))[0] == 0
    assert json.loads(path.read_text())["result"]["pass"]
    code, out = run(capsys, "report", "--input", str(path))
    assert code == 0 and "integrals" in out


@pytest.mark.parametrize("argv", [["z-ale", "--k", "2", "--j", "1", "--order", "1", "--mode", "sampled"]])
def test_byte_identical_across_processes(argv):
    cmd = [sys.executable, "-m", "agtlab", *argv]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
