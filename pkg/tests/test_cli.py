import json
import subprocess
import sys

import pytest

from permtri.cli import EXIT_INCONSISTENT, EXIT_OK, EXIT_USAGE, check_budget, main
from permtri.classifier import pairs_from_csv
from permtri.errors import ResourceLimit


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_pair_example(capsys):
    code, out, _ = run(capsys, "verify-pair", "--m", "3", "--alpha", "1:0", "--beta", "1:0")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert set(rep["verdicts"].values()) == {"permutation"}
    assert rep["condition"] == "COND1" and rep["case_id"] == 3
    assert rep["consistent"] and rep["problems"] == []


def test_verify_pair_non_pp(capsys):
    code, out, _ = run(capsys, "verify-pair", "--m", "3", "--alpha", "0x1+i*0x1", "--beta", "2:0")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert set(rep["verdicts"].values()) == {"not a permutation"}
    assert rep["condition"] == "NONE" and rep["points_off_diagonal"] > 0


@pytest.mark.parametrize("alpha,beta", [("0:0", "1:0"), ("1:0", "0:0")])
def test_zero_coefficient(capsys, alpha, beta):
    code, _, err = run(capsys, "verify-pair", "--m", "3", "--alpha", alpha, "--beta", beta)
    assert code == EXIT_USAGE and "ZeroCoefficient" in err


@pytest.mark.parametrize("argv", [
    ["verify-pair", "--m", "3", "--alpha", "zz", "--beta", "1:0"],
    ["verify-pair", "--m", "3", "--alpha", "9:0", "--beta", "1:0"],
    ["verify-pair", "--m", "3", "--alpha", "1:0"],
    ["frobnicate"],
    ["enumerate", "--m", "3", "--modulus", "0xf"],
    ["enumerate", "--m", "3", "--k", "0x2"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_enumerate_m3(capsys):
    code, out, _ = run(capsys, "enumerate", "--m", "3", "--mode", "bruteforce", "--workers", "1")
    assert code == EXIT_OK
    data = json.loads(out)
    s = data["summary"]
    assert s["pp_count"] == 63 and s["mismatches"] == 0
    assert s["total_pairs_checked"] == 63 * 63
    assert s["cond1_count"] + s["cond2_count"] == 63
    assert len(data["pairs"]) == 63


def test_enumerate_deterministic(tmp_path, capsys):
    paths = []
    for w in (1, 2):
        p = tmp_path / f"w{w}.csv"
        assert run(capsys, "enumerate", "--m", "4", "--workers", str(w), "--format", "csv",
                   "--out", str(p))[0] == EXIT_OK
        paths.append(p)
    assert paths[0].read_bytes() == paths[1].read_bytes()
    rows = pairs_from_csv(paths[0].read_text())
    assert len(rows) == 221


def test_enumerate_condition_mode(capsys):
    code, out, _ = run(capsys, "enumerate", "--m", "4", "--mode", "condition", "--workers", "1")
    s = json.loads(out)["summary"]
    assert code == EXIT_OK and s["reference_mode"] == "mu" and s["mismatches"] == 0


def test_budget(monkeypatch, capsys):
    monkeypatch.setenv("PERMTRI_BUDGET", "1000")
    code, _, err = run(capsys, "enumerate", "--m", "3")
    assert code == EXIT_USAGE and "ResourceLimit" in err
    monkeypatch.delenv("PERMTRI_BUDGET")
    with pytest.raises(ResourceLimit):
        check_budget(256, {"bruteforce"})
    assert check_budget(64, {"mu", "condition"}) > 0


def test_curve_points_and_split(capsys):
    code, out, _ = run(capsys, "curve-points", "--m", "3", "--alpha", "6:0", "--beta", "5:0")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["points_off_diagonal"] == 0 and len(rep["gamma"]) == 9
    code, out, _ = run(capsys, "split", "--m", "3", "--alpha", "6:0", "--beta", "5:0")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["split_type"] == "NOT_SPLIT_NONRATIONAL" and rep["case_id"] == 1


def test_symbolic_curve(tmp_path, capsys):
    outs = []
    for n in (1, 2):
        p = tmp_path / f"curve{n}.json"
        assert run(capsys, "symbolic", "--suite", "curve", "--out", str(p))[0] == EXIT_OK
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])[0]["verdict"] == "pass"


def test_symbolic_chains_dir(tmp_path, capsys):
    code, out, _ = run(capsys, "symbolic", "--suite", "chains", "--out", str(tmp_path / "rep"))
    assert code == EXIT_OK
    summary = json.loads(out)
    assert summary and set(summary.values()) == {"pass"}
    assert len(list((tmp_path / "rep").glob("*.json"))) == len(summary)


def test_inconsistency_exit(monkeypatch, capsys):
    import permtri.cli as cli
    monkeypatch.setattr(cli, "is_pp_bruteforce", lambda ext, pair: False)
    code, out, _ = run(capsys, "verify-pair", "--m", "3", "--alpha", "1:0", "--beta", "1:0")
    assert code == EXIT_INCONSISTENT
    assert not json.loads(out)["consistent"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "permtri.cli", "verify-pair", "--m", "3",
                           "--alpha", "1:0", "--beta", "1:0"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["case_id"] == 3
