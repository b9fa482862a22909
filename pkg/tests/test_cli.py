import json
import subprocess
import sys

import pytest

from tautzero.cli import dumps, main, run


def invoke(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_cover_decide_counterexample(capsys):
    code, out, _ = invoke(["cover", "decide", "--k", "30", "--mono", "2,3,25"], capsys)
    report = json.loads(out)
    assert code == 0
    assert report["command"] == "cover decide"
    assert report["result"]["verdict"] == "Inconclusive"
    assert report["result"]["c1"] == -20
    assert report["inputs"] == {"k": 30, "mono": [2, 3, 25]}


def test_ms_trace(capsys):
    code, out, _ = invoke(["ms", "--e", "30", "--f", "25", "--trace"], capsys)
    report = json.loads(out)
    assert code == 0
    assert report["result"]["ms"] == 50
    steps = report["result"]["trace"]["steps"]
    assert steps[0] == {"e": 30, "f": 25, "mult": 25}
    assert sum(s["mult"] for s in steps if s["mult"] >= 2) == 50


def test_strata_verify_r0(capsys):
    code, out, _ = invoke(["strata", "verify-r0", "--genus", "2", "--markings", "0"], capsys)
    report = json.loads(out)
    assert code == 0
    assert report["result"]["num_graphs"] == 7
    assert report["checks"] and all(c["passed"] for c in report["checks"])


@pytest.mark.parametrize("argv", [
    ["cover", "validate", "--k", "4", "--mono", "1,1,1"],
    ["cover", "decide", "--k", "5", "--mono", "0,2,3"],
    ["ms", "--e", "-1", "--f", "2"],
    ["strata", "enum", "--genus", "1", "--markings", "0"],
    ["tnum", "bound", "--genus", "20", "--markings", "1"],
    ["sym", "verify", "--n", "9"],
    ["blowup", "verify-bound"],
])
def test_input_errors_exit_2(argv, capsys):
    code, out, err = invoke(argv, capsys)
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_usage_error_exit_2(capsys):
    code, out, err = invoke(["cover", "explode", "--k", "3", "--mono", "1,1,1"], capsys)
    assert code == 2
    assert "usage:" in err


def test_failed_check_exit_1(monkeypatch, capsys):
    from tautzero import cycles
    monkeypatch.setattr(cycles, "verify_blockwise_identity", lambda p, limit=6: False)
    code, out, _ = invoke(["sym", "verify", "--n", "3"], capsys)
    assert code == 1
    assert json.loads(out)["checks"][0]["passed"] is False


@pytest.mark.parametrize("argv", [
    ["cover", "invariants", "--k", "30", "--mono", "2,3,25"],
    ["cover", "normalize", "--k", "5", "--mono", "2,2,1"],
    ["cover", "orbit", "--k", "30", "--mono", "2,3,25"],
    ["blowup", "verify-bound", "--max", "40"],
    ["blowup", "verify-inequality", "--kmax", "20", "--jobs", "2"],
    ["strata", "enum", "--genus", "1", "--markings", "2"],
    ["sym", "coeffs", "--n", "4"],
    ["sym", "verify", "--n", "4"],
    ["tnum", "bound", "--genus", "1", "--markings", "11"],
    ["tnum", "verify", "--genus", "13", "--markings", "10"],
    ["trade", "--group", "2x3", "--anchor", "0:0", "--start", "1:2,0:1"],
])
def test_reports_round_trip(argv, capsys):
    code, out, _ = invoke(argv, capsys)
    assert code == 0
    report = json.loads(out)
    assert set(report) == {"command", "inputs", "result", "checks", "version"}
    assert dumps(report) + "\n" == out
    if "verify" in " ".join(argv) or argv[0] == "trade":
        assert report["checks"]


def test_report_deterministic():
    argv = ["strata", "verify-r0", "--genus", "1", "--markings", "3"]
    assert dumps(run(argv)[1]) == dumps(run(argv)[1])


def test_quiet(capsys):
    code, out, _ = invoke(["cover", "decide", "--k", "5", "--mono", "1,1,3", "--quiet"], capsys)
    assert code == 0 and out == "TautologicalCertified\n"
    _, out, _ = invoke(["sym", "coeffs", "--n", "3", "--quiet"], capsys)
    assert out == "1 -1 -1 -1 2\n"


def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = invoke(["tnum", "bound", "--genus", "13", "--markings", "5", "--out", str(path)],
                          capsys)
    assert code == 0
    assert json.loads(path.read_text())["result"]["bound"] == 66
    assert path.read_text() == out


def test_trade_z7(capsys):
    code, out, _ = invoke(["trade", "--group", "7", "--anchor", "0", "--start", "3,5"], capsys)
    assert code == 0
    assert json.loads(out)["result"]["tuples"] == [[[3], [5]], [[4], [5]], [[0], [4]]]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tautzero", "cover", "decide", "--k", "30", "--mono", "2,3,25"],
        capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["c1"] == -20
    proc = subprocess.run([sys.executable, "-m", "tautzero", "strata"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2 and "usage" in proc.stderr
