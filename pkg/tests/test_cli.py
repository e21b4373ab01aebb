import json
import subprocess
import sys

import pytest

from ltlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def test_fgl_ptypical(capsys):
    code, rep = run_json(capsys, "fgl", "--p", "2", "--n", "1", "--degree", "8",
                         "--check-ptypical")
    assert code == 0
    assert rep["schema"] == "1" and rep["seed"] == 0
    assert rep["checks"]["ptypical"] == "pass"


def test_fgl_other_checks(capsys):
    code, rep = run_json(capsys, "fgl", "--p", "3", "--n", "2", "--degree", "11",
                         "--check-assoc", "--check-frobenius", "--endo", "2")
    assert code == 0
    assert set(rep["checks"].values()) == {"pass"}
    assert {"associative", "frobenius_relation"} <= set(rep["checks"])
    assert "endo" in rep


def test_qsym_mul(capsys):
    code, rep = run_json(capsys, "qsym", "mul", "(1)", "(1)")
    assert code == 0
    assert rep["result"] == "2*M(1,1) + M(2)"
    code, out, _ = run(capsys, "qsym", "mul", "(1)", "(1)", "--format", "text")
    assert out.strip() == "2*M(1,1) + M(2)"


def test_qsym_other_ops(capsys):
    assert run_json(capsys, "qsym", "antipode", "(1,1)")[1]["result"] == "M(1,1) + M(2)"
    assert run_json(capsys, "qsym", "embed", "m(2,1)")[1]["result"] == "M(1,2) + M(2,1)"
    comul = run_json(capsys, "qsym", "comul", "(1,2)")[1]["result"]
    assert comul == "M()#M(1,2) + M(1)#M(2) + M(1,2)#M()"
    dims = run_json(capsys, "qsym", "dims", "4")[1]["dims"]
    assert [d["qsym"] for d in dims] == [1, 2, 4, 8]


def test_divalg_relations(capsys):
    code, rep = run_json(capsys, "divalg", "--p", "2", "--n", "3", "--check-relations",
                         "F w *", '{"op": "pow", "args": ["F", 3]}')
    assert code == 0 and rep["pass"]
    assert rep["results"][1]["valuation"] == "1"


def test_mzv(capsys):
    code, rep = run_json(capsys, "mzv", "mzv", "(2,1)")
    assert code == 0
    assert rep["value"].startswith("1.2020569031595942853997381")
    code, rep = run_json(capsys, "mzv", "gamma-series", "8", "--check")
    assert code == 0 and rep["pass"]


def test_flatconn(capsys):
    code, rep = run_json(capsys, "flatconn", "--beta", "e1+e2", "--degree", "6", "--check")
    assert code == 0 and rep["flatness"]["flat"]


@pytest.mark.parametrize("argv", [
    ["fgl", "--p", "4"],
    ["fgl", "--digits", "5"],
    ["qsym", "mul", "(1)"],
    ["qsym", "frobnicate"],
    ["flatconn", "--beta", "e1 +"],
    ["divalg", "F F F F +"],
    [],
    ["nosuch"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    if argv:
        assert "error" in err and out == ""


def test_env_override_and_flag_precedence(capsys, monkeypatch):
    monkeypatch.setenv("LTLAB_P", "3")
    monkeypatch.setenv("LTLAB_DEGREE", "5")
    rep = run_json(capsys, "fgl", "--check-ptypical")[1]
    assert rep["config"]["p"] == 3 and rep["config"]["degree"] == 5
    rep = run_json(capsys, "fgl", "--p", "5", "--degree", "7", "--check-ptypical")[1]
    assert rep["config"]["p"] == 5
    monkeypatch.setenv("LTLAB_P", "x")
    assert run(capsys, "fgl")[0] == 2


def test_tsv_output(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "2", "--format", "tsv")
    assert code == 0
    assert out.splitlines()[0] == "criterion\tname\tpass"


def test_deterministic_json_bytes():
    cmd = [sys.executable, "-m", "ltlab", "selftest", "--only", "3", "7", "--seed", "5"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
    assert json.loads(a)["seed"] == 5
