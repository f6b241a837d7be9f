import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from golden import CASES, DATA, FIXED, dump
from upfilter.cli import main


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def in_data_dir(monkeypatch):
    monkeypatch.chdir(DATA)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    argv, expected = CASES[name]
    code, out, err = run(argv)
    assert code == 0, err
    assert out == dump(expected())


@pytest.mark.parametrize("name", sorted(CASES))
def test_repeatable(name):
    argv, _ = CASES[name]
    assert run(argv) == run(argv)


def test_fixed_values():
    out = json.loads(run(CASES["upset-intersect"][0])[1])
    assert out == FIXED["upset-intersect"]
    assert json.loads(run(CASES["filter-select"][0])[1])["index"] == FIXED["filter-select"]
    data = json.loads(run(CASES["ultralimit-alt01"][0])[1])
    point, levels = FIXED["ultralimit-alt01"]
    lo, hi = map(Fraction, data["interval"])
    assert lo <= point < hi and len(data["trace"]) == levels
    assert json.loads(run(CASES["filter-verify"][0])[1])["checks"][0]["passed"]


def test_usage_errors_exit_1():
    for argv in ([], ["upset"], ["upset", "member", "evens.json"], ["bogus"],
                 ["filter", "new", "--tiebreak", "coin"], ["upset", "member", "nofile.json", "1"]):
        code, out, err = run(argv)
        assert code == 1 and out == ""
        assert json.loads(err)["error"] == "UsageError"


@pytest.mark.parametrize(
    "argv, error",
    [
        (["filter", "select", "trivial.json", "evens.json", "mult3.json"], "NotAPartition"),
        (["term", "sites", "lam x:0. U (lam j:0. sub j x)"], "NonUPArgument"),
        (["upset", "intersect", '{"period": 997, "residues": [0]}',
          '{"period": 991, "residues": [0]}'], None),
        (["upset", "intersect", '{"period": 9973, "residues": [0]}',
          '{"period": 9967, "residues": [0]}'], "PeriodOverflow"),
        (["term", "check", "add 1"], None),
        (["term", "eval", "add 1 ("], "ParseError"),
        (["term", "eval", "S S"], "TermTypeError"),
        (["term", "eval", "lam x:0. x"], "TermTypeError"),
        (["mu", "via-filter", "--zeros", "zeros.json", "--f", "lam x:0. 1"], "CertificateMismatch"),
        (["upset", "kth", "zeros.json", "0"], None),
        (["upset", "kth", '{"exceptions": [1], "threshold": 2}', "3"], "NotEnoughElements"),
        (["upset", "member", '{"period": 0}', "1"], "ValueError"),
        (["eliminate", "--term", "rec 100000 0 (lam r:0. lam i:0. S r)", "--fuel", "100"],
         "FuelExhausted"),
    ],
)
def test_domain_errors_exit_2(argv, error):
    code, out, err = run(argv)
    if error is None:
        assert code == 0
        return
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == error


def test_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"tiebreak": "complement-first", "seed": 3}))
    code, out, _ = run(["--config", str(cfg), "filter", "extend", "trivial.json", "evens.json"])
    assert code == 0 and json.loads(out)["branch"] == "1"
    # flags override the file
    code, out, _ = run(["--config", str(cfg), "--tiebreak", "bit0",
                        "filter", "extend", "trivial.json", "evens.json"])
    assert json.loads(out)["branch"] == "0"
    cfg.write_text(json.dumps({"fuel": 0}))
    assert run(["--config", str(cfg), "filter", "new"])[0] == 2


def test_trace_file_embeds_config(tmp_path):
    trace = tmp_path / "trace.json"
    code, out, _ = run(["eliminate", "--term", "nested.term", "--inputs", "x=1",
                        "--seed", "5", "--trace", str(trace)])
    assert code == 0 and trace.read_text() == out
    assert json.loads(out)["config"]["seed"] == 5


def test_console_entry_point():
    argv, expected = CASES["upset-intersect"]
    proc = subprocess.run(
        [sys.executable, "-m", "upfilter", *argv], cwd=DATA, capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout == dump(expected())
