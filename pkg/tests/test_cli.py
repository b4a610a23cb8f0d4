import csv
import io
import json
import subprocess
import sys

import pytest

from tracecodes.cli import main, parse_element
from tracecodes.gf2m import build_field


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_field_info(capsys):
    code, doc = run_json(capsys, "field-info", "--m", "4")
    assert code == 0
    assert doc == {"m": 4, "q": 16, "modulus": "0x13", "modulus_poly": "x^4+x+1",
                   "generator": 2, "trace_mask": doc["trace_mask"], "tables": True}


def test_sum_command(capsys):
    code, doc = run_json(capsys, "sum", "--m", "9", "--h", "3", "--a", "1", "--b", "1")
    assert code == 0
    assert doc["value"] == -64 and doc["lemma"] == "3.1" and doc["verdict"] == "pass"


def test_sum_generator_power(capsys):
    F = build_field(4)
    assert parse_element(F, "g^3") == F.pow(F.generator, 3)
    code, doc = run_json(capsys, "sum", "--m", "4", "--h", "1", "--a", "g^3", "--b", "2")
    assert code == 0 and doc["a"] == 8 and doc["value"] == 8


def test_code_command(capsys):
    code, doc = run_json(capsys, "code", "--m", "12", "--h", "2", "--a", "1")
    assert code == 0
    assert (doc["n"], doc["k"], doc["d"]) == (2048, 12, 960)
    assert doc["dist"] == [{"w": 0, "A": 1}, {"w": 960, "A": 120}, {"w": 1024, "A": 3839}, {"w": 1088, "A": 136}]


def test_code_set_and_matrix(capsys):
    code, doc = run_json(capsys, "code", "--m", "4", "--h", "2", "--a", "0", "--show-set", "--show-matrix")
    assert code == 0
    assert doc["defining_set"][:3] == [1, 2, 3]
    assert doc["generator_columns"][:3] == ["1000", "0100", "1100"]


def test_predict_both(capsys):
    code, doc = run_json(capsys, "predict", "--m", "8", "--h", "2")
    assert code == 0
    assert [c["n"] for c in doc["cases"]] == [95, 160]
    assert doc["cases"][0]["case"] == "zero-mod-four"


def test_verify_case_with_note(capsys):
    code, doc = run_json(capsys, "verify", "--m", "8", "--h", "2", "--a", "0")
    assert code == 0 and doc["verdict"] == "pass"
    assert any("n=95" in n for n in doc["notes"])
    case = doc["cases"][0]
    assert case["checks"]["moments"]["p1"] is True


def test_verify_sweep_and_sums(capsys):
    code, doc = run_json(capsys, "verify", "--sweep", "6", "--sums", "--threads", "2")
    assert code == 0 and doc["verdict"] == "pass"
    assert len(doc["cases"]) == 16
    assert all(s["verdict"] == "pass" for s in doc["sums"])


@pytest.mark.parametrize("argv", [
    ["sum", "--m", "5", "--h", "2", "--a", "1", "--b", "1"],
    ["verify", "--m", "7", "--h", "3"],
    ["code", "--m", "4", "--h", "2", "--a", "0", "--modulus", "x^4+x^2+1"],
    ["field-info", "--m", "30"],
    ["sum", "--m", "4", "--h", "1", "--a", "99", "--b", "1"],
    ["verify", "--m", "4"],
    ["bogus"],
    [],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_budget_refusal(capsys):
    code, out, err = run(capsys, "code", "--m", "16", "--h", "2", "--a", "0")
    assert code == 3 and out == "" and "budget" in err
    code, _, _ = run(capsys, "verify", "--m", "10", "--h", "2", "--budget", "100")
    assert code == 3


def test_csv_matches_json(capsys):
    _, doc = run_json(capsys, "verify", "--m", "9", "--h", "3")
    code, out, _ = run(capsys, "verify", "--m", "9", "--h", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 2
    for row, case in zip(rows, doc["cases"]):
        assert int(row["n"]) == case["n"] and int(row["k"]) == case["k"]
        assert row["dist"] == ";".join(f"{e['w']}:{e['A']}" for e in case["dist"])
        assert row["verdict"] == case["verdict"]


def test_table_format(capsys):
    code, out, _ = run(capsys, "verify", "--m", "8", "--h", "2", "--a", "0", "--format", "table")
    assert code == 0
    assert "verdict: pass" in out and "note:" in out


def test_output_deterministic(capsys):
    first = run(capsys, "verify", "--m", "6", "--h", "2")[1]
    second = run(capsys, "verify", "--m", "6", "--h", "2")[1]
    assert first == second


def test_modulus_recorded(capsys):
    _, doc = run_json(capsys, "code", "--m", "4", "--h", "1", "--a", "1", "--modulus", "0b11001")
    assert doc["modulus"] == "0x19"
    _, ref = run_json(capsys, "code", "--m", "4", "--h", "1", "--a", "1")
    assert doc["dist"] == ref["dist"]


def test_environment_defaults(capsys, monkeypatch):
    monkeypatch.setenv("TRACECODES_FORMAT", "csv")
    monkeypatch.setenv("TRACECODES_BUDGET", "10")
    code, out, _ = run(capsys, "predict", "--m", "9", "--h", "3", "--a", "0")
    assert code == 0 and out.startswith("m,h,a")
    assert run(capsys, "code", "--m", "9", "--h", "3", "--a", "0")[0] == 3
    # flags override the environment
    assert run(capsys, "code", "--m", "9", "--h", "3", "--a", "0", "--budget", "1000000")[0] == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tracecodes", "predict", "--m", "9", "--h", "3", "--a", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["n"] == 288
