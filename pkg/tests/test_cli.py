from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from qcanon import cli, verify
from qcanon.canonical import quantum_determinant
from qcanon.laurent import q_power
from qcanon.qmatrix import AlgebraElement, monomial, multiply
from qcanon.verify import CheckResult

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

GOLDEN_CASES = {
    "mul_x12_x11": ["mul", str(DATA / "x12.json"), str(DATA / "x11.json")],
    "canonical_n2_11": ["canonical", "--n", "2", "--ro", "1,1", "--co", "1,1"],
    "canonical_n3_111": ["canonical", "--n", "3", "--ro", "1,1,1", "--co", "1,1,1"],
    "minor_n3_23_12": ["minor", "--n", "3", "--rows", "2,3", "--cols", "1,2"],
    "module_n3_10": ["module", "--n", "3", "--lambda", "1,0"],
    "invariants_n2_F1": ["invariants", "--n", "2", "--S", "F1", "--truncation", "2", "--seed", "5"],
    "kashiwara_E1_x21": ["kashiwara", "--op", "E", "--i", "1", str(DATA / "x21.json")],
}


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def as_element(out: str) -> AlgebraElement:
    return AlgebraElement.from_json(json.loads(out))


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name, capsys):
    code, out, _ = run(GOLDEN_CASES[name], capsys)
    assert code == 0
    path = GOLDEN / f"{name}.json"
    if os.environ.get("QCANON_REGEN_GOLDEN"):
        path.write_text(out)
    assert out == path.read_text()


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_deterministic(name, capsys):
    first = run(GOLDEN_CASES[name], capsys)[1]
    second = run(GOLDEN_CASES[name], capsys)[1]
    assert first == second


def test_mul_example(capsys):
    code, out, _ = run(["mul", str(DATA / "x12.json"), str(DATA / "x11.json")], capsys)
    assert code == 0
    assert as_element(out) == monomial(2, [[1, 1], [0, 0]], q_power(-2))


def test_mul_by_unit(capsys):
    code, out, _ = run(["mul", str(DATA / "det2.json"), str(DATA / "one2.json")], capsys)
    assert code == 0 and as_element(out) == quantum_determinant(2)


def test_mul_det_squared(capsys):
    code, out, _ = run(["mul", str(DATA / "det2.json"), str(DATA / "det2.json")], capsys)
    d = quantum_determinant(2)
    assert code == 0 and as_element(out) == multiply(d, d)
    assert all(sum(A) == 4 for A in as_element(out).terms)


def test_text_format(capsys):
    code, out, _ = run(["mul", str(DATA / "x12.json"), str(DATA / "x11.json"), "--format", "text"], capsys)
    assert code == 0 and out.strip() == "(q^-2)*x^[x[1,1] x[1,2]]"


def test_canonical_input_is_accepted(capsys):
    code, out, _ = run(["bar", str(DATA / "b_id2.json")], capsys)
    assert code == 0
    assert as_element(out).to_plain() == quantum_determinant(2)


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(["canonical", "--n", "2", "--ro", "0,0", "--co", "0,0", "-o", str(target)], capsys)
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["elements"] == [{"top": [[0, 0], [0, 0]], "coeffs": [{"matrix": [[0, 0], [0, 0]], "h": [[0, "1"]]}]}]


def test_canonical_contains_det3(capsys):
    code, out, _ = run(GOLDEN_CASES["canonical_n3_111"], capsys)
    tops = [e["top"] for e in json.loads(out)["elements"]]
    assert [[1, 0, 0], [0, 1, 0], [0, 0, 1]] in tops
    assert len(tops) == 6


def test_act(capsys):
    code, out, _ = run(["act", "--side", "R", "--generator", "E1", str(DATA / "x12.json")], capsys)
    assert code == 0 and as_element(out) == monomial(2, [[1, 0], [0, 0]])
    code, _, err = run(["act", "--side", "R", "--generator", "E3", str(DATA / "x12.json")], capsys)
    assert code == 1 and "error" in err


def test_kashiwara_reports_agreement(capsys):
    code, out, _ = run(GOLDEN_CASES["kashiwara_E1_x21"], capsys)
    data = json.loads(out)
    assert code == 0
    assert all(r["action_vanishes"] == r["operator_vanishes"] for r in data["kernel_agreement"])
    assert AlgebraElement.from_json(data["result"]).to_plain() == monomial(2, [[1, 0], [0, 0]])


def test_invariants_report_shape(capsys):
    code, out, _ = run(GOLDEN_CASES["invariants_n2_F1"], capsys)
    data = json.loads(out)
    assert set(data) == {"S", "truncation", "seed", "blocks", "checks"}
    assert data["checks"]["string_property"] == "pass" and data["seed"] == 5


def test_invariants_all_generators_truncation_zero(capsys):
    code, out, _ = run(["invariants", "--n", "3", "--S", "E1,E2,F1,F2,K1,K2", "--truncation", "0"], capsys)
    data = json.loads(out)
    assert code == 0 and [b["members"] for b in data["blocks"]] == [[[[0, 0, 0], [0, 0, 0], [0, 0, 0]]]]


def test_invariants_theta(capsys):
    code, out, _ = run(["invariants", "--n", "3", "--theta", "1", "--truncation", "3", "--samples", "3"], capsys)
    data = json.loads(out)
    assert code == 0 and "K1" in data["S"]


def test_module(capsys):
    code, out, _ = run(GOLDEN_CASES["module_n3_10"], capsys)
    data = json.loads(out)
    assert code == 0 and data["dimension"] == 3
    assert set(data["action"]) == {"E1", "E2", "F1", "F2", "K1", "K2"}


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["canonical", "--n", "2", "--ro", "1,1", "--co", "2,1"], "differ"),
        (["canonical", "--n", "2", "--ro", "1", "--co", "1"], "entries"),
        (["canonical", "--n", "2", "--ro", "a,b", "--co", "1,1"], "integers"),
        (["canonical", "--n", "3", "--ro", "3,3,3", "--co", "3,3,3", "--max-block-size", "10"], "max-block-size"),
        (["module", "--n", "3", "--lambda", "1"], "coordinates"),
        (["module", "--n", "3", "--lambda=-1,0"], "dominant"),
        (["invariants", "--n", "2", "--S", "X9"], ""),
        (["invariants", "--n", "2", "--truncation", "-1"], "nonnegative"),
        (["verify", "--suite", "nope"], "unknown suite"),
        (["mul", "missing.json", "missing.json"], "cannot read"),
        (["kashiwara", "--op", "E", "--i", "2", str(DATA / "x21.json")], "--i"),
        (["canonical", "--n", "0", "--ro", "", "--co", ""], "positive"),
    ],
)
def test_usage_errors(argv, needle, capsys):
    code, _, err = run(argv, capsys)
    assert code == 1
    assert needle in err


def test_argparse_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["canonical", "--n", "2"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        cli.main([])
    assert info.value.code == 1


def test_json_error_position(capsys):
    code, _, err = run(["bar", str(DATA / "broken.json")], capsys)
    assert code == 1
    assert "broken.json:3:13" in err


def test_bad_element_content(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"n": 2, "basis": "plain", "terms": [{"matrix": [[1]], "coeff": [[0, "1"]]}]}))
    code, _, err = run(["bar", str(p)], capsys)
    assert code == 1 and "bad.json" in err


def test_verify_single_suite(capsys):
    code, out, _ = run(["verify", "--suite", "power", "--seed", "42"], capsys)
    data = json.loads(out)
    assert code == 0 and data["complete"] and data["seed"] == 42
    assert [s["name"] for s in data["suites"]] == ["power"]


def test_verify_positivity_text(capsys):
    code, out, _ = run(["verify", "--suite", "positivity", "--seed", "42", "--format", "text"], capsys)
    assert code == 0 and out.startswith("[PASS] positivity")


def test_verify_failure_exit_2(monkeypatch, capsys):
    monkeypatch.setitem(verify.SUITES, "broken", lambda: CheckResult("broken", False, "forced failure"))
    code, out, _ = run(["verify", "--suite", "broken"], capsys)
    assert code == 2
    assert json.loads(out)["suites"][0]["passed"] is False


def test_verify_timeout_gives_partial_report(monkeypatch, capsys):
    import time

    def slow():
        time.sleep(5)
        return CheckResult("slow", True, "")

    monkeypatch.setitem(verify.SUITES, "slow", slow)
    code, out, _ = run(["verify", "--suite", "slow", "--timeout", "0.2"], capsys)
    data = json.loads(out)
    assert code == 2 and data["complete"] is False and data["suites"] == []


def test_verify_is_seed_deterministic(capsys):
    a = run(["verify", "--suite", "relations", "--seed", "3"], capsys)[1]
    b = run(["verify", "--suite", "relations", "--seed", "3"], capsys)[1]
    assert a == b and json.loads(a)["suites"][0]["details"]["seed"] == 3


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "qcanon.cli", "minor", "--n", "2", "--rows", "1,2", "--cols", "1,2", "--format", "text"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "x[1,1] x[2,2]" in out.stdout
