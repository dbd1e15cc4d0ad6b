"""The twelve acceptance criteria, one verification suite each.

Each test prints a single ``[PASS]``/``[FAIL]`` line (shown even when pytest
captures output).  Running this file directly prints the same twelve lines.
"""

from __future__ import annotations

import sys

import pytest

from qcanon import kernel, verify

SEED = 42

CRITERIA = [
    (1, "relations and confluence", "relations"),
    (2, "bar structure", "bar"),
    (3, "canonical basis", "canonical"),
    (4, "minors and sigma", "minors"),
    (5, "power identity", "power"),
    (6, "positivity", "positivity"),
    (7, "U_q actions", "uq"),
    (8, "Kashiwara layer", "kashiwara"),
    (9, "Borel-Weil dimensions", "borel_weil"),
    (10, "invariant completeness", "invariants"),
    (11, "homogeneous-space generation", "homogeneous"),
    (12, "det_q shift", "detq_shift"),
]


def line_for(number: int, title: str, result) -> str:
    status = "PASS" if result.passed else "FAIL"
    return f"[{status}] criterion {number:2d} ({title}): {result.summary} [{result.seconds:.1f}s, {kernel.BACKEND}]"


@pytest.mark.parametrize("number,title,suite", CRITERIA, ids=[s for _, _, s in CRITERIA])
def test_criterion(number, title, suite, capsys):
    result = verify.run_suite(suite, seed=SEED)
    with capsys.disabled():
        print("\n" + line_for(number, title, result))
    assert result.passed, result.details


def main() -> int:
    ok = True
    for number, title, suite in CRITERIA:
        result = verify.run_suite(suite, seed=SEED)
        print(line_for(number, title, result), flush=True)
        ok &= result.passed
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
