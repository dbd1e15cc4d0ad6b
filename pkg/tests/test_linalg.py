from __future__ import annotations

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import q, to_sympy
from qcanon import linalg
from qcanon.laurent import ONE, ZERO, LaurentPoly, q_power

small = st.dictionaries(st.integers(-3, 3), st.integers(-3, 3), max_size=2).map(LaurentPoly)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=m, max_size=m)
        )
    )


def sympy_rank(rows):
    return sympy.Matrix([[to_sympy(c) for c in r] for r in rows]).rank(simplify=True)


@settings(max_examples=60)
@given(matrices())
def test_rank_matches_sympy(rows):
    assert linalg.rank(rows) == sympy_rank(rows)


@settings(max_examples=30)
@given(matrices(3, 3), matrices(3, 3))
def test_rank_of_dependent_rows(a, b):
    # append combinations of existing rows: rank must not change
    rows = a
    c = len(rows[0])
    combo = [sum((r[j] * q_power(k) for k, r in enumerate(rows)), ZERO) for j in range(c)]
    assert linalg.rank(rows + [combo]) == linalg.rank(rows)


def test_kernel_dimension():
    rows = [[ONE, q_power(1)], [q_power(1), q_power(2)]]
    assert linalg.kernel_dimension(rows, 2) == 1
    assert linalg.kernel_dimension([], 3) == 3
    assert linalg.kernel_dimension([[ONE, ZERO], [ZERO, ONE]], 2) == 0


def test_span_helpers():
    v1 = {"a": ONE, "b": q_power(2)}
    v2 = {"b": ONE}
    v3 = {"a": q_power(-1), "b": q_power(1) + q_power(-3)}
    assert linalg.span_rank([v1, v2]) == 2
    assert linalg.span_contains([v1, v2], [v3])
    assert not linalg.span_contains([v1], [v2])
    assert linalg.span_rank([]) == 0


def test_echelon_pivots():
    rows = [[ZERO, ONE, ONE], [ZERO, q_power(1), q_power(1)], [ONE, ZERO, ZERO]]
    _, pivots = linalg.echelon(rows)
    assert pivots == [0, 1]
