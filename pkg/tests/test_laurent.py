from __future__ import annotations

import json

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from oracles import from_sympy, q, to_sympy
from qcanon.laurent import (
    InexactDivision,
    LaurentPoly,
    SkewSymmetryError,
    add,
    bar,
    exact_quotient,
    gauss_binomial,
    mul,
    q_integer,
    q_power,
    solve_skew,
)
from strategies import laurent, skew

P = LaurentPoly


def test_add_examples():
    assert add(P({2: 1, 0: 1}), P({2: -1})) == P(1)
    p = P({3: 4, -1: 2})
    assert add(P(), p) == p
    assert add(P({-2: 1, 0: 3}), P({-2: 1, 0: -3})) == P({-2: 2})


def test_mul_examples():
    assert mul(P({1: 1, -1: -1}), P({1: 1, -1: 1})) == P({2: 1, -2: -1})
    p = P({5: 2, -3: 7})
    assert mul(p, P(1)) == p
    assert mul(P({2: 1, -2: -1}), P({2: 1, -2: -1})) == P({4: 1, 0: -2, -4: 1})


def test_bar_examples():
    assert bar(P({2: 1, 0: 3})) == P({-2: 1, 0: 3})
    assert bar(P({1: 1, -1: -1})) == P({-1: 1, 1: -1})
    assert bar(P(5)) == P(5)


def test_zero_coefficients_are_dropped():
    p = P({0: 0, 3: 2, 4: 0})
    assert p.terms == {3: 2}
    assert (P({1: 1}) - P({1: 1})).is_zero()
    assert not P()


def test_big_coefficients_stay_exact():
    p = P({1: 1, 0: 1})
    big = p ** 80
    assert big.coefficient(40) == sympy.binomial(80, 40)


@given(laurent, laurent, laurent)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(laurent, laurent)
def test_arithmetic_matches_sympy(a, b):
    assert from_sympy(to_sympy(a) * to_sympy(b)) == a * b
    assert from_sympy(to_sympy(a) - to_sympy(b)) == a - b
    assert from_sympy(to_sympy(a).subs(q, 1 / q)) == a.bar()


@given(laurent, laurent)
def test_bar_is_an_involutive_ring_map(a, b):
    assert a.bar().bar() == a
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()


@given(laurent)
def test_no_stored_zero(a):
    assert all(c != 0 for c in a.terms.values())


@given(laurent)
def test_json_round_trip(a):
    data = json.loads(json.dumps(a.to_json()))
    assert P.from_json(data) == a
    exps = [e for e, _ in data]
    assert exps == sorted(exps)
    assert all(isinstance(c, str) for _, c in data)


def test_json_format():
    assert P({-2: 1, 0: 3}).to_json() == [[-2, "1"], [0, "3"]]
    assert P().to_json() == []


def test_from_json_rejects_junk():
    with pytest.raises((ValueError, TypeError)):
        P.from_json([[0, "abc"]])
    with pytest.raises((ValueError, TypeError)):
        P.from_json({"0": 1})


def test_gauss_binomial_examples():
    assert gauss_binomial(2, 1, -4) == P({0: 1, -4: 1})
    for s in range(6):
        assert gauss_binomial(s, 0, -4) == P(1)
    assert gauss_binomial(3, 2, -4) == P({0: 1, -4: 1, -8: 1})


def test_gauss_binomial_rejects_k_above_n():
    with pytest.raises(ValueError, match="binomial undefined"):
        gauss_binomial(2, 3, 2)


@given(st.integers(0, 9), st.integers(0, 9), st.sampled_from([-4, -2, 2, 4]))
def test_gauss_binomial_symmetry_and_pascal(n, k, e):
    if k > n:
        return
    assert gauss_binomial(n, k, e) == gauss_binomial(n, n - k, e)
    if 1 <= k < n:
        v = lambda m: q_power(e * m)
        rhs = gauss_binomial(n - 1, k, e) + v(n - k) * gauss_binomial(n - 1, k - 1, e)
        assert gauss_binomial(n, k, e) == rhs


@given(st.integers(0, 7), st.integers(0, 7))
def test_gauss_binomial_against_sympy_product(n, k):
    if k > n:
        return
    v = q ** -4
    expr = sympy.Integer(1)
    for i in range(1, k + 1):
        expr *= (1 - v ** (n - k + i)) / (1 - v**i)
    assert from_sympy(sympy.cancel(expr)) == gauss_binomial(n, k, -4)


def test_q_integer():
    assert q_integer(1) == P(1)
    assert q_integer(3) == gauss_binomial(3, 1, -4)


def test_solve_skew_examples():
    assert solve_skew(P({2: 1, -2: -1})) == P({2: 1})
    assert solve_skew(P()) == P()
    assert solve_skew(P({2: -1, -2: 1, 6: -1, -6: 1})) == P({2: -1, 6: -1})


def test_solve_skew_rejects_non_skew():
    with pytest.raises(SkewSymmetryError, match="not skew-symmetric"):
        solve_skew(P({2: 1}))
    with pytest.raises(SkewSymmetryError):
        solve_skew(P({0: 1}))


@given(skew)
def test_solve_skew_property(p):
    h = solve_skew(p)
    assert h - h.bar() == p
    assert all(e >= 1 for e in h.terms)


@given(laurent, laurent.filter(bool))
def test_exact_quotient_inverts_multiplication(a, b):
    assert exact_quotient(a * b, b) == a


def test_exact_quotient_rejects_inexact():
    with pytest.raises(InexactDivision):
        exact_quotient(P({0: 1}), P({0: 2}))
    with pytest.raises(InexactDivision):
        exact_quotient(P({2: 1, 0: 1}), P({1: 1, 0: 1}))
    with pytest.raises(ZeroDivisionError):
        exact_quotient(P(1), P())


def test_str_ascending():
    assert str(P({2: 1, 0: 3})) == "3 + q^2"
    assert str(P()) == "0"


def test_units():
    assert q_power(3, -1).is_unit()
    assert not P({1: 1, 0: 1}).is_unit()
    assert q_power(4).inverse() == q_power(-4)
