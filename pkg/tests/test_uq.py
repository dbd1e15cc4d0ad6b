from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcanon.canonical import MinorSpec, quantum_determinant, quantum_minor
from qcanon.laurent import ONE, ZERO, LaurentPoly, q_power
from qcanon.qmatrix import AlgebraElement, Word, generator, monomial, multiply, straighten
from qcanon.uq import (
    GeneratorSymbol,
    NotAWeightVector,
    UElement,
    WeightVector,
    act,
    act_element,
    act_L,
    act_on_word,
    act_R,
    antipode,
    antipode_inverse,
    coproduct,
    counit,
    generators,
    natural_rep,
    omega,
    parse_generator,
    rep_of,
    theta,
    weight_of,
)
from qcanon.verify import _u_relations
from strategies import elements, exponent_matrices

g = parse_generator
U = UElement.gen


def x(n, i, j):
    return generator(n, i, j)


def test_parse_generator():
    assert g("E1") == GeneratorSymbol("E", 1)
    assert g("K2inv") == GeneratorSymbol("Kinv", 2) or g("Kinv2") == GeneratorSymbol("Kinv", 2)
    assert str(g("F3")) == "F3"
    for bad in ["", "G1", "E0", "E", "K-1"]:
        with pytest.raises(ValueError):
            g(bad)


def test_generator_range_check():
    with pytest.raises(ValueError):
        natural_rep(g("E2"), 2)


def test_coproduct_shapes():
    E, F, K = g("E1"), g("F1"), g("K1")
    assert len(coproduct(E)) == 2 and len(coproduct(F)) == 2
    assert coproduct(K) == [(U(K), U(K))]
    assert counit(E) == counit(F) == 0 and counit(K) == 1


def test_natural_rep_examples():
    E, F, K, Ki = (natural_rep(g(s), 2) for s in ("E1", "F1", "K1", "Kinv1"))
    assert E == [[ZERO, ONE], [ZERO, ZERO]]
    assert F == [[ZERO, ZERO], [ONE, ZERO]]
    assert K == [[q_power(1), ZERO], [ZERO, q_power(-1)]]
    assert rep_of(U(g("K1")) * U(g("E1")) * U(g("Kinv1")), 2) == rep_of(U(g("E1")) * q_power(2), 2)
    comm = rep_of(U(g("E1")) * U(g("F1")) - U(g("F1")) * U(g("E1")), 2)
    k2 = rep_of(U(g("K1")) * U(g("K1")) - U(g("Kinv1")) * U(g("Kinv1")), 2)
    qq = q_power(2) - q_power(-2)
    assert k2 == [[qq, ZERO], [ZERO, -qq]]
    assert [[c * qq for c in row] for row in comm] == k2
    assert rep_of(U(g("E1")) * U(g("E1")), 2) == [[ZERO, ZERO], [ZERO, ZERO]]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_natural_rep_satisfies_relations(n):
    for name, lhs, rhs in _u_relations(n):
        assert rep_of(lhs, n) == rep_of(rhs, n), name


def test_k_eigenvalue_is_forced_by_the_ideal():
    # R_E(x11 x12 - q^2 x12 x11) = (lam^2 - q^2) x11^2 when K acts on x11 by lam
    f = multiply(x(2, 1, 1), x(2, 1, 2)) - multiply(x(2, 1, 2), x(2, 1, 1)).scale(q_power(2))
    assert f.is_zero()
    lam = act_R(g("K1"), x(2, 1, 1)).coefficient((1, 0, 0, 0))
    assert lam == q_power(1)
    w = Word(2, ((1, 1), (1, 2)))
    w2 = Word(2, ((1, 2), (1, 1)), q_power(2))
    image = act_on_word("R", g("E1"), w) - act_on_word("R", g("E1"), w2)
    assert image.is_zero()
    assert lam * lam - q_power(2) == ZERO
    assert q_power(4) - q_power(2) != ZERO


def test_action_examples():
    assert act_R(g("K1"), x(2, 1, 1)) == x(2, 1, 1).scale(q_power(1))
    assert act_R(g("E1"), x(2, 1, 2)) == x(2, 1, 1)
    assert act_R(g("F1"), x(2, 1, 1)) == x(2, 1, 2)
    assert act_R(g("E1"), x(2, 1, 1)).is_zero()
    assert act_L(g("E1"), x(2, 2, 1)).is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_actions_preserve_the_ideal(n):
    letters = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    for a, b in itertools.product(letters, repeat=2):
        if a <= b:
            continue
        w = Word(n, (a, b))
        for side in ("L", "R"):
            for gen in generators(n):
                assert act_on_word(side, gen, w) == act(side, gen, straighten(w))


@settings(max_examples=25)
@given(elements(3, 3), st.sampled_from(["L", "R"]))
def test_module_relations(f, side):
    for name, lhs, rhs in _u_relations(3):
        assert act_element(side, lhs, f) == act_element(side, rhs, f), name


@settings(max_examples=40)
@given(elements(3, 3), st.sampled_from(generators(3)), st.sampled_from(generators(3)))
def test_left_and_right_commute(f, a, b):
    assert act_L(a, act_R(b, f)) == act_R(b, act_L(a, f))


@settings(max_examples=30)
@given(elements(3, 2), elements(3, 2), st.sampled_from(["E1", "E2"]))
def test_R_E_is_a_twisted_derivation(f, h, name):
    E = g(name)
    K = g("K" + name[1:])
    K2f = act_R(K, act_R(K, f))
    lhs = act_R(E, multiply(f, h))
    rhs = multiply(act_R(E, f), h) + multiply(K2f, act_R(E, h))
    assert lhs == rhs


@settings(max_examples=30)
@given(elements(3, 3), st.sampled_from(["L", "R"]))
def test_K_and_Kinv_are_inverse(f, side):
    for i in (1, 2):
        assert act(side, g(f"Kinv{i}"), act(side, g(f"K{i}"), f)) == f


def test_det_is_invariant():
    for n in (2, 3):
        d = quantum_determinant(n)
        for gen in generators(n):
            expected = d if gen.kind in ("K", "Kinv") else AlgebraElement(n)
            assert act_L(gen, d) == expected
            assert act_R(gen, d) == expected


def test_omega_and_theta():
    assert omega(g("E2")) == g("F2")
    assert omega(g("K1")) == g("K1")
    assert theta(g("K1")) == U(g("Kinv1"))
    K2 = U(g("Kinv1")) * U(g("Kinv1"))
    assert theta(g("E1")) == K2 * U(g("F1")) * -1
    assert theta(g("F1")) == U(g("E1")) * U(g("K1")) * U(g("K1")) * -1


def test_theta_squared_is_a_K_conjugate():
    K2 = U(g("K1")) * U(g("K1"))
    assert theta(theta(g("E1"))) == K2 * U(g("E1")) * K2
    assert theta(theta(g("K1"))) == U(g("K1"))


def test_antipode_inverse():
    for s in ("E1", "F1", "K1", "Kinv1", "E2"):
        assert antipode(antipode_inverse(g(s))) == U(g(s))
        assert antipode_inverse(antipode(g(s))) == U(g(s))


def test_weight_examples():
    assert weight_of(x(2, 1, 1), "R").sl == (1,)
    assert weight_of(x(2, 1, 1), "R").gl == (1, 0)
    d = quantum_determinant(3)
    assert weight_of(d, "R").sl == (0, 0) and weight_of(d, "L").sl == (0, 0)
    assert weight_of(d, "R").gl == (1, 1, 1)
    for s in (1, 2):
        delta = quantum_minor(MinorSpec(tuple(range(4 - s, 4)), tuple(range(1, s + 1))), 3)
        expected = tuple(1 if k == s - 1 else 0 for k in range(2))
        assert weight_of(delta, "R").sl == expected


@given(exponent_matrices(3, 4))
def test_monomial_weights(A):
    from qcanon.qmatrix import co, ro

    f = monomial(3, A)
    if not f or not sum(A):
        return
    assert weight_of(f, "R").gl == co(A)
    assert weight_of(f, "L").gl == tuple(-v for v in ro(A))


def test_weight_failure():
    with pytest.raises(NotAWeightVector):
        weight_of(x(2, 1, 1) + x(2, 1, 2), "R")
    with pytest.raises(NotAWeightVector):
        weight_of(AlgebraElement(2), "L")


def test_weight_vector():
    w = WeightVector.from_fundamental((1, 1))
    assert w.gl == (2, 1, 0) and w.sl == (1, 1) and w.is_dominant()
    assert not WeightVector((0, 1)).is_dominant()
    assert (-w).gl == (-2, -1, 0)
