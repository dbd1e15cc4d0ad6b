from __future__ import annotations

from hypothesis import strategies as st

from qcanon.laurent import LaurentPoly
from qcanon.qmatrix import AlgebraElement

laurent = st.dictionaries(st.integers(-10, 10), st.integers(-40, 40), max_size=6).map(LaurentPoly)

skew = laurent.map(lambda p: p - p.bar())


def exponent_matrices(n: int, max_degree: int):
    def build(cells):
        A = [0] * (n * n)
        for k in cells:
            A[k] += 1
        return tuple(A)

    return st.lists(st.integers(0, n * n - 1), max_size=max_degree).map(build)


def elements(n: int, max_degree: int, basis: str = "plain", max_terms: int = 3):
    return st.dictionaries(
        exponent_matrices(n, max_degree),
        laurent.filter(bool),
        max_size=max_terms,
    ).map(lambda terms: AlgebraElement(n, terms, basis))


def words(n: int, max_len: int):
    letter = st.tuples(st.integers(1, n), st.integers(1, n))
    return st.lists(letter, max_size=max_len).map(tuple)
