"""Exact Laurent polynomials in one variable ``q`` with integer coefficients.

Every coefficient in the library lives in Z[q, q^-1].  A :class:`LaurentPoly`
is an immutable, hashable value; its terms are kept sorted by exponent and
never contain a zero coefficient, so equality, hashing and serialization are
canonical.

>>> p = LaurentPoly({1: 1, -1: -1})
>>> p * LaurentPoly({1: 1, -1: 1})
LaurentPoly('-q^-2 + q^2')
>>> p.bar()
LaurentPoly('q^-1 - q')
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "LaurentPoly",
    "ZERO",
    "ONE",
    "q_power",
    "add",
    "mul",
    "bar",
    "gauss_binomial",
    "q_integer",
    "solve_skew",
    "exact_quotient",
    "SkewSymmetryError",
    "InexactDivision",
]

Scalar = Union[int, "LaurentPoly"]


class SkewSymmetryError(ValueError):
    """Raised by :func:`solve_skew` on input that is not bar-antisymmetric."""


class InexactDivision(ArithmeticError):
    """Raised by :func:`exact_quotient` when the divisor does not divide."""


class LaurentPoly:
    """A finitely supported map exponent -> nonzero integer coefficient."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] | int | None = None):
        if terms is None:
            items: Iterable[tuple[int, int]] = ()
        elif isinstance(terms, int):
            items = ((0, terms),)
        elif isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[int, int] = {}
        for e, c in items:
            if c:
                acc[e] = acc.get(e, 0) + c
        self._terms = {e: acc[e] for e in sorted(acc) if acc[e]}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> LaurentPoly:
        # Caller guarantees: no zero coefficients.
        obj = cls.__new__(cls)
        obj._terms = {e: terms[e] for e in sorted(terms)}
        obj._hash = None
        return obj

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        """A copy of the exponent -> coefficient map, sorted by exponent."""
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def coefficient(self, e: int) -> int:
        return self._terms.get(e, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Top exponent.  Raises ``ValueError`` for the zero polynomial."""
        if not self._terms:
            raise ValueError("degree of zero polynomial")
        return next(reversed(self._terms))

    def valuation(self) -> int:
        """Bottom exponent.  Raises ``ValueError`` for the zero polynomial."""
        if not self._terms:
            raise ValueError("valuation of zero polynomial")
        return next(iter(self._terms))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """True for the units ``±q^m`` of Z[q, q^-1]."""
        return len(self._terms) == 1 and next(iter(self._terms.values())) in (1, -1)

    def in_Zq(self) -> bool:
        """All exponents >= 0."""
        return not self._terms or self.valuation() >= 0

    def in_qZq(self) -> bool:
        """All exponents >= 1 (the zero polynomial qualifies)."""
        return not self._terms or self.valuation() >= 1

    def is_nonnegative(self) -> bool:
        """All coefficients >= 0, i.e. membership in Z_+[q, q^-1]."""
        return all(c > 0 for c in self._terms.values())

    def constant_term(self) -> int:
        return self._terms.get(0, 0)

    def evaluate(self, x):
        """Substitute a number (or any ring element supporting ``**``) for q."""
        return sum(c * x**e for e, c in self._terms.items())

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly._raw({0: other}) if other else ZERO
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in o._terms.items():
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return LaurentPoly._raw(acc)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if not self.is_unit():
                raise ValueError("only units have negative powers")
            ((e, c),) = self._terms.items()
            return LaurentPoly._raw({e * k: c ** (-k)})
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``q^k``."""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def inverse(self) -> LaurentPoly:
        return self ** -1

    def bar(self) -> LaurentPoly:
        """The ring involution q -> q^-1."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def positive_part(self) -> LaurentPoly:
        return LaurentPoly._raw({e: c for e, c in self._terms.items() if e > 0})

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # -- text / json ------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for e, c in self._terms.items():
            if e == 0:
                mono = str(abs(c))
            else:
                var = "q" if e == 1 else f"q^{e}"
                mono = var if abs(c) == 1 else f"{abs(c)}*{var}"
            if not out:
                out.append(mono if c > 0 else "-" + mono)
            else:
                out.append(("+ " if c > 0 else "- ") + mono)
        return " ".join(out)

    def __repr__(self) -> str:
        return f"LaurentPoly('{self}')"

    def to_json(self) -> list:
        """``[[exponent, "coefficient"], ...]`` sorted by exponent."""
        return [[e, str(c)] for e, c in self._terms.items()]

    @classmethod
    def from_json(cls, data) -> LaurentPoly:
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, list):
            raise ValueError("Laurent polynomial JSON must be a list of [exponent, coefficient] pairs")
        terms: dict[int, int] = {}
        for pair in data:
            if not (isinstance(pair, list) and len(pair) == 2 and isinstance(pair[0], int)):
                raise ValueError(f"malformed Laurent term {pair!r}")
            e, c = pair
            terms[e] = terms.get(e, 0) + int(c)
        return cls(terms)


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})


def q_power(k: int, coeff: int = 1) -> LaurentPoly:
    """The monomial ``coeff * q^k``."""
    return LaurentPoly._raw({k: coeff}) if coeff else ZERO


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def bar(a: LaurentPoly) -> LaurentPoly:
    return a.bar()


def gauss_binomial(n: int, k: int, base_exponent: int) -> LaurentPoly:
    """Gaussian binomial ``(n choose k)_v`` in the variable ``v = q^base_exponent``.

    Uses the product formula prod_{i=1..k} (1 - v^(n-k+i)) / (1 - v^i), so
    ``gauss_binomial(2, 1, -4) == 1 + q^-4``.  The result is computed as a
    polynomial in ``v`` via the q-Pascal recurrence and then substituted.
    """
    if n < 0 or k < 0:
        raise ValueError("binomial undefined for negative arguments")
    if k > n:
        raise ValueError(f"binomial undefined: k={k} > n={n}")
    # row[j] holds (m choose j)_v as a coefficient list in v
    row: list[list[int]] = [[1]]
    for m in range(1, n + 1):
        new = [[1]]
        for j in range(1, m):
            # (m choose j) = (m-1 choose j) + v^(m-j) (m-1 choose j-1)
            a = row[j]
            b = row[j - 1]
            shift = m - j
            size = max(len(a), len(b) + shift)
            coeffs = [0] * size
            for i, c in enumerate(a):
                coeffs[i] += c
            for i, c in enumerate(b):
                coeffs[i + shift] += c
            new.append(coeffs)
        new.append([1])
        row = new
    return LaurentPoly({i * base_exponent: c for i, c in enumerate(row[k])})


def q_integer(m: int) -> LaurentPoly:
    """``[m] = (q^(-4m) - 1) / (q^-4 - 1) = 1 + q^-4 + ... + q^(-4(m-1))``."""
    return gauss_binomial(m, 1, -4)


def solve_skew(p: LaurentPoly) -> LaurentPoly:
    """The unique ``h`` in qZ[q] with ``h - bar(h) == p``.

    ``p`` must satisfy ``bar(p) == -p``; the answer is its strictly positive
    exponent part.
    """
    if p.bar() != -p:
        raise SkewSymmetryError(f"not skew-symmetric: {p}")
    return p.positive_part()


def exact_quotient(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """``a / b`` in Z[q, q^-1], which must be exact; long division from the top."""
    if not b:
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if not a:
        return ZERO
    bt = b._terms
    bdeg = b.degree()
    blow = b.valuation()
    lead = bt[bdeg]
    rem = dict(a._terms)
    out: dict[int, int] = {}
    while rem:
        top = max(rem)
        if top - bdeg < min(rem) - blow:
            raise InexactDivision(f"{b} does not divide {a}")
        c, r = divmod(rem[top], lead)
        if r:
            raise InexactDivision(f"{b} does not divide {a}")
        shift = top - bdeg
        out[shift] = c
        for e, v in bt.items():
            k = e + shift
            w = rem.get(k, 0) - c * v
            if w:
                rem[k] = w
            else:
                rem.pop(k, None)
    return LaurentPoly(out)
