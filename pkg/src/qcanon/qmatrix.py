"""The quantum matrix algebra O_q(M(n)).

Generators x_ij (1 <= i, j <= n) satisfy, for the lexicographic order on
index pairs,

    x_ij x_ik = q^2 x_ik x_ij                          (j < k)
    x_ij x_kj = q^2 x_kj x_ij                          (i < k)
    x_ij x_st = x_st x_ij                              (i > s, j < t)
    x_ij x_st = x_st x_ij + (q^2 - q^-2) x_it x_sj     (i < s, j < t)

and the ordered monomials x^A = x_11^a11 x_12^a12 ... x_nn^ann form a basis.
Exponent matrices are stored as flat row-major tuples; :func:`matrix` and
:func:`rows` convert from/to nested lists.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt
from typing import Iterable, Mapping, Sequence

from . import kernel
from .laurent import ONE, ZERO, LaurentPoly, q_power

__all__ = [
    "ExponentMatrix",
    "AlgebraElement",
    "Word",
    "BASES",
    "matrix",
    "rows",
    "size_of",
    "ro",
    "co",
    "degree",
    "stat",
    "stat_E",
    "stat_D",
    "cross_exponent",
    "generator",
    "monomial",
    "modified_monomial",
    "one",
    "straighten",
    "straighten_by_rewriting",
    "multiply",
    "bar_element",
    "sigma",
    "less_than",
    "down_set",
    "moves",
    "enumerate_block",
    "blocks_of_degree",
    "identity_matrix",
    "RewriteMeasureError",
]

ExponentMatrix = tuple  # flat row-major tuple of n*n nonnegative ints

BASES = ("plain", "modified", "canonical")


class RewriteMeasureError(AssertionError):
    """A rewrite step failed to decrease the termination measure."""


# -- exponent matrices -----------------------------------------------------


def matrix(data: Sequence[Sequence[int]] | Sequence[int], n: int | None = None) -> ExponentMatrix:
    """Normalize nested rows (or an already flat sequence) to a flat tuple."""
    if data and isinstance(data[0], (list, tuple)):
        flat = tuple(int(x) for row in data for x in row)
        if any(len(row) != len(data) for row in data):
            raise ValueError("exponent matrix must be square")
    else:
        flat = tuple(int(x) for x in data)
        if n is not None and len(flat) != n * n:
            raise ValueError(f"expected {n * n} entries, got {len(flat)}")
        if isqrt(len(flat)) ** 2 != len(flat):
            raise ValueError("flat exponent matrix length is not a square")
    if any(x < 0 for x in flat):
        raise ValueError("exponent matrix entries must be nonnegative")
    return flat


def size_of(A: ExponentMatrix) -> int:
    return isqrt(len(A))


def rows(A: ExponentMatrix) -> list[list[int]]:
    n = size_of(A)
    return [list(A[i * n:(i + 1) * n]) for i in range(n)]


def identity_matrix(n: int, k: int = 1) -> ExponentMatrix:
    return tuple(k if i == j else 0 for i in range(n) for j in range(n))


def ro(A: ExponentMatrix) -> tuple[int, ...]:
    n = size_of(A)
    return tuple(sum(A[i * n:(i + 1) * n]) for i in range(n))


def co(A: ExponentMatrix) -> tuple[int, ...]:
    n = size_of(A)
    return tuple(sum(A[i * n + j] for i in range(n)) for j in range(n))


def degree(A: ExponentMatrix) -> int:
    return sum(A)


def stat(A: ExponentMatrix) -> int:
    """sum a_ij * i * j; every 2x2 move lowers it by (s-i)(t-j) > 0."""
    n = size_of(A)
    return sum(A[i * n + j] * (i + 1) * (j + 1) for i in range(n) for j in range(n) if A[i * n + j])


def cross_exponent(A: ExponentMatrix) -> int:
    """Number of same-row plus same-column pairs of letters in x^A."""
    n = size_of(A)
    total = 0
    for i in range(n):
        row = A[i * n:(i + 1) * n]
        s = sum(row)
        total += (s * s - sum(x * x for x in row)) // 2
        col = A[i::n]
        s = sum(col)
        total += (s * s - sum(x * x for x in col)) // 2
    return total


def stat_E(A: ExponentMatrix) -> LaurentPoly:
    """E(A) = q^(-2 * cross_exponent(A)), the leading coefficient of bar(x^A)."""
    return q_power(-2 * cross_exponent(A))


def stat_D(A: ExponentMatrix) -> LaurentPoly:
    """D(A) = q^(-cross_exponent(A)), so that x(A) = D(A) x^A."""
    return q_power(-cross_exponent(A))


def moves(A: ExponentMatrix) -> Iterable[ExponentMatrix]:
    """All matrices one 2x2 sub-matrix transformation below A."""
    n = size_of(A)
    for i in range(n):
        for j in range(n):
            if not A[i * n + j]:
                continue
            for s in range(i + 1, n):
                for t in range(j + 1, n):
                    if not A[s * n + t]:
                        continue
                    B = list(A)
                    B[i * n + j] -= 1
                    B[s * n + t] -= 1
                    B[i * n + t] += 1
                    B[s * n + j] += 1
                    yield tuple(B)


@lru_cache(maxsize=None)
def down_set(A: ExponentMatrix) -> frozenset:
    """Every B with B < A (strictly), found by breadth-first search."""
    seen: set = set()
    frontier = [A]
    while frontier:
        nxt = []
        for M in frontier:
            for B in moves(M):
                if B not in seen:
                    seen.add(B)
                    nxt.append(B)
        frontier = nxt
    return frozenset(seen)


def less_than(B: ExponentMatrix, A: ExponentMatrix) -> bool:
    if len(A) != len(B):
        raise ValueError("matrices of different sizes")
    if ro(A) != ro(B) or co(A) != co(B) or stat(B) >= stat(A):
        return False
    return B in down_set(A)


def _tables(r: Sequence[int], c: Sequence[int]):
    n = len(r)
    if n == 1:
        if r[0] == c[0]:
            yield (r[0],)
        return
    # fill row 0 with compositions of r[0] bounded by column sums
    def rows_for(total, caps):
        if len(caps) == 1:
            if total <= caps[0]:
                yield (total,)
            return
        for x in range(min(total, caps[0]), -1, -1):
            for rest in rows_for(total - x, caps[1:]):
                yield (x,) + rest

    def rec(i, caps):
        if i == n - 1:
            if sum(caps) == r[i]:
                yield tuple(caps)
            return
        for row in rows_for(r[i], caps):
            for tail in rec(i + 1, tuple(cp - x for cp, x in zip(caps, row))):
                yield row + tail

    yield from rec(0, tuple(c))


def enumerate_block(r: Sequence[int], c: Sequence[int]) -> list[ExponentMatrix]:
    """All A with ro(A) = r, co(A) = c, in decreasing stat order.

    Decreasing stat is a linear extension of the 2x2-move order (larger
    elements first).  Ties break on the reversed entry tuple.
    """
    r = tuple(r)
    c = tuple(c)
    if len(r) != len(c):
        raise ValueError("row and column weight vectors differ in length")
    if sum(r) != sum(c) or any(x < 0 for x in r + c):
        return []
    return sorted(_tables(r, c), key=lambda A: (-stat(A), tuple(-x for x in A)))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for x in range(total, -1, -1):
        for rest in _compositions(total - x, parts - 1):
            yield (x,) + rest


def blocks_of_degree(n: int, d: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (ro, co) pairs of total degree d, sorted."""
    comps = sorted(_compositions(d, n))
    return [(r, c) for r in comps for c in comps]


# -- elements --------------------------------------------------------------


class AlgebraElement:
    """A finite Z[q, q^-1]-combination of basis elements indexed by matrices.

    ``basis`` is ``"plain"`` (x^A), ``"modified"`` (x(A) = D(A) x^A) or
    ``"canonical"`` (b(A)).
    """

    __slots__ = ("n", "basis", "terms")

    def __init__(self, n: int, terms: Mapping | None = None, basis: str = "plain"):
        if n < 1:
            raise ValueError("n must be positive")
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.n = n
        self.basis = basis
        self.terms: dict[ExponentMatrix, LaurentPoly] = {}
        for A, c in (terms or {}).items():
            A = matrix(A) if not isinstance(A, tuple) or (A and isinstance(A[0], (list, tuple))) else A
            if len(A) != n * n:
                raise ValueError(f"matrix of size {size_of(A)} in element of size {n}")
            if isinstance(c, int):
                c = LaurentPoly(c)
            if c:
                prev = self.terms.get(A)
                c = c if prev is None else prev + c
                if c:
                    self.terms[A] = c
                else:
                    del self.terms[A]

    @classmethod
    def _from_raw(cls, n: int, raw: Mapping, basis: str) -> AlgebraElement:
        obj = cls.__new__(cls)
        obj.n = n
        obj.basis = basis
        obj.terms = {A: LaurentPoly._raw(p) for A, p in raw.items() if p}
        return obj

    def _raw(self) -> dict:
        return {A: c._terms for A, c in self.terms.items()}

    # -- basic algebra ----------------------------------------------------

    def _check(self, other: AlgebraElement) -> None:
        if self.n != other.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")
        if self.basis != other.basis:
            raise ValueError(f"basis mismatch: {self.basis} vs {other.basis}")

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for A, c in other.terms.items():
            v = out.get(A, ZERO) + c
            if v:
                out[A] = v
            else:
                out.pop(A, None)
        obj = AlgebraElement(self.n, basis=self.basis)
        obj.terms = out
        return obj

    def __neg__(self) -> AlgebraElement:
        obj = AlgebraElement(self.n, basis=self.basis)
        obj.terms = {A: -c for A, c in self.terms.items()}
        return obj

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c: LaurentPoly | int) -> AlgebraElement:
        if isinstance(c, int):
            c = LaurentPoly(c)
        obj = AlgebraElement(self.n, basis=self.basis)
        if c:
            obj.terms = {A: v * c for A, v in self.terms.items()}
        return obj

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> AlgebraElement:
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = one(self.n, self.basis if self.basis != "canonical" else "plain")
        if self.basis == "canonical":
            raise ValueError("powers need plain or modified basis")
        for _ in range(k):
            out = multiply(out, self)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.n == other.n and self.basis == other.basis and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, self.basis, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, A) -> LaurentPoly:
        return self.terms.get(matrix(A) if not isinstance(A, tuple) else A, ZERO)

    def support(self) -> list[ExponentMatrix]:
        return sorted(self.terms)

    def leading(self) -> tuple[ExponentMatrix, LaurentPoly]:
        """Term with the largest stat (ties: largest matrix tuple)."""
        A = max(self.terms, key=lambda M: (stat(M), M))
        return A, self.terms[A]

    def homogeneous(self) -> bool:
        blocks = {(ro(A), co(A)) for A in self.terms}
        return len(blocks) <= 1

    # -- basis changes ----------------------------------------------------

    def to_modified(self) -> AlgebraElement:
        if self.basis == "modified":
            return self
        if self.basis != "plain":
            raise ValueError("canonical -> modified conversion lives in qcanon.canonical")
        obj = AlgebraElement(self.n, basis="modified")
        obj.terms = {A: c.shift(cross_exponent(A)) for A, c in self.terms.items()}
        return obj

    def to_plain(self) -> AlgebraElement:
        if self.basis == "plain":
            return self
        if self.basis != "modified":
            raise ValueError("canonical -> plain conversion lives in qcanon.canonical")
        obj = AlgebraElement(self.n, basis="plain")
        obj.terms = {A: c.shift(-cross_exponent(A)) for A, c in self.terms.items()}
        return obj

    def in_basis(self, basis: str) -> AlgebraElement:
        if basis == "plain":
            return self.to_plain()
        if basis == "modified":
            return self.to_modified()
        raise ValueError("use qcanon.canonical.expand_in_canonical for the canonical basis")

    # -- text / json ------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        sym = {"plain": "x^", "modified": "x", "canonical": "b"}[self.basis]
        parts = []
        for A in sorted(self.terms, key=lambda M: (-stat(M), M)):
            parts.append(f"({self.terms[A]})*{sym}{_render_matrix(A)}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"AlgebraElement(n={self.n}, basis={self.basis!r}, {self})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "basis": self.basis,
            "terms": [{"matrix": rows(A), "coeff": self.terms[A].to_json()} for A in sorted(self.terms)],
        }

    @classmethod
    def from_json(cls, data) -> AlgebraElement:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n = int(data["n"])
            basis = data.get("basis", "plain")
            terms: dict = {}
            for t in data["terms"]:
                A = matrix(t["matrix"])
                if len(A) != n * n:
                    raise ValueError(f"term matrix {t['matrix']} does not have size {n}")
                terms[A] = terms.get(A, ZERO) + LaurentPoly.from_json(t["coeff"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed element JSON: {exc!r}") from exc
        return cls(n, terms, basis)


def _render_matrix(A: ExponentMatrix) -> str:
    n = size_of(A)
    letters = []
    for idx, a in enumerate(A):
        if a:
            i, j = divmod(idx, n)
            letters.append(f"x[{i + 1},{j + 1}]" + (f"^{a}" if a > 1 else ""))
    return "[" + " ".join(letters) + "]" if letters else "[1]"


def one(n: int, basis: str = "plain") -> AlgebraElement:
    return AlgebraElement(n, {tuple([0] * (n * n)): ONE}, basis)


def monomial(n: int, A, coeff: LaurentPoly | int = 1) -> AlgebraElement:
    """coeff * x^A in the plain basis."""
    return AlgebraElement(n, {matrix(A, n): coeff}, "plain")


def modified_monomial(n: int, A, coeff: LaurentPoly | int = 1) -> AlgebraElement:
    """coeff * x(A) in the modified basis."""
    return AlgebraElement(n, {matrix(A, n): coeff}, "modified")


def generator(n: int, i: int, j: int) -> AlgebraElement:
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"generator x_{i}{j} out of range for n={n}")
    A = [0] * (n * n)
    A[(i - 1) * n + (j - 1)] = 1
    return AlgebraElement(n, {tuple(A): ONE}, "plain")


# -- words and straightening -----------------------------------------------


@dataclass(frozen=True)
class Word:
    """A scalar times a product of generators x_{i1 j1} ... x_{ik jk} (1-based)."""

    n: int
    letters: tuple[tuple[int, int], ...] = ()
    scalar: LaurentPoly = field(default=ONE)

    def __post_init__(self):
        for i, j in self.letters:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"letter x_{i}{j} out of range for n={self.n}")


def straighten(w: Word) -> AlgebraElement:
    """Expand a word in the plain monomial basis."""
    n = w.n
    s = kernel.straightener(n)
    flat = [(i - 1) * n + (j - 1) for i, j in w.letters]
    raw = s.word(flat, tuple([0] * (n * n)))
    return AlgebraElement._from_raw(n, raw, "plain").scale(w.scalar)


def _swap_rule(g: tuple[int, int], f: tuple[int, int]):
    """Rewrite an out-of-order adjacent pair x_g x_f (g > f lexicographically).

    Returns a list of (coefficient, replacement letters).
    """
    (a, b), (c, d) = g, f
    if a == c or b == d:
        return [(q_power(-2), (f, g))]
    if b < d:
        return [(ONE, (f, g))]
    return [(ONE, (f, g)), (LaurentPoly({2: -1, -2: 1}), ((c, b), (a, d)))]


def _measure(letters) -> tuple[int, int]:
    weight = sum(i * j for i, j in letters)
    inversions = sum(1 for x, y in itertools.combinations(letters, 2) if x > y)
    return weight, inversions


def straighten_by_rewriting(w: Word, check_measure: bool = True) -> AlgebraElement:
    """Reference straightening by repeated leftmost-pair rewriting.

    Independent of the kernel; used as a cross-check.  Every rewrite must
    strictly decrease (sum of i*j over letters, number of inversions)
    lexicographically, which certifies termination.
    """
    n = w.n
    pending: dict[tuple, LaurentPoly] = {tuple(w.letters): w.scalar}
    done: dict[ExponentMatrix, LaurentPoly] = {}
    while pending:
        letters, coeff = pending.popitem()
        pos = next((k for k in range(len(letters) - 1) if letters[k] > letters[k + 1]), None)
        if pos is None:
            A = [0] * (n * n)
            for i, j in letters:
                A[(i - 1) * n + (j - 1)] += 1
            A = tuple(A)
            v = done.get(A, ZERO) + coeff
            if v:
                done[A] = v
            else:
                done.pop(A, None)
            continue
        before = _measure(letters) if check_measure else None
        for c, pair in _swap_rule(letters[pos], letters[pos + 1]):
            new = letters[:pos] + pair + letters[pos + 2:]
            if check_measure and not _measure(new) < before:
                raise RewriteMeasureError(f"measure did not decrease: {letters} -> {new}")
            v = pending.get(new, ZERO) + coeff * c
            if v:
                pending[new] = v
            else:
                pending.pop(new, None)
    return AlgebraElement(n, done, "plain")


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Product in the common (plain or modified) basis of the factors."""
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n}")
    if a.basis != b.basis:
        raise ValueError(f"basis mismatch: {a.basis} vs {b.basis}")
    if a.basis == "canonical":
        raise ValueError("multiply needs plain or modified basis; expand canonical elements first")
    basis = a.basis
    pa, pb = a.to_plain(), b.to_plain()
    raw = kernel.straightener(a.n).elem_mul(pa._raw(), pb._raw())
    out = AlgebraElement._from_raw(a.n, raw, "plain")
    return out.in_basis(basis)


def bar_element(a: AlgebraElement) -> AlgebraElement:
    """The bar anti-automorphism: x_ij fixed, q -> q^-1, products reversed."""
    if a.basis == "canonical":
        raise ValueError("bar_element needs plain or modified basis")
    basis = a.basis
    p = a.to_plain()
    s = kernel.straightener(a.n)
    out: dict = {}
    for A, c in p.terms.items():
        cb = c.bar()._terms
        for B, pb in s.bar_mono(A).items():
            kernel.accumulate_product(out, B, cb, pb)
    return AlgebraElement._from_raw(a.n, out, "plain").in_basis(basis)


def sigma(a: AlgebraElement) -> AlgebraElement:
    """The automorphism x_ij -> x_ji."""
    if a.basis == "canonical":
        raise ValueError("sigma needs plain or modified basis")
    basis = a.basis
    n = a.n
    p = a.to_plain()
    s = kernel.straightener(n)
    zero = tuple([0] * (n * n))
    out: dict = {}
    for A, c in p.terms.items():
        letters = []
        for idx, e in enumerate(A):
            i, j = divmod(idx, n)
            letters.extend([j * n + i] * e)
        for B, pb in s.word(letters, zero).items():
            kernel.accumulate_product(out, B, c._terms, pb)
    return AlgebraElement._from_raw(n, out, "plain").in_basis(basis)
