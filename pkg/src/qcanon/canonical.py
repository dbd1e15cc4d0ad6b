"""The dual canonical basis B* = {b(A)} of O_q(M(n)) and the quotient to O_q(SL(n)).

b(A) is the unique bar-invariant element of the form

    b(A) = x(A) + sum_{B < A} h_BA x(B),    h_BA in qZ[q].

It is computed one (ro, co) block at a time.  With r_BC the coefficients of
bar(x(C)) in the modified basis, the coefficients obey

    h_BA - bar(h_BA) = sum_{B < C <= A} r_BC * bar(h_CA)

which is solved downward from A with :func:`qcanon.laurent.solve_skew`.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from . import kernel
from .laurent import ONE, ZERO, LaurentPoly, SkewSymmetryError, solve_skew
from .qmatrix import (
    AlgebraElement,
    ExponentMatrix,
    Word,
    co,
    cross_exponent,
    down_set,
    enumerate_block,
    identity_matrix,
    matrix,
    multiply,
    ro,
    rows,
    size_of,
    stat,
    straighten,
)

__all__ = [
    "CanonicalExpansion",
    "MinorSpec",
    "BarMatrixError",
    "DetShiftError",
    "QuotientUnavailable",
    "bar_column",
    "canonical_block",
    "canonical_element",
    "canonical_as_element",
    "quantum_determinant",
    "quantum_minor",
    "expand_in_canonical",
    "canonical_to_modified",
    "detq_shift_check",
    "sl_reduce",
    "is_sl_reduced",
    "structure_constants",
    "block_to_json",
    "clear_cache",
]


class BarMatrixError(RuntimeError):
    """The bar matrix produced a non-skew right-hand side (a straightening bug)."""


class DetShiftError(RuntimeError):
    """det_q * b(A) is not a single canonical term at A + Id."""


class QuotientUnavailable(RuntimeError):
    """sl_reduce met a shift scalar that is not a unit; ``pairs`` holds the raw terms."""

    def __init__(self, message: str, pairs):
        super().__init__(message)
        self.pairs = pairs


@dataclass
class CanonicalExpansion:
    """b(top) = sum coeffs[B] * x(B) over B <= top."""

    top: ExponentMatrix
    coeffs: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return size_of(self.top)

    def element(self) -> AlgebraElement:
        obj = AlgebraElement(self.n, basis="modified")
        obj.terms = dict(self.coeffs)
        return obj

    def to_json(self) -> dict:
        order = sorted(self.coeffs, key=lambda B: (-stat(B), tuple(-x for x in B)))
        return {"top": rows(self.top), "coeffs": [{"matrix": rows(B), "h": self.coeffs[B].to_json()} for B in order]}

    @classmethod
    def from_json(cls, data) -> CanonicalExpansion:
        top = matrix(data["top"])
        coeffs = {matrix(t["matrix"]): LaurentPoly.from_json(t["h"]) for t in data["coeffs"]}
        return cls(top, coeffs)


# -- bar matrix -------------------------------------------------------------


def bar_column(A: ExponentMatrix) -> dict:
    """Coefficients r_BA of bar(x(A)) in the modified basis (r_AA = 1)."""
    n = size_of(A)
    s = kernel.straightener(n)
    eA = cross_exponent(A)
    out = {}
    # bar(x(A)) = q^{+eA} bar(x^A); x^B = q^{eB} x(B)
    for B, p in s.bar_mono(A).items():
        shift = eA + cross_exponent(B)
        out[B] = LaurentPoly._raw({e + shift: c for e, c in p.items()})
    return out


# -- block solver -----------------------------------------------------------

_blocks: dict = {}


def clear_cache() -> None:
    _blocks.clear()
    down_set.cache_clear()


def _cache_path(n: int, r, c) -> Path | None:
    root = os.environ.get("QCANON_CACHE_DIR")
    if not root:
        return None
    name = "n{}_r{}_c{}.json".format(n, "-".join(map(str, r)), "-".join(map(str, c)))
    return Path(root) / name


def _solve_block(r: tuple, c: tuple) -> dict:
    members = enumerate_block(r, c)
    if not members:
        return {}
    bars = {A: bar_column(A) for A in members}
    out = {}
    for A in members:
        lower = down_set(A)
        if not lower:
            out[A] = CanonicalExpansion(A, {A: ONE})
            continue
        h = {A: ONE}
        hbar = {A: ONE}
        solved = [A]
        for B in sorted(lower, key=lambda M: (-stat(M), tuple(-x for x in M))):
            p = ZERO
            for C in solved:
                rBC = bars[C].get(B)
                if rBC is not None:
                    p = p + rBC * hbar[C]
            try:
                hB = solve_skew(p)
            except SkewSymmetryError as exc:
                raise BarMatrixError(f"bar matrix inconsistent at B={B}, A={A}: {exc}") from exc
            if hB:
                h[B] = hB
                hbar[B] = hB.bar()
                solved.append(B)
        out[A] = CanonicalExpansion(A, h)
    return out


def canonical_block(r: Sequence[int], c: Sequence[int]) -> dict:
    """{A: CanonicalExpansion} for every A with ro(A) = r, co(A) = c."""
    r, c = tuple(r), tuple(c)
    n = len(r)
    key = (n, r, c)
    blk = _blocks.get(key)
    if blk is not None:
        return blk
    path = _cache_path(n, r, c)
    if path is not None and path.exists():
        data = json.loads(path.read_text())
        blk = {}
        for e in data["elements"]:
            ce = CanonicalExpansion.from_json(e)
            blk[ce.top] = ce
    else:
        blk = _solve_block(r, c)
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(block_to_json(r, c, blk)))
            os.replace(tmp, path)
    _blocks[key] = blk
    return blk


def block_to_json(r, c, blk: dict | None = None) -> dict:
    if blk is None:
        blk = canonical_block(r, c)
    order = sorted(blk, key=lambda A: (-stat(A), tuple(-x for x in A)))
    return {"ro": list(r), "co": list(c), "elements": [blk[A].to_json() for A in order]}


def canonical_element(A) -> CanonicalExpansion:
    A = matrix(A)
    return canonical_block(ro(A), co(A))[A]


def canonical_as_element(A) -> AlgebraElement:
    """b(A) in the modified basis."""
    return canonical_element(A).element()


# -- determinants and minors -----------------------------------------------


def _inversions(perm: Sequence[int]) -> int:
    return sum(1 for a, b in itertools.combinations(perm, 2) if a > b)


@dataclass(frozen=True)
class MinorSpec:
    """Row set I and column set J (1-based, sorted, equal size)."""

    I: tuple
    J: tuple

    def __post_init__(self):
        I, J = tuple(sorted(self.I)), tuple(sorted(self.J))
        object.__setattr__(self, "I", I)
        object.__setattr__(self, "J", J)
        if not I or len(I) != len(J):
            raise ValueError("minor needs nonempty row and column sets of equal size")
        if len(set(I)) != len(I) or len(set(J)) != len(J):
            raise ValueError("minor index sets must not repeat")


def quantum_minor(m: MinorSpec, n: int) -> AlgebraElement:
    """det_q(I, J) = sum over permutations of (-q^2)^inv x_{i1 j_s(1)} ... in the plain basis."""
    if max(m.I) > n or max(m.J) > n or min(m.I) < 1 or min(m.J) < 1:
        raise ValueError(f"minor {m} out of range for n={n}")
    k = len(m.I)
    total = AlgebraElement(n, basis="plain")
    for perm in itertools.permutations(range(k)):
        l = _inversions(perm)
        letters = tuple((m.I[t], m.J[perm[t]]) for t in range(k))
        total = total + straighten(Word(n, letters, LaurentPoly({2 * l: (-1) ** l})))
    return total


def quantum_determinant(n: int) -> AlgebraElement:
    full = tuple(range(1, n + 1))
    return quantum_minor(MinorSpec(full, full), n)


# -- expansion in B* ---------------------------------------------------------


def expand_in_canonical(a: AlgebraElement) -> AlgebraElement:
    """Coefficients c_A with a = sum c_A b(A), by triangular back-substitution."""
    if a.basis == "canonical":
        return a
    rem = {A: dict(c._terms) for A, c in a.to_modified().terms.items()}
    out = {}
    while rem:
        A = max(rem, key=lambda M: (stat(M), M))
        d = rem[A]
        out[A] = dict(d)
        neg = {e: -v for e, v in d.items()}
        for B, h in canonical_element(A).coeffs.items():
            kernel.accumulate_product(rem, B, neg, h._terms)
    return AlgebraElement._from_raw(a.n, out, "canonical")


def canonical_to_modified(a: AlgebraElement) -> AlgebraElement:
    if a.basis != "canonical":
        return a.to_modified()
    out: dict = {}
    for A, d in a.terms.items():
        for B, h in canonical_element(A).coeffs.items():
            kernel.accumulate_product(out, B, d._terms, h._terms)
    return AlgebraElement._from_raw(a.n, out, "modified")


def structure_constants(A, B) -> AlgebraElement:
    """b(A) * b(B) expanded in B*."""
    prod = multiply(canonical_as_element(matrix(A)), canonical_as_element(matrix(B)))
    return expand_in_canonical(prod)


# -- the det_q shift and the quotient -----------------------------------------

_shift_scalars: dict = {}


def detq_shift_check(A) -> LaurentPoly:
    """Scalar s with det_q * b(A) = s * b(A + Id); raises DetShiftError otherwise."""
    A = matrix(A)
    if A in _shift_scalars:
        return _shift_scalars[A]
    n = size_of(A)
    det = quantum_determinant(n).to_modified()
    prod = expand_in_canonical(multiply(det, canonical_as_element(A)))
    target = tuple(a + b for a, b in zip(A, identity_matrix(n)))
    if len(prod.terms) != 1 or target not in prod.terms:
        raise DetShiftError(f"det_q * b({rows(A)}) = {prod} is not a single term at A + Id")
    s = prod.terms[target]
    _shift_scalars[A] = s
    return s


def is_sl_reduced(A: ExponentMatrix) -> bool:
    n = size_of(A)
    return min(A[i * n + i] for i in range(n)) == 0


def sl_reduce(a: AlgebraElement) -> AlgebraElement:
    """Representative of the image in O_q(SL(n)): b(A) -> b(A - k Id) with k = min diagonal entry."""
    a = expand_in_canonical(a)
    n = a.n
    out: dict = {}
    raw_pairs = []
    for A, c in a.terms.items():
        k = min(A[i * n + i] for i in range(n))
        B = tuple(x - k if idx % (n + 1) == 0 else x for idx, x in enumerate(A))
        scalar = ONE
        cur = B
        for _ in range(k):
            scalar = scalar * detq_shift_check(cur)
            cur = tuple(x + 1 if idx % (n + 1) == 0 else x for idx, x in enumerate(cur))
        raw_pairs.append((B, k, scalar, c))
        if not scalar.is_unit():
            raise QuotientUnavailable(f"shift scalar {scalar} at {rows(A)} is not a unit", raw_pairs)
        kernel.accumulate(out, B, (c * scalar.inverse())._terms)
    return AlgebraElement._from_raw(n, out, "canonical")
