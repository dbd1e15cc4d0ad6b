"""Invariant subalgebras of the coordinate ring under the left translation action.

For a set S of Chevalley generators, the invariants are the f with
L_x(f) = eps(x) f for all x in S.  Canonical basis elements are filtered
one by one; an independent kernel computation over Z[q, q^-1] confirms
that the filter finds a basis of each graded piece.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import linalg
from .canonical import MinorSpec, canonical_as_element, expand_in_canonical, is_sl_reduced, quantum_minor
from .classical import character, weyl_dimension
from .laurent import ZERO
from .qmatrix import (
    AlgebraElement,
    ExponentMatrix,
    blocks_of_degree,
    co,
    enumerate_block,
    modified_monomial,
    multiply,
    one,
    ro,
    rows,
    stat,
)
from .uq import (
    GeneratorSymbol,
    NotAWeightVector,
    WeightVector,
    act,
    counit,
    parse_generator,
    weight_of,
)

__all__ = [
    "CoidealSpec",
    "InvariantBlock",
    "is_invariant",
    "invariant_members",
    "block_kernel_dimension",
    "invariant_basis",
    "BorelWeilModule",
    "borel_weil_module",
    "delta_minor",
    "highest_weight_monomial",
    "principal_minor_monomial",
    "character_matches",
    "weight_report",
    "StringReport",
    "string_property_check",
    "row_blocks",
    "homogeneous_generators",
    "GenerationReport",
    "generation_check",
]


@dataclass(frozen=True)
class CoidealSpec:
    """A set of generators S; the invariance condition is imposed for each x in S."""

    n: int
    generators: frozenset = frozenset()

    def __post_init__(self):
        for g in self.generators:
            g.check(self.n)

    @classmethod
    def parse(cls, n: int, names: Iterable[str]) -> CoidealSpec:
        return cls(n, frozenset(parse_generator(s) for s in names))

    @classmethod
    def lowering(cls, n: int) -> CoidealSpec:
        """All F_i: invariants of the lower nilpotent part."""
        return cls(n, frozenset(GeneratorSymbol("F", i) for i in range(1, n)))

    @classmethod
    def raising(cls, n: int) -> CoidealSpec:
        return cls(n, frozenset(GeneratorSymbol("E", i) for i in range(1, n)))

    @classmethod
    def levi(cls, n: int, theta: Iterable[int]) -> CoidealSpec:
        """{E_i, F_i : i in theta} together with every K_j and K_j^-1."""
        theta = sorted(set(theta))
        for i in theta:
            if not 1 <= i <= n - 1:
                raise ValueError(f"theta index {i} out of range 1..{n - 1}")
        gens = {GeneratorSymbol(k, i) for i in theta for k in ("E", "F")}
        gens |= {GeneratorSymbol(k, j) for j in range(1, n) for k in ("K", "Kinv")}
        return cls(n, frozenset(gens))

    def sorted_generators(self) -> list[GeneratorSymbol]:
        order = {"E": 0, "F": 1, "K": 2, "Kinv": 3}
        return sorted(self.generators, key=lambda g: (order[g.kind], g.index))

    def names(self) -> list[str]:
        return [str(g) for g in self.sorted_generators()]


def is_invariant(spec: CoidealSpec, f: AlgebraElement) -> bool:
    """L_x(f) == eps(x) f for every x in S."""
    for g in spec.sorted_generators():
        image = act("L", g, f)
        if image != f.scale(counit(g)):
            return False
    return True


def invariant_members(spec: CoidealSpec, r: Sequence[int], c: Sequence[int]) -> list[ExponentMatrix]:
    """Matrices A of the (r, c) block whose b(A) is S-invariant, in decreasing stat order."""
    return [A for A in enumerate_block(r, c) if is_invariant(spec, canonical_as_element(A))]


def block_kernel_dimension(spec: CoidealSpec, r: Sequence[int], c: Sequence[int]) -> int:
    """dim of the common kernel of L_x - eps(x), x in S, on the (r, c) block.

    Computed from the modified monomials, independently of the canonical basis.
    """
    members = enumerate_block(r, c)
    if not members:
        return 0
    n = len(r)
    images = []
    for A in members:
        x = modified_monomial(n, A)
        col = {}
        for t, g in enumerate(spec.sorted_generators()):
            d = act("L", g, x) - x.scale(counit(g))
            for B, v in d.terms.items():
                col[(t, B)] = v
        images.append(col)
    # columns are the members; the rank of the column set is the rank of the map
    return len(members) - linalg.span_rank(images)


@dataclass
class InvariantBlock:
    ro: tuple
    co: tuple
    members: list = field(default_factory=list)

    @property
    def degree(self) -> int:
        return sum(self.ro)

    @property
    def weight(self) -> WeightVector:
        """L-weight of the block (gl convention)."""
        return WeightVector(tuple(-x for x in self.ro))

    def to_json(self) -> dict:
        return {
            "ro": list(self.ro),
            "co": list(self.co),
            "weight": list(self.weight.sl),
            "members": [rows(A) for A in self.members],
        }


def invariant_basis(spec: CoidealSpec, truncation: int) -> list[InvariantBlock]:
    """Blocks of degree <= truncation with their S-invariant, sl-reduced canonical indices.

    b(A) and b(A + Id) have the same image in the quotient by det_q - 1, so
    only indices with a zero diagonal entry are reported.
    """
    n = spec.n
    out = []
    for d in range(truncation + 1):
        for r, c in blocks_of_degree(n, d):
            members = [A for A in invariant_members(spec, r, c) if is_sl_reduced(A)]
            if members:
                out.append(InvariantBlock(r, c, members))
    out.sort(key=lambda b: (b.degree, b.ro, b.co))
    return out


# -- Borel-Weil modules -----------------------------------------------------


def _rows_for_weight(lam: WeightVector) -> tuple:
    """Row sums r with r_k - r_{k+1} = l_k and r_n = 0."""
    sl = lam.sl
    n = len(sl) + 1
    return tuple(sum(sl[k:]) for k in range(n - 1)) + (0,)


@dataclass
class BorelWeilModule:
    highest_weight: WeightVector
    basis: list  # exponent matrices A; the module basis is {b(A)}
    action: dict  # generator name -> {(B, A): coefficient of b(B) in R_g b(A)}
    highest_weight_vectors: list

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def weights(self) -> Counter:
        return Counter(co(A) for A in self.basis)

    def matrix_of(self, name: str) -> list[list]:
        """Dense matrix of a generator's action in the ordered basis (columns = inputs)."""
        entries = self.action[name]
        return [[entries.get((B, A), ZERO) for A in self.basis] for B in self.basis]

    def to_json(self) -> dict:
        return {
            "highest_weight": list(self.highest_weight.sl),
            "dimension": self.dimension,
            "basis": [rows(A) for A in self.basis],
            "highest_weight_vectors": [rows(A) for A in self.highest_weight_vectors],
            "action": {
                name: [[c.to_json() for c in row] for row in self.matrix_of(name)] for name in sorted(self.action)
            },
        }


def borel_weil_module(lam: WeightVector | Sequence[int]) -> BorelWeilModule:
    """The invariants of all F_i with L-weight -lambda, as a module under R.

    ``lam`` is a WeightVector or fundamental-weight coordinates (l_1, ..., l_{n-1}).
    """
    if not isinstance(lam, WeightVector):
        lam = WeightVector.from_fundamental(lam)
    if not lam.is_dominant():
        raise ValueError(f"weight {lam.sl} is not dominant")
    n = lam.n
    if n < 2:
        raise ValueError("need n >= 2")
    spec = CoidealSpec.lowering(n)
    r = _rows_for_weight(lam)
    d = sum(r)
    basis = []
    for rr, c in blocks_of_degree(n, d):
        if rr == r:
            basis.extend(invariant_members(spec, r, c))
    basis.sort(key=lambda A: (co(A), -stat(A), A))
    members = set(basis)
    action: dict = {}
    for i in range(1, n):
        for kind in ("E", "F", "K"):
            g = GeneratorSymbol(kind, i)
            entries = {}
            for A in basis:
                image = expand_in_canonical(act("R", g, canonical_as_element(A)))
                for B, v in image.terms.items():
                    if B not in members:
                        raise ArithmeticError(f"R_{g} b({rows(A)}) leaves the module at b({rows(B)})")
                    entries[(B, A)] = v
            action[str(g)] = entries
    hw = [A for A in basis if all(not any(k[1] == A for k in action[f"E{i}"]) for i in range(1, n))]
    return BorelWeilModule(lam, basis, action, hw)


def delta_minor(n: int, s: int) -> AlgebraElement:
    """det_q({n-s+1, ..., n}, {1, ..., s})."""
    return quantum_minor(MinorSpec(tuple(range(n - s + 1, n + 1)), tuple(range(1, s + 1))), n)


def _minor_product(n: int, coords: Sequence[int], factor) -> AlgebraElement:
    if len(coords) != n - 1 or any(x < 0 for x in coords):
        raise ValueError(f"need {n - 1} nonnegative fundamental coordinates")
    out = one(n)
    for s, l in enumerate(coords, start=1):
        for _ in range(l):
            out = multiply(out, factor(n, s))
    return out


def highest_weight_monomial(n: int, coords: Sequence[int]) -> AlgebraElement:
    """Delta_1^{l_1} ... Delta_{n-1}^{l_{n-1}}, plain basis."""
    return _minor_product(n, coords, delta_minor)


def principal_minor_monomial(n: int, coords: Sequence[int]) -> AlgebraElement:
    """prod_s det_q({1..s}, {1..s})^{l_s}: the vector of the F-invariant module killed by every R_{E_i}."""
    return _minor_product(n, coords, lambda n, s: quantum_minor(MinorSpec(tuple(range(1, s + 1)), tuple(range(1, s + 1))), n))


def character_matches(mod: BorelWeilModule) -> bool:
    """Weight multiplicities of the module against Gelfand-Tsetlin counts."""
    return mod.weights() == character(mod.highest_weight.gl) and mod.dimension == weyl_dimension(mod.highest_weight.gl)


# -- string property -----------------------------------------------------------


@dataclass
class StringReport:
    checked_products: int = 0
    checked_raisings: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def _inside(spec: CoidealSpec, expansion: AlgebraElement, cache: dict) -> tuple[bool, str]:
    for B, c in expansion.terms.items():
        if not c.is_nonnegative():
            return False, f"negative coefficient {c} at {rows(B)}"
        inv = cache.get(B)
        if inv is None:
            inv = cache[B] = is_invariant(spec, canonical_as_element(B))
        if not inv:
            return False, f"support {rows(B)} is not invariant"
    return True, ""


def string_property_check(spec: CoidealSpec, truncation: int, samples: int = 30, seed: int = 0) -> StringReport:
    """Sampled products and R_{E_i} images of invariant canonical elements stay in the positive invariant cone."""
    rng = random.Random(seed)
    pool = [A for blk in invariant_basis(spec, truncation) for A in blk.members]
    report = StringReport()
    cache: dict = {A: True for A in pool}
    if not pool:
        return report
    pairs = [(rng.choice(pool), rng.choice(pool)) for _ in range(samples)]
    for A, B in pairs:
        prod = expand_in_canonical(multiply(canonical_as_element(A), canonical_as_element(B)))
        report.checked_products += 1
        ok, why = _inside(spec, prod, cache)
        if ok and spec.generators == CoidealSpec.lowering(spec.n).generators:
            want = tuple(a + b for a, b in zip(ro(A), ro(B)))
            if any(ro(C) != want for C in prod.terms):
                ok, why = False, "product leaves the summed weight block"
        if not ok:
            report.counterexamples.append({"product": [rows(A), rows(B)], "reason": why})
    for A in pool:
        for i in range(1, spec.n):
            image = expand_in_canonical(act("R", GeneratorSymbol("E", i), canonical_as_element(A)))
            report.checked_raisings += 1
            ok, why = _inside(spec, image, cache)
            if not ok:
                report.counterexamples.append({"raising": [i, rows(A)], "reason": why})
    return report


def weight_report(spec: CoidealSpec, truncation: int) -> list:
    """Members whose canonical element fails to be an L-weight vector (expected empty)."""
    bad = []
    for blk in invariant_basis(spec, truncation):
        for A in blk.members:
            try:
                weight_of(canonical_as_element(A), "L")
            except NotAWeightVector:
                bad.append(rows(A))
    return bad


# -- quantum homogeneous spaces ------------------------------------------------


def row_blocks(n: int, theta: Iterable[int]) -> list[tuple[int, ...]]:
    """Partition of {1..n} into runs; i and i+1 share a run iff i is in theta."""
    theta = set(theta)
    for i in theta:
        if not 1 <= i <= n - 1:
            raise ValueError(f"theta index {i} out of range 1..{n - 1}")
    out = [[1]]
    for i in range(1, n):
        if i in theta:
            out[-1].append(i + 1)
        else:
            out.append([i + 1])
    return [tuple(b) for b in out]


def homogeneous_generators(n: int, theta: Iterable[int]) -> list[MinorSpec]:
    """det_q(I_s, J) for every run I_s and every column set J with |J| = |I_s|."""
    out = []
    for block in row_blocks(n, theta):
        for J in itertools.combinations(range(1, n + 1), len(block)):
            out.append(MinorSpec(block, J))
    return out


@dataclass
class GenerationReport:
    theta: tuple
    degrees: list = field(default_factory=list)  # dicts per degree

    @property
    def ok(self) -> bool:
        return all(d["agree"] for d in self.degrees)


def generation_check(n: int, theta: Iterable[int], truncation: int) -> GenerationReport:
    """Compare, per degree, the invariants of the Levi set with the span of minor products.

    Only weight-zero blocks (all row sums equal) can hold invariants of the
    K_j; a product of generators lands there exactly when it uses the same
    number t of minors from every run.  All orderings of each multiset of
    generators are included.
    """
    theta = tuple(sorted(set(theta)))
    spec = CoidealSpec.levi(n, theta)
    gens = homogeneous_generators(n, theta)
    runs = row_blocks(n, theta)
    by_run = {run: [m for m in gens if m.I == run] for run in runs}
    report = GenerationReport(theta)
    for d in range(truncation + 1):
        entry = {"degree": d}
        inv_vectors = []
        prod_vectors = []
        if d % n == 0:
            t = d // n
            r = (t,) * n
            for rr, c in blocks_of_degree(n, d):
                if rr != r:
                    continue
                for A in invariant_members(spec, r, c):
                    inv_vectors.append(canonical_as_element(A).terms)
            elems = {}
            choices = [list(itertools.combinations_with_replacement(by_run[run], t)) for run in runs]
            for pick in itertools.product(*choices):
                factors = [m for group in pick for m in group]
                for order in itertools.permutations(range(len(factors))):
                    seq = tuple(factors[k] for k in order)
                    if seq in elems:
                        continue
                    val = one(n)
                    for m in seq:
                        val = multiply(val, quantum_minor(m, n))
                    elems[seq] = val.to_modified().terms
            prod_vectors = list(elems.values())
        ri = linalg.span_rank(inv_vectors)
        rp = linalg.span_rank(prod_vectors)
        rb = linalg.span_rank(inv_vectors + prod_vectors)
        entry.update(invariant_dim=ri, product_dim=rp, joint_dim=rb, agree=ri == rp == rb)
        report.degrees.append(entry)
    return report
