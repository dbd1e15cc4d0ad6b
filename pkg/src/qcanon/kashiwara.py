"""Minor-replacement bases {x(A)_i} and the Kashiwara operators on them.

For a fixed row pair (i, i+1) every exponent matrix A is split into

* spectator rows (all rows other than i, i+1), kept as plain monomials,
* a number of 2x2 quantum minors det_q({i, i+1}, {j, k}) with j < k,
* a leftover 2 x n core whose row i vanishes left of some column r and
  whose row i+1 vanishes right of r.

The element q^m x^{rows < i} x(core) prod(minors) x^{rows > i+1} is x(A)_i,
with m chosen so that its coefficient at x(A) is 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .canonical import MinorSpec, canonical_element, expand_in_canonical, quantum_minor
from .laurent import ONE, ZERO, SkewSymmetryError, q_power, solve_skew
from .qmatrix import (
    AlgebraElement,
    ExponentMatrix,
    bar_element,
    enumerate_block,
    less_than,
    matrix,
    modified_monomial,
    monomial,
    multiply,
    one,
    rows,
    sigma,
    size_of,
    stat,
)
from .uq import GeneratorSymbol, act_element, theta

__all__ = [
    "RowPairFactorization",
    "factorize",
    "basis_element",
    "transition_column",
    "expand_basis_i",
    "from_basis_i",
    "tilde_E",
    "tilde_F",
    "tilde_E_right",
    "tilde_F_right",
    "KernelReport",
    "kernel_agreement_check",
    "right_kernel_agreement_check",
    "vanishing_equivalence_check",
    "LeadingTermReport",
    "leading_term_check",
    "transition_is_unitriangular",
    "bar_in_basis_i",
    "canonical_from_basis_i",
]


def _order_key(A):
    return (-stat(A), tuple(-x for x in A))


@dataclass(frozen=True)
class RowPairFactorization:
    """x(A)_i = q^m x^{rows < i} x(core) prod minors x^{rows > i+1}."""

    n: int
    row_index: int
    core: tuple  # (row i, row i+1), each a tuple of length n
    minors: tuple  # sorted (j, k) pairs, 1-based columns
    spectators: ExponentMatrix  # A with rows i, i+1 zeroed
    q_power: int = 0

    def core_matrix(self) -> ExponentMatrix:
        """The core embedded in rows i, i+1 of an n x n zero matrix."""
        n, i = self.n, self.row_index
        A = [0] * (n * n)
        A[(i - 1) * n:i * n] = self.core[0]
        A[i * n:(i + 1) * n] = self.core[1]
        return tuple(A)

    def cut(self) -> int:
        """A column r with row i zero before r and row i+1 zero after r (1-based)."""
        top, bottom = self.core
        nz = [j for j, a in enumerate(top) if a]
        return nz[0] + 1 if nz else self.n

    def matrix(self) -> ExponentMatrix:
        """The exponent matrix A this factorization belongs to."""
        n, i = self.n, self.row_index
        A = list(self.spectators)
        core = self.core_matrix()
        for p in range(n * n):
            A[p] += core[p]
        for j, k in self.minors:
            A[(i - 1) * n + j - 1] += 1
            A[i * n + k - 1] += 1
        return tuple(A)

    def to_json(self) -> dict:
        return {
            "row_index": self.row_index,
            "core": [list(r) for r in self.core],
            "minors": [list(p) for p in self.minors],
            "spectators": rows(self.spectators),
            "q_power": self.q_power,
        }


def _split(A: ExponentMatrix, i: int):
    n = size_of(A)
    if not 1 <= i <= n - 1:
        raise ValueError(f"row index {i} out of range 1..{n - 1}")
    top = list(A[(i - 1) * n:i * n])
    bottom = list(A[i * n:(i + 1) * n])
    spect = list(A)
    spect[(i - 1) * n:(i + 1) * n] = [0] * (2 * n)
    return n, top, bottom, tuple(spect)


def _extract(top: list, bottom: list, n: int) -> list:
    """Greedy minor extraction; mutates the rows.

    Pairs (j, k) are visited by increasing k and, for each k, decreasing j.
    This is the order for which every transition column is unitriangular
    with qZ[q] entries while the core stays to the left of the minors.
    """
    minors = []
    for k in range(1, n):
        for j in range(k - 1, -1, -1):
            c = min(top[j], bottom[k])
            if c:
                minors.extend([(j + 1, k + 1)] * c)
                top[j] -= c
                bottom[k] -= c
    return sorted(minors, key=lambda p: (p[1], p[0]))


@lru_cache(maxsize=None)
def _unnormalized(n: int, i: int, core: tuple, minors: tuple, spectators: ExponentMatrix) -> AlgebraElement:
    """x^{rows < i} x(core) prod(minors) x^{rows > i+1} in the modified basis."""
    pre = list(spectators)
    post = list(spectators)
    pre[i * n:] = [0] * (n * n - i * n)
    post[:(i + 1) * n] = [0] * ((i + 1) * n)
    cm = [0] * (n * n)
    cm[(i - 1) * n:i * n] = core[0]
    cm[i * n:(i + 1) * n] = core[1]
    prod = one(n)
    for j, k in minors:
        prod = multiply(prod, _minor(n, i, j, k))
    core_el = modified_monomial(n, tuple(cm)).to_plain()
    out = multiply(multiply(monomial(n, tuple(pre)), core_el), prod)
    out = multiply(out, monomial(n, tuple(post)))
    return out.to_modified()


@lru_cache(maxsize=None)
def _minor(n: int, i: int, j: int, k: int) -> AlgebraElement:
    return quantum_minor(MinorSpec((i, i + 1), (j, k)), n)


@lru_cache(maxsize=None)
def _factorize(A: ExponentMatrix, i: int) -> RowPairFactorization:
    n, top, bottom, spect = _split(A, i)
    minors = tuple(_extract(top, bottom, n))
    core = (tuple(top), tuple(bottom))
    raw = _unnormalized(n, i, core, minors, spect)
    lead = raw.coefficient(A)
    if not lead.is_monomial() or lead.coefficient(lead.degree()) != 1:
        raise ArithmeticError(f"coefficient {lead} at x(A) is not a power of q for A={rows(A)}")
    return RowPairFactorization(n, i, core, minors, spect, -lead.degree())


def factorize(A, i: int) -> RowPairFactorization:
    """Split A for the row pair (i, i+1)."""
    return _factorize(matrix(A), i)


def _assemble(n: int, i: int, core: tuple, minors: tuple, spect: ExponentMatrix, m: int) -> AlgebraElement:
    return _unnormalized(n, i, core, minors, spect).scale(q_power(m))


def basis_element(A, i: int) -> AlgebraElement:
    """x(A)_i expanded in modified monomials."""
    fac = factorize(A, i)
    return _assemble(fac.n, i, fac.core, fac.minors, fac.spectators, fac.q_power)


def transition_column(A, i: int) -> dict:
    """{B: coefficient of x(B) in x(A)_i}."""
    return dict(basis_element(A, i).terms)


def transition_is_unitriangular(A, i: int) -> bool:
    """Coefficient 1 at A; every other B lies strictly below A with coefficient in qZ[q]."""
    A = matrix(A)
    col = transition_column(A, i)
    if col.get(A) != ONE:
        return False
    return all(less_than(B, A) and c.in_qZq() for B, c in col.items() if B != A)


def expand_basis_i(f: AlgebraElement, i: int) -> dict:
    """Coefficients {A: c_A} with f = sum c_A x(A)_i."""
    rem = {A: c for A, c in f.to_modified().terms.items()}
    out = {}
    while rem:
        A = min(rem, key=_order_key)
        c = rem.pop(A)
        out[A] = c
        for B, t in transition_column(A, i).items():
            if B == A:
                continue
            v = rem.get(B, ZERO) - c * t
            if v:
                rem[B] = v
            else:
                rem.pop(B, None)
    return out


def from_basis_i(coeffs: dict, n: int, i: int) -> AlgebraElement:
    out = AlgebraElement(n, basis="modified")
    for A, c in coeffs.items():
        out = out + basis_element(A, i).scale(c)
    return out


# -- Kashiwara operators --------------------------------------------------------


def _tilde(i: int, f: AlgebraElement, raising: bool) -> AlgebraElement:
    n = f.n
    out = AlgebraElement(n, basis="modified")
    for A, c in expand_basis_i(f, i).items():
        fac = factorize(A, i)
        top, bottom = fac.core
        src, dst = (bottom, top) if raising else (top, bottom)
        for k in range(n):
            if not src[k]:
                continue
            e = 2 * (sum(bottom[:k]) if raising else sum(top[k + 1:]))
            s2 = list(src)
            d2 = list(dst)
            s2[k] -= 1
            d2[k] += 1
            core = (tuple(d2), tuple(s2)) if raising else (tuple(s2), tuple(d2))
            term = _assemble(n, i, core, fac.minors, fac.spectators, fac.q_power + e)
            out = out + term.scale(c)
    return out


def tilde_E(i: int, f: AlgebraElement) -> AlgebraElement:
    """Move one unit of the core from row i+1 to row i, summed over columns."""
    return _tilde(i, f, True)


def tilde_F(i: int, f: AlgebraElement) -> AlgebraElement:
    """Move one unit of the core from row i to row i+1, summed over columns."""
    return _tilde(i, f, False)


def tilde_E_right(i: int, f: AlgebraElement) -> AlgebraElement:
    """Operator for the right action: sigma o tilde_E o sigma."""
    return sigma(tilde_E(i, sigma(f.to_modified())))


def tilde_F_right(i: int, f: AlgebraElement) -> AlgebraElement:
    return sigma(tilde_F(i, sigma(f.to_modified())))


# -- checks -----------------------------------------------------------------


@dataclass
class KernelReport:
    i: int
    kind: str  # "E" or "F"
    action_vanishes: bool
    operator_vanishes: bool

    @property
    def agrees(self) -> bool:
        return self.action_vanishes == self.operator_vanishes


def kernel_agreement_check(i: int, f: AlgebraElement) -> list[KernelReport]:
    """Compare vanishing of L_{theta(E_i)} f with tilde_E_i f, and likewise for F."""
    out = []
    for kind, op in (("E", tilde_E), ("F", tilde_F)):
        act = act_element("L", theta(GeneratorSymbol(kind, i)), f.to_modified())
        out.append(KernelReport(i, kind, act.is_zero(), op(i, f).is_zero()))
    return out


def right_kernel_agreement_check(i: int, f: AlgebraElement) -> list[KernelReport]:
    """Vanishing of R_{E_i} f, R_{F_i} f against the sigma-conjugated operators."""
    out = []
    for kind, op in (("E", tilde_E_right), ("F", tilde_F_right)):
        act = act_element("R", GeneratorSymbol(kind, i), f.to_modified())
        out.append(KernelReport(i, kind, act.is_zero(), op(i, f).is_zero()))
    return out


def vanishing_equivalence_check(A, i: int) -> list[tuple[str, bool, bool]]:
    """(kind, op(b(A)) == 0, op(x(A)_i) == 0) for both operators."""
    A = matrix(A)
    b = canonical_element(A).element()
    xi = basis_element(A, i)
    return [(kind, op(i, b).is_zero(), op(i, xi).is_zero()) for kind, op in (("E", tilde_E), ("F", tilde_F))]


@dataclass
class LeadingTermReport:
    applicable: bool
    target: ExponentMatrix | None = None
    ok: bool = True
    expansion: dict = field(default_factory=dict)


def leading_term_check(A, i: int, kind: str = "E") -> LeadingTermReport:
    """Expand tilde(b(A)) in B* and test that it is a single b(B) modulo qL*."""
    A = matrix(A)
    op = tilde_E if kind == "E" else tilde_F
    image = op(i, canonical_element(A).element())
    if image.is_zero():
        return LeadingTermReport(False)
    exp = expand_in_canonical(image).terms
    units = [B for B, c in exp.items() if c.in_Zq() and c.constant_term() == 1 and (c - ONE).in_qZq()]
    rest_ok = all(c.in_qZq() for B, c in exp.items() if B not in units)
    ok = len(units) == 1 and rest_ok
    return LeadingTermReport(True, units[0] if len(units) == 1 else None, ok, exp)


def bar_in_basis_i(A, i: int) -> dict:
    """bar(x(A)_i) expanded in {x(B)_i}."""
    return expand_basis_i(bar_element(basis_element(A, i)), i)


def canonical_from_basis_i(r, c, i: int) -> dict:
    """Run the bar-invariant triangular solver in the basis {x(A)_i}.

    Returns {A: {B: c_{B,A,i}}} with b(A) = x(A)_i + sum c_{B,A,i} x(B)_i.
    """
    members = sorted(enumerate_block(r, c), key=_order_key)
    bars = {A: bar_in_basis_i(A, i) for A in members}
    out = {}
    for pos, A in enumerate(members):
        h = {A: ONE}
        hbar = {A: ONE}
        for B in members[pos + 1:]:
            p = ZERO
            for C, hC in hbar.items():
                rBC = bars[C].get(B)
                if rBC is not None:
                    p = p + rBC * hC
            try:
                hB = solve_skew(p)
            except SkewSymmetryError as exc:
                raise ArithmeticError(f"bar matrix in basis {i} not skew at B={B}, A={A}") from exc
            if hB:
                h[B] = hB
                hbar[B] = hB.bar()
        out[A] = h
    return out
