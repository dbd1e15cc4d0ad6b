"""U_q(sl_n) at the level of generators, and its two actions on O_q(M(n)).

Generators E_i, F_i, K_i^{+-1} (1 <= i <= n-1) with

    Delta(E) = E (x) 1 + K^2 (x) E,   Delta(F) = F (x) K^-2 + 1 (x) F,   Delta(K) = K (x) K
    S(E) = -K^-2 E,   S(F) = -F K^2,   S(K) = K^-1.

The natural representation is rho(E_k) = e_{k,k+1}, rho(F_k) = e_{k+1,k},
rho(K_k) = diag(.., q, q^-1, ..) (q at position k).  The two translation
actions are determined on generators by

    R_u(x_ij) = sum_l x_il rho(u)_lj,      L_u(x_ij) = sum_l rho(S(u))_il x_lj

and extended to monomials through the coproduct (R) and the opposite
coproduct (L).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import kernel
from .laurent import ONE, ZERO, LaurentPoly, q_power
from .qmatrix import AlgebraElement, ExponentMatrix, Word, co, ro, size_of

__all__ = [
    "GeneratorSymbol",
    "UElement",
    "WeightVector",
    "NotAWeightVector",
    "parse_generator",
    "generators",
    "natural_rep",
    "rep_of",
    "coproduct",
    "counit",
    "antipode",
    "antipode_inverse",
    "omega",
    "theta",
    "act",
    "act_R",
    "act_L",
    "act_element",
    "act_on_word",
    "weight_of",
    "KINDS",
]

KINDS = ("E", "F", "K", "Kinv")


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.index < 1:
            raise ValueError("generator index must be >= 1")

    def check(self, n: int) -> None:
        if not 1 <= self.index <= n - 1:
            raise ValueError(f"generator {self} out of range for n={n}")

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"


_GEN_RE = re.compile(r"^(E|F|Kinv|K)(\d+)$")


def parse_generator(text: str) -> GeneratorSymbol:
    """Parse ``"E1"``, ``"F2"``, ``"K1"`` or ``"K1inv"``."""
    t = text.strip()
    m = re.match(r"^K(\d+)inv$", t)
    if m:
        return GeneratorSymbol("Kinv", int(m.group(1)))
    m = _GEN_RE.match(t)
    if not m:
        raise ValueError(f"cannot parse generator {text!r}")
    return GeneratorSymbol(m.group(1), int(m.group(2)))


def generators(n: int, kinds: Iterable[str] = KINDS) -> list[GeneratorSymbol]:
    return [GeneratorSymbol(k, i) for k in kinds for i in range(1, n)]


def _inv(g: GeneratorSymbol) -> GeneratorSymbol:
    return GeneratorSymbol({"K": "Kinv", "Kinv": "K"}[g.kind], g.index)


# -- elements of U_q as combinations of generator words --------------------


class UElement:
    """A Z[q, q^-1]-combination of words in the generators."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms: dict[tuple, LaurentPoly] = {}
        for w, c in (terms or {}).items():
            if isinstance(c, int):
                c = LaurentPoly(c)
            if c:
                v = self.terms.get(tuple(w), ZERO) + c
                if v:
                    self.terms[tuple(w)] = v
                else:
                    self.terms.pop(tuple(w), None)

    @classmethod
    def gen(cls, g: GeneratorSymbol, c: LaurentPoly | int = 1) -> UElement:
        return cls({(g,): c})

    @classmethod
    def unit(cls, c: LaurentPoly | int = 1) -> UElement:
        return cls({(): c})

    def __add__(self, other: UElement) -> UElement:
        out = UElement(self.terms)
        for w, c in other.terms.items():
            v = out.terms.get(w, ZERO) + c
            if v:
                out.terms[w] = v
            else:
                out.terms.pop(w, None)
        return out

    def __neg__(self) -> UElement:
        return UElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: UElement) -> UElement:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return UElement({w: c * other for w, c in self.terms.items()})
        if isinstance(other, UElement):
            out: dict = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = _reduce_word(w1 + w2)
                    out[w] = out.get(w, ZERO) + c1 * c2
            return UElement(out)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> UElement:
        out = UElement.unit()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, UElement) and self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*" + ("".join(map(str, w)) or "1") for w, c in sorted(self.terms.items()))

    __repr__ = __str__


def _reduce_word(w: tuple) -> tuple:
    """Cancel adjacent K_i K_i^-1 pairs (the only relation applied to words)."""
    out: list = []
    for g in w:
        if out and g.kind in ("K", "Kinv") and out[-1] == _inv(g):
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def _K(i: int, power: int) -> UElement:
    g = GeneratorSymbol("K" if power > 0 else "Kinv", i)
    return UElement({(g,) * abs(power): 1})


# -- Hopf structure on generators -------------------------------------------


def coproduct(g: GeneratorSymbol) -> list[tuple[UElement, UElement]]:
    """Summands of Delta(g) as (left, right) pairs."""
    i = g.index
    if g.kind == "E":
        return [(UElement.gen(g), UElement.unit()), (_K(i, 2), UElement.gen(g))]
    if g.kind == "F":
        return [(UElement.gen(g), _K(i, -2)), (UElement.unit(), UElement.gen(g))]
    return [(UElement.gen(g), UElement.gen(g))]


def counit(g: GeneratorSymbol) -> int:
    return 1 if g.kind in ("K", "Kinv") else 0


def _antipode_gen(g: GeneratorSymbol) -> UElement:
    i = g.index
    if g.kind == "E":
        return _K(i, -2) * UElement.gen(g) * -1
    if g.kind == "F":
        return UElement.gen(g) * _K(i, 2) * -1
    return UElement.gen(_inv(g))


def _antipode_inverse_gen(g: GeneratorSymbol) -> UElement:
    i = g.index
    if g.kind == "E":
        return UElement.gen(g) * _K(i, -2) * -1
    if g.kind == "F":
        return _K(i, 2) * UElement.gen(g) * -1
    return UElement.gen(_inv(g))


def _extend(u: UElement | GeneratorSymbol, on_gen, anti: bool) -> UElement:
    if isinstance(u, GeneratorSymbol):
        u = UElement.gen(u)
    out = UElement()
    for w, c in u.terms.items():
        term = UElement.unit(c)
        for g in (reversed(w) if anti else w):
            term = term * on_gen(g)
        out = out + term
    return out


def antipode(u) -> UElement:
    """S, an algebra anti-automorphism."""
    return _extend(u, _antipode_gen, anti=True)


def antipode_inverse(u) -> UElement:
    return _extend(u, _antipode_inverse_gen, anti=True)


def _omega_gen(g: GeneratorSymbol) -> UElement:
    swap = {"E": "F", "F": "E", "K": "K", "Kinv": "Kinv"}
    return UElement.gen(GeneratorSymbol(swap[g.kind], g.index))


def omega(u) -> UElement | GeneratorSymbol:
    """omega: E_i <-> F_i, K_i fixed; an algebra anti-automorphism.

    On a single generator the result is returned as a generator.
    """
    if isinstance(u, GeneratorSymbol):
        ((w, _),) = _omega_gen(u).terms.items()
        return w[0]
    return _extend(u, _omega_gen, anti=True)


def theta(u) -> UElement:
    """theta = omega o S^-1.  theta(E_i) = -K_i^-2 F_i, theta(F_i) = -E_i K_i^2, theta(K_i) = K_i^-1."""
    return omega(antipode_inverse(u))


# -- natural representation ---------------------------------------------------

Matrix = list  # list of rows of LaurentPoly


def natural_rep(g: GeneratorSymbol, n: int) -> Matrix:
    g.check(n)
    k = g.index - 1
    M = [[ZERO] * n for _ in range(n)]
    if g.kind == "E":
        M[k][k + 1] = ONE
    elif g.kind == "F":
        M[k + 1][k] = ONE
    else:
        sign = 1 if g.kind == "K" else -1
        for i in range(n):
            M[i][i] = ONE
        M[k][k] = q_power(sign)
        M[k + 1][k + 1] = q_power(-sign)
    return M


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    return [[sum((A[i][l] * B[l][j] for l in range(n)), ZERO) for j in range(n)] for i in range(n)]


def mat_add(A: Matrix, B: Matrix, c: LaurentPoly | int = 1) -> Matrix:
    return [[a + b * c for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_zero(n: int) -> Matrix:
    return [[ZERO] * n for _ in range(n)]


def rep_of(u: UElement | GeneratorSymbol, n: int) -> Matrix:
    """rho(u) for an element of U_q."""
    if isinstance(u, GeneratorSymbol):
        return natural_rep(u, n)
    out = mat_zero(n)
    for w, c in u.terms.items():
        M = mat_identity(n)
        for g in w:
            M = mat_mul(M, natural_rep(g, n))
        out = mat_add(out, M, c)
    return out


# -- actions on O_q(M(n)) -----------------------------------------------------


@lru_cache(maxsize=None)
def _letter_rule(side: str, g: GeneratorSymbol, n: int):
    """For each flat letter p, the list of (coeff_dict, new_letter) of side_g(x_p)."""
    if side == "R":
        M = natural_rep(g, n)
    else:
        M = rep_of(antipode(UElement.gen(g)), n)
    rules = []
    for p in range(n * n):
        i, j = divmod(p, n)
        out = []
        for l in range(n):
            c = M[l][j] if side == "R" else M[i][l]
            if c:
                out.append((c._terms, i * n + l if side == "R" else l * n + j))
        rules.append(out)
    return rules


@lru_cache(maxsize=None)
def _k_exponents(side: str, i: int, power: int, n: int) -> tuple:
    """Exponent of q by which side_{K_i^power} scales each letter."""
    k = i - 1
    out = []
    for p in range(n * n):
        r, c = divmod(p, n)
        pos = c if side == "R" else r
        e = (1 if pos == k else -1 if pos == k + 1 else 0) * power
        out.append(e if side == "R" else -e)
    return tuple(out)


def _mono_letters(A: ExponentMatrix) -> list[int]:
    out = []
    for p, a in enumerate(A):
        out.extend([p] * a)
    return out


_act_cache: dict = {}


def _act_mono(side: str, g: GeneratorSymbol, A: ExponentMatrix) -> dict:
    key = (side, g, A)
    r = _act_cache.get(key)
    if r is not None:
        return r
    n = size_of(A)
    if g.kind in ("K", "Kinv"):
        ks = _k_exponents(side, g.index, 1 if g.kind == "K" else -1, n)
        r = {A: {sum(ks[p] * a for p, a in enumerate(A) if a): 1}}
        _act_cache[key] = r
        return r
    s = kernel.straightener(n)
    rules = _letter_rule(side, g, n)
    # scalar multiplying letters before / after the acting position
    power = 2 if g.kind == "E" else -2
    ks = _k_exponents(side, g.index, power, n)
    if side == "R":
        before, after = (ks, None) if g.kind == "E" else (None, ks)
    else:
        before, after = (None, ks) if g.kind == "E" else (ks, None)
    letters = _mono_letters(A)
    zero = tuple([0] * (n * n))
    out: dict = {}
    for t, p in enumerate(letters):
        if not rules[p]:
            continue
        shift = 0
        if before is not None:
            shift += sum(before[x] for x in letters[:t])
        if after is not None:
            shift += sum(after[x] for x in letters[t + 1:])
        P = [0] * (n * n)
        for x in letters[:t]:
            P[x] += 1
        Q = [0] * (n * n)
        for x in letters[t + 1:]:
            Q[x] += 1
        P, Q = tuple(P), tuple(Q)
        for coeff, newp in rules[p]:
            c = {e + shift: v for e, v in coeff.items()}
            for C, pc in s.mul_gen(newp, Q).items():
                cc = kernel.poly_mul(c, pc)
                for D, pd in s.mono_mul(P, C).items():
                    kernel.accumulate_product(out, D, cc, pd)
    _act_cache[key] = out
    return out


def act_on_word(side: str, g: GeneratorSymbol, w: Word) -> AlgebraElement:
    """side_g applied letter by letter to an unstraightened word, then straightened.

    Agreement with ``act(side, g, straighten(w))`` for every word is exactly
    the statement that the action preserves the defining relations.
    """
    n = w.n
    g.check(n)
    s = kernel.straightener(n)
    letters = [(i - 1) * n + (j - 1) for i, j in w.letters]
    zero = tuple([0] * (n * n))
    out: dict = {}
    if g.kind in ("K", "Kinv"):
        ks = _k_exponents(side, g.index, 1 if g.kind == "K" else -1, n)
        for D, pd in s.word(letters, zero).items():
            kernel.accumulate(out, D, {e + sum(ks[x] for x in letters): v for e, v in pd.items()})
    else:
        rules = _letter_rule(side, g, n)
        ks = _k_exponents(side, g.index, 2 if g.kind == "E" else -2, n)
        scale_before = (side == "R") == (g.kind == "E")
        for t, p in enumerate(letters):
            ctx = letters[:t] if scale_before else letters[t + 1:]
            shift = sum(ks[x] for x in ctx)
            for coeff, newp in rules[p]:
                c = {e + shift: v for e, v in coeff.items()}
                for D, pd in s.word(letters[:t] + [newp] + letters[t + 1:], zero).items():
                    kernel.accumulate_product(out, D, c, pd)
    return AlgebraElement._from_raw(n, out, "plain").scale(w.scalar)


def act(side: str, g: GeneratorSymbol, f: AlgebraElement) -> AlgebraElement:
    """side_g(f) for side "L" or "R", in the basis of f (plain or modified)."""
    if side not in ("L", "R"):
        raise ValueError("side must be 'L' or 'R'")
    if f.basis == "canonical":
        raise ValueError("act needs plain or modified basis")
    g.check(f.n)
    basis = f.basis
    p = f.to_plain()
    out: dict = {}
    for A, c in p.terms.items():
        for B, pb in _act_mono(side, g, A).items():
            kernel.accumulate_product(out, B, c._terms, pb)
    return AlgebraElement._from_raw(f.n, out, "plain").in_basis(basis)


def act_R(g: GeneratorSymbol, f: AlgebraElement) -> AlgebraElement:
    return act("R", g, f)


def act_L(g: GeneratorSymbol, f: AlgebraElement) -> AlgebraElement:
    return act("L", g, f)


def act_element(side: str, u: UElement | GeneratorSymbol, f: AlgebraElement) -> AlgebraElement:
    """Action of a combination of generator words; a word g1 g2 ... acts as g1(g2(...(f)))."""
    if isinstance(u, GeneratorSymbol):
        return act(side, u, f)
    total = AlgebraElement(f.n, basis=f.basis)
    for w, c in u.terms.items():
        cur = f
        for g in reversed(w):
            cur = act(side, g, cur)
            if not cur:
                break
        total = total + cur.scale(c)
    return total


# -- weights -----------------------------------------------------------------


class NotAWeightVector(ValueError):
    """The element is not a simultaneous K-eigenvector."""


@dataclass(frozen=True)
class WeightVector:
    """A gl_n weight; ``sl`` gives its fundamental-weight coordinates."""

    gl: tuple

    @property
    def n(self) -> int:
        return len(self.gl)

    @property
    def sl(self) -> tuple:
        return tuple(self.gl[k] - self.gl[k + 1] for k in range(len(self.gl) - 1))

    @classmethod
    def from_fundamental(cls, coords: Sequence[int]) -> WeightVector:
        """lambda = sum l_k Lambda_k -> gl weight (l_1 + ... + l_{n-1}, ..., l_{n-1}, 0)."""
        coords = tuple(coords)
        return cls(tuple(sum(coords[k:]) for k in range(len(coords))) + (0,))

    def is_dominant(self) -> bool:
        return all(x >= 0 for x in self.sl)

    def __neg__(self) -> WeightVector:
        return WeightVector(tuple(-x for x in self.gl))


def weight_of(f: AlgebraElement, side: str) -> WeightVector:
    """The weight of f under side's K-action.

    K_i acts by q^{w_i} for every i; the result's ``sl`` is (w_i).  Its
    ``gl`` is co(A) (side R) or -ro(A) (side L) when f is homogeneous.
    """
    if not f:
        raise NotAWeightVector("zero element has no weight")
    n = f.n
    A, c = next(iter(f.terms.items()))
    ws = []
    for i in range(1, n):
        image = act(side, GeneratorSymbol("K", i), f)
        ic = image.coefficient(A)
        if not ic:
            raise NotAWeightVector(f"K_{i} does not act diagonally on side {side}")
        w = ic.valuation() - c.valuation()
        if image != f.scale(q_power(w)):
            raise NotAWeightVector(f"not a K_{i}-eigenvector on side {side}")
        ws.append(w)
    A = next(iter(f.terms))
    gl = co(A) if side == "R" else tuple(-x for x in ro(A))
    if f.homogeneous() and WeightVector(gl).sl == tuple(ws):
        return WeightVector(gl)
    # fall back to the normalized gl weight with last component 0
    return WeightVector.from_fundamental(ws)
