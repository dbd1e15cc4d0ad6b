"""Exact rank and kernel computations over Z[q, q^-1].

Fraction-free (Bareiss) elimination: every intermediate entry is a minor of
the input, so each division is exact and no rational functions appear.
"""

from __future__ import annotations

from typing import Sequence

from .laurent import ONE, ZERO, LaurentPoly, exact_quotient

Row = list


def _copy(rows: Sequence[Sequence[LaurentPoly]]) -> list[list[LaurentPoly]]:
    return [[c if isinstance(c, LaurentPoly) else LaurentPoly(c) for c in r] for r in rows]


def echelon(rows: Sequence[Sequence[LaurentPoly]]) -> tuple[list[list[LaurentPoly]], list[int]]:
    """Fraction-free row echelon form and the pivot columns."""
    M = _copy(rows)
    if not M:
        return M, []
    m, ncols = len(M), len(M[0])
    prev = ONE
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        for i in range(r + 1, m):
            a = M[i][c]
            Mi, Mr = M[i], M[r]
            for j in range(c + 1, ncols):
                v = piv * Mi[j] - a * Mr[j]
                Mi[j] = exact_quotient(v, prev) if v else ZERO
            Mi[c] = ZERO
        # rows above the pivot row keep their scale; only the trailing block is updated
        prev = piv
        pivots.append(c)
        r += 1
    return M, pivots


def rank(rows: Sequence[Sequence[LaurentPoly]]) -> int:
    return len(echelon(rows)[1])


def kernel_dimension(rows: Sequence[Sequence[LaurentPoly]], ncols: int) -> int:
    """dim of {v : M v = 0} over Q(q) for an m x ncols matrix."""
    if not rows:
        return ncols
    return ncols - rank(rows)


def vectors_to_rows(vectors: Sequence[dict], index: Sequence) -> list[list[LaurentPoly]]:
    """Coordinate rows of sparse vectors {key: coeff} along ``index``."""
    return [[v.get(k, ZERO) for k in index] for v in vectors]


def span_rank(vectors: Sequence[dict]) -> int:
    keys = sorted({k for v in vectors for k in v})
    if not keys:
        return 0
    return rank(vectors_to_rows(vectors, keys))


def span_contains(big: Sequence[dict], small: Sequence[dict]) -> bool:
    """Whether span(small) is contained in span(big)."""
    return span_rank(list(big) + list(small)) == span_rank(big)
