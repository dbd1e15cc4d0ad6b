"""Classical gl_n representation data used as independent oracles."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product
from typing import Sequence


def weyl_dimension(gl_weight: Sequence[int]) -> int:
    """dim L(lambda) = prod_{i<j} (l_i - l_j + j - i) / (j - i)."""
    lam = list(gl_weight)
    n = len(lam)
    d = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            d *= Fraction(lam[i] - lam[j] + j - i, j - i)
    return int(d)


def _interlacing(top: Sequence[int]):
    """All rows of length len(top) - 1 interlacing ``top``."""
    ranges = [range(top[k + 1], top[k] + 1) for k in range(len(top) - 1)]
    return [tuple(r) for r in product(*ranges)]


def gelfand_tsetlin_patterns(gl_weight: Sequence[int]) -> list[list[tuple]]:
    """Patterns with top row ``gl_weight`` (non-increasing), listed top row first."""
    top = tuple(gl_weight)
    if any(top[k] < top[k + 1] for k in range(len(top) - 1)):
        raise ValueError(f"{top} is not dominant")
    out = []

    def rec(pattern):
        row = pattern[-1]
        if len(row) == 1:
            out.append(list(pattern))
            return
        for nxt in _interlacing(row):
            rec(pattern + [nxt])

    rec([top])
    return out


def character(gl_weight: Sequence[int]) -> Counter:
    """Weight multiplicities {gl weight: count} from Gelfand-Tsetlin patterns."""
    n = len(gl_weight)
    counts: Counter = Counter()
    for pat in gelfand_tsetlin_patterns(gl_weight):
        sums = [sum(r) for r in reversed(pat)]  # lengths 1..n
        w = tuple(sums[k] - (sums[k - 1] if k else 0) for k in range(n))
        counts[w] += 1
    return counts
