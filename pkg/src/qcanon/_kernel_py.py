"""Pure-Python straightening kernel.

Monomials are flat row-major exponent tuples of length n*n; the generator
x_ij has flat index (i-1)*n + (j-1), so lexicographic order on index pairs is
integer order on flat indices.  Coefficients are plain ``{exponent: int}``
dicts.  Everything returned from a cache is shared and must not be mutated.

``_kernel.pyx`` is a line-for-line compiled twin of this module.
"""

BACKEND = "python"

_UNIT = {0: 1}


def poly_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def accumulate(target, mono, poly):
    """target[mono] += poly, in place, dropping zeros."""
    cur = target.get(mono)
    if cur is None:
        fresh = {e: c for e, c in poly.items() if c}
        if fresh:
            target[mono] = fresh
        return
    for e, c in poly.items():
        v = cur.get(e, 0) + c
        if v:
            cur[e] = v
        else:
            del cur[e]
    if not cur:
        del target[mono]


def accumulate_product(target, mono, p1, p2):
    """target[mono] += p1 * p2, in place, dropping zeros."""
    cur = target.get(mono)
    if cur is None:
        cur = {}
        target[mono] = cur
    for e1, c1 in p1.items():
        for e2, c2 in p2.items():
            e = e1 + e2
            v = cur.get(e, 0) + c1 * c2
            if v:
                cur[e] = v
            else:
                del cur[e]
    if not cur:
        del target[mono]


class Straightener:
    """Normal-form multiplication in the quantum matrix algebra of size n."""

    def __init__(self, n):
        self.n = n
        self._gen = {}
        self._mono = {}
        self._bar = {}

    def clear(self):
        self._gen.clear()
        self._mono.clear()
        self._bar.clear()

    def mul_gen(self, p, B):
        """x_p * x^B in normal form."""
        key = (p, B)
        r = self._gen.get(key)
        if r is not None:
            return r
        f = -1
        for idx, v in enumerate(B):
            if v:
                f = idx
                break
        if f < 0 or p <= f:
            C = list(B)
            C[p] += 1
            r = {tuple(C): _UNIT}
            self._gen[key] = r
            return r
        n = self.n
        a, b = divmod(p, n)
        c, d = divmod(f, n)
        Bp = list(B)
        Bp[f] -= 1
        Bp = tuple(Bp)
        shift = -2 if (a == c or b == d) else 0
        r = {}
        # x_p x_f = q^shift x_f x_p (+ correction); x_f then prepends cleanly
        for C, poly in self.mul_gen(p, Bp).items():
            C2 = list(C)
            C2[f] += 1
            if shift:
                r[tuple(C2)] = {e + shift: v for e, v in poly.items()}
            else:
                r[tuple(C2)] = dict(poly)
        if a > c and b > d:
            # x_ab x_cd = x_cd x_ab - (q^2 - q^-2) x_cb x_ad
            for C, poly in self.mul_gen(a * n + d, Bp).items():
                for C2, poly2 in self.mul_gen(c * n + b, C).items():
                    prod = poly_mul(poly, poly2)
                    corr = {}
                    for e, v in prod.items():
                        corr[e + 2] = corr.get(e + 2, 0) - v
                        corr[e - 2] = corr.get(e - 2, 0) + v
                    accumulate(r, C2, {e: v for e, v in corr.items() if v})
        self._gen[key] = r
        return r

    def apply_gen(self, p, elem):
        """x_p * elem for elem a {mono: poly} dict."""
        out = {}
        for C, poly in elem.items():
            for C2, poly2 in self.mul_gen(p, C).items():
                accumulate_product(out, C2, poly, poly2)
        return out

    def mono_mul(self, A, B):
        """x^A * x^B in normal form."""
        key = (A, B)
        r = self._mono.get(key)
        if r is not None:
            return r
        first = -1
        for idx, v in enumerate(A):
            if v:
                first = idx
                break
        if first < 0:
            r = {B: _UNIT}
        else:
            Ap = list(A)
            Ap[first] -= 1
            r = self.apply_gen(first, self.mono_mul(tuple(Ap), B))
        self._mono[key] = r
        return r

    def word(self, letters, zero):
        """Straighten the product of generators with the given flat indices."""
        cur = {zero: _UNIT}
        for p in reversed(letters):
            cur = self.apply_gen(p, cur)
        return cur

    def bar_mono(self, A):
        """The reversed word of x^A in normal form (bar of x^A, coefficients already barred)."""
        r = self._bar.get(A)
        if r is not None:
            return r
        letters = []
        for idx, v in enumerate(A):
            letters.extend([idx] * v)
        letters.reverse()
        r = self.word(letters, tuple([0] * len(A)))
        self._bar[A] = r
        return r

    def elem_mul(self, x, y):
        out = {}
        for A, pa in x.items():
            for B, pb in y.items():
                pab = poly_mul(pa, pb)
                for C, pc in self.mono_mul(A, B).items():
                    accumulate_product(out, C, pab, pc)
        return out
