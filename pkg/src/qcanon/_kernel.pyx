# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled straightening kernel; same interface and semantics as ``_kernel_py``."""

BACKEND = "cython"

cdef dict _UNIT = {0: 1}


cpdef dict poly_mul(dict a, dict b):
    cdef dict out = {}
    cdef long e1, e2, e
    cdef object c1, c2
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


cpdef void accumulate(dict target, tuple mono, dict poly):
    cdef dict cur = target.get(mono)
    cdef object v
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


cpdef void accumulate_product(dict target, tuple mono, dict p1, dict p2):
    cdef dict cur = target.get(mono)
    cdef long e1, e2, e
    cdef object c1, c2, v
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


cdef class Straightener:
    """Normal-form multiplication in the quantum matrix algebra of size n."""

    cdef public int n
    cdef public dict _gen, _mono, _bar

    def __init__(self, int n):
        self.n = n
        self._gen = {}
        self._mono = {}
        self._bar = {}

    def clear(self):
        self._gen.clear()
        self._mono.clear()
        self._bar.clear()

    cpdef dict mul_gen(self, int p, tuple B):
        cdef tuple key = (p, B)
        cdef dict r = self._gen.get(key)
        if r is not None:
            return r
        cdef int f = -1, idx, a, b, c, d, shift, size = len(B)
        cdef list C, C2
        for idx in range(size):
            if B[idx]:
                f = idx
                break
        if f < 0 or p <= f:
            C = list(B)
            C[p] += 1
            r = {tuple(C): _UNIT}
            self._gen[key] = r
            return r
        a = p // self.n
        b = p % self.n
        c = f // self.n
        d = f % self.n
        C = list(B)
        C[f] -= 1
        cdef tuple Bp = tuple(C)
        shift = -2 if (a == c or b == d) else 0
        r = {}
        cdef dict poly, poly2, prod, corr
        for Ct, poly in self.mul_gen(p, Bp).items():
            C2 = list(Ct)
            C2[f] += 1
            if shift:
                r[tuple(C2)] = {e + shift: v for e, v in poly.items()}
            else:
                r[tuple(C2)] = dict(poly)
        if a > c and b > d:
            for Ct, poly in self.mul_gen(a * self.n + d, Bp).items():
                for Ct2, poly2 in self.mul_gen(c * self.n + b, Ct).items():
                    prod = poly_mul(poly, poly2)
                    corr = {}
                    for e, v in prod.items():
                        corr[e + 2] = corr.get(e + 2, 0) - v
                        corr[e - 2] = corr.get(e - 2, 0) + v
                    accumulate(r, Ct2, {e: v for e, v in corr.items() if v})
        self._gen[key] = r
        return r

    cpdef dict apply_gen(self, int p, dict elem):
        cdef dict out = {}
        cdef dict poly, poly2
        for Ct, poly in elem.items():
            for Ct2, poly2 in self.mul_gen(p, Ct).items():
                accumulate_product(out, Ct2, poly, poly2)
        return out

    cpdef dict mono_mul(self, tuple A, tuple B):
        cdef tuple key = (A, B)
        cdef dict r = self._mono.get(key)
        if r is not None:
            return r
        cdef int first = -1, idx
        cdef list Ap
        for idx in range(len(A)):
            if A[idx]:
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

    cpdef dict word(self, letters, tuple zero):
        cdef dict cur = {zero: _UNIT}
        for p in reversed(list(letters)):
            cur = self.apply_gen(p, cur)
        return cur

    cpdef dict bar_mono(self, tuple A):
        cdef dict r = self._bar.get(A)
        if r is not None:
            return r
        cdef list letters = []
        cdef int idx
        for idx in range(len(A)):
            letters.extend([idx] * A[idx])
        letters.reverse()
        r = self.word(letters, tuple([0] * len(A)))
        self._bar[A] = r
        return r

    cpdef dict elem_mul(self, dict x, dict y):
        cdef dict out = {}
        cdef dict pa, pb, pab, pc
        for A, pa in x.items():
            for B, pb in y.items():
                pab = poly_mul(pa, pb)
                for Ct, pc in self.mono_mul(A, B).items():
                    accumulate_product(out, Ct, pab, pc)
        return out
