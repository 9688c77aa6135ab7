# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel for sparse polynomial arithmetic on packed exponents.

Same contract as _poly_py (the pure-Python twin): polynomials are dicts from
packed int keys (three 21-bit exponent slots) to non-zero int coefficients.
Coefficients stay arbitrary-precision Python ints; the compiled loops remove
the interpreter overhead of the convolution and division inner loops.
"""

import heapq

IMPL = "cython"

SLOT_BITS = 21
SLOT_MASK = (1 << SLOT_BITS) - 1
MAX_EXPONENT = SLOT_MASK


class InexactDivision(ArithmeticError):
    pass


def mul(dict a, dict b):
    cdef long long ka, kb, k
    cdef Py_ssize_t i, nb
    if len(a) > len(b):
        a, b = b, a
    cdef list bkeys = []
    cdef list bcoeffs = []
    for kb, cb in b.items():
        bkeys.append(kb)
        bcoeffs.append(cb)
    nb = len(bkeys)
    cdef dict out = {}
    for ka, ca in a.items():
        for i in range(nb):
            kb = <long long> bkeys[i]
            k = ka + kb
            prev = out.get(k)
            if prev is None:
                out[k] = ca * bcoeffs[i]
            else:
                v = prev + ca * bcoeffs[i]
                if v:
                    out[k] = v
                else:
                    del out[k]
    return out


def mul_capped(dict a, dict b, long long cap):
    cdef long long ka, kb, k
    cdef Py_ssize_t i, nb
    if len(a) > len(b):
        a, b = b, a
    cdef list bkeys = []
    cdef list bcoeffs = []
    for kb, cb in b.items():
        bkeys.append(kb)
        bcoeffs.append(cb)
    nb = len(bkeys)
    cdef dict out = {}
    for ka, ca in a.items():
        for i in range(nb):
            kb = <long long> bkeys[i]
            k = ka + kb
            prev = out.get(k)
            if prev is None:
                out[k] = ca * bcoeffs[i]
            else:
                v = prev + ca * bcoeffs[i]
                if v:
                    out[k] = v
                else:
                    del out[k]
        if len(out) > cap:
            raise OverflowError("term cap %d exceeded" % cap)
    return out


def divexact(dict num, dict den):
    cdef long long nl, dl, e, k, kk
    cdef Py_ssize_t i, nd
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if not num:
        return {}
    cdef dict rem = dict(num)
    dl = max(den)
    dc = den[dl]
    cdef list dkeys = []
    cdef list dcoeffs = []
    for k, c in den.items():
        dkeys.append(k)
        dcoeffs.append(c)
    nd = len(dkeys)
    cdef dict q = {}
    cdef list heap = [-k for k in rem]
    heapq.heapify(heap)
    cdef long long mask = SLOT_MASK
    cdef int bits = SLOT_BITS
    while rem:
        while True:
            nl = -(<long long> heap[0])
            if nl in rem:
                break
            heapq.heappop(heap)
        if ((nl & mask) < (dl & mask)
                or ((nl >> bits) & mask) < ((dl >> bits) & mask)
                or (nl >> (2 * bits)) < (dl >> (2 * bits))):
            raise InexactDivision("leading monomial not divisible")
        e = nl - dl
        nc = rem[nl]
        c, r = divmod(nc, dc)
        if r:
            raise InexactDivision("leading coefficient not divisible")
        q[e] = c
        for i in range(nd):
            kk = (<long long> dkeys[i]) + e
            prev = rem.get(kk)
            if prev is None:
                rem[kk] = -c * dcoeffs[i]
                heapq.heappush(heap, -kk)
            else:
                v = prev - c * dcoeffs[i]
                if v:
                    rem[kk] = v
                else:
                    del rem[kk]
    return q
