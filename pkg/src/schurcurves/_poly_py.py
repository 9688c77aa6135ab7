"""Pure-Python kernel for sparse polynomial arithmetic on packed exponents.

A polynomial in three variables with non-negative exponents is a dict mapping
a packed key (e1 << 42 | e2 << 21 | e3, each slot < 2**21) to a non-zero
integer coefficient.  Packed keys add under monomial multiplication and sort
in lexicographic monomial order, which is what the division loop needs.

The compiled twin in _poly_kernel.pyx implements the same three functions;
callers select an implementation at import time.
"""

from __future__ import annotations

import heapq

IMPL = "python"

SLOT_BITS = 21
SLOT_MASK = (1 << SLOT_BITS) - 1
MAX_EXPONENT = SLOT_MASK


class InexactDivision(ArithmeticError):
    """Exact polynomial division left a remainder (or a non-dividing coefficient)."""


def mul(a: dict, b: dict) -> dict:
    """Product of two packed-key polynomials."""
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            v = get(k, 0) + ca * cb
            if v:
                out[k] = v
            else:
                del out[k]
    return out


def mul_capped(a: dict, b: dict, cap: int) -> dict:
    """Like mul, but raises OverflowError once the result exceeds cap terms."""
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            v = get(k, 0) + ca * cb
            if v:
                out[k] = v
            else:
                del out[k]
        if len(out) > cap:
            raise OverflowError(f"term cap {cap} exceeded")
    return out


def divexact(num: dict, den: dict) -> dict:
    """Quotient num / den, requiring the division to be exact.

    Repeatedly cancels the lexicographically leading remainder term against
    the leading term of den.  Exactness of every leading-coefficient division
    and an empty final remainder certify num = quotient * den over Z.
    """
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if not num:
        return {}
    rem = dict(num)
    dl = max(den)
    dc = den[dl]
    den_items = list(den.items())
    q: dict = {}
    heap = [-k for k in rem]
    heapq.heapify(heap)
    get = rem.get
    while rem:
        while True:
            nl = -heap[0]
            if nl in rem:
                break
            heapq.heappop(heap)
        if (
            (nl & SLOT_MASK) < (dl & SLOT_MASK)
            or ((nl >> SLOT_BITS) & SLOT_MASK) < ((dl >> SLOT_BITS) & SLOT_MASK)
            or (nl >> (2 * SLOT_BITS)) < (dl >> (2 * SLOT_BITS))
        ):
            raise InexactDivision("leading monomial not divisible")
        e = nl - dl
        nc = rem[nl]
        c, r = divmod(nc, dc)
        if r:
            raise InexactDivision("leading coefficient not divisible")
        q[e] = c
        for k, cc in den_items:
            kk = k + e
            v = get(kk, 0) - c * cc
            if v:
                if kk not in rem:
                    heapq.heappush(heap, -kk)
                rem[kk] = v
            else:
                del rem[kk]
    return q
