# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled reduction kernels; same API and representation as ``_kernels_py``."""

from heapq import heapify, heappop, heappush
from math import gcd

BACKEND = "cython"

cdef int _CONTENT_EVERY = 32


cpdef tuple heap_key(tuple exp, tuple rows):
    cdef list out = []
    cdef long s
    cdef tuple row, pair
    for row in rows:
        s = 0
        for pair in row:
            s += <long>pair[1] * <long>exp[<Py_ssize_t>pair[0]]
        out.append(-s)
    return tuple(out)


cpdef bint divides(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    for i in range(n):
        if <long>a[i] > <long>b[i]:
            return False
    return True


cdef inline tuple _add(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = <long>a[i] + <long>b[i]
    return tuple(out)


cdef inline tuple _sub(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = <long>a[i] - <long>b[i]
    return tuple(out)


cpdef tuple lcm_exp(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    cdef long x, y
    for i in range(n):
        x = a[i]
        y = b[i]
        out[i] = x if x > y else y
    return tuple(out)


cdef object _content2(dict f, dict rem):
    cdef object g = 0
    for c in f.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    for c in rem.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


cdef void _divide(dict p, object g):
    for k in p:
        p[k] //= g


def normal_form(dict f, list basis, tuple rows):
    """Fully reduce ``f`` modulo ``basis``.

    Returns ``(rem, num, den)`` with ``rem`` primitive and
    ``rem * den / num`` the exact remainder of ``f``.
    """
    f = dict(f)
    cdef list heap = [(heap_key(e, rows), e) for e in f]
    heapify(heap)
    cdef dict rem = {}
    cdef long steps = 0
    cdef object num = 1, den = 1
    cdef tuple m, lead, q, me, e, item
    cdef list terms
    cdef object a, lc, h, cf, cg, old, v, c
    cdef bint found
    cdef Py_ssize_t t, nterms
    while heap:
        m = heappop(heap)[1]
        a = f.get(m)
        if a is None:
            continue
        found = False
        for item in basis:
            lead = item[0]
            if divides(lead, m):
                lc = item[1]
                terms = item[2]
                found = True
                break
        if not found:
            rem[m] = f.pop(m)
            continue
        q = _sub(m, lead)
        h = gcd(a, lc)
        cf = lc // h
        cg = a // h
        if cf < 0:
            cf = -cf
            cg = -cg
        if cf != 1:
            num *= cf
            for k in f:
                f[k] *= cf
            for k in rem:
                rem[k] *= cf
        del f[m]
        nterms = len(terms)
        for t in range(1, nterms):
            e, c = terms[t]
            me = _add(q, e)
            old = f.get(me)
            if old is None:
                f[me] = -cg * c
                heappush(heap, (heap_key(me, rows), me))
            else:
                v = old - cg * c
                if v:
                    f[me] = v
                else:
                    del f[me]
        steps += 1
        if steps % _CONTENT_EVERY == 0:
            h = _content2(f, rem)
            if h > 1:
                den *= h
                _divide(f, h)
                _divide(rem, h)
    h = _content2(rem, {})
    if h > 1:
        den *= h
        _divide(rem, h)
    return rem, num, den


def spoly(tuple g1, tuple g2):
    """Fraction-free S-polynomial of two basis elements."""
    cdef tuple lead1 = g1[0], lead2 = g2[0]
    cdef object lc1 = g1[1], lc2 = g2[1]
    cdef list terms1 = g1[2], terms2 = g2[2]
    cdef tuple L = lcm_exp(lead1, lead2)
    cdef tuple q1 = _sub(L, lead1), q2 = _sub(L, lead2)
    cdef object h = gcd(lc1, lc2)
    cdef object c1 = lc2 // h, c2 = lc1 // h, v
    cdef dict out = {}
    cdef tuple e, me
    cdef Py_ssize_t t
    for t in range(1, len(terms1)):
        e, c = terms1[t]
        me = _add(q1, e)
        out[me] = out.get(me, 0) + c1 * c
    for t in range(1, len(terms2)):
        e, c = terms2[t]
        me = _add(q2, e)
        v = out.get(me, 0) - c2 * c
        if v:
            out[me] = v
        else:
            out.pop(me, None)
    return {k: v for k, v in out.items() if v}
