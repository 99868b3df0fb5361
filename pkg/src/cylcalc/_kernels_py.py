"""Pure-Python reduction kernels (fallback for the compiled ``_kernels``).

Dense representation shared with the compiled twin:

* an exponent vector is a tuple of ints, one per variable in play;
* a polynomial is a dict ``{exponent vector: int}`` with nonzero values;
* a basis element is ``(lead, lead_coeff, terms)`` where ``terms`` lists
  ``(exponent vector, coeff)`` in descending order, lead first;
* ``rows`` is a weight matrix, each row a tuple of ``(position, weight)``.

Coefficients are integers throughout; reduction is fraction-free and results
are returned primitive (content divided out).
"""

from heapq import heapify, heappop, heappush
from math import gcd

BACKEND = "python"

_CONTENT_EVERY = 32


def heap_key(exp, rows):
    """Negated row values: the smallest heap key is the largest monomial."""
    return tuple(-sum(w * exp[j] for j, w in row) for row in rows)


def divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def lcm_exp(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _content(*polys):
    g = 0
    for p in polys:
        for c in p.values():
            g = gcd(g, c)
            if g == 1:
                return 1
    return g


def _divide(p, g):
    for k in p:
        p[k] //= g


def normal_form(f, basis, rows):
    """Fully reduce ``f`` modulo ``basis``.

    Returns ``(rem, num, den)`` with ``rem`` primitive and
    ``rem * den / num`` the exact remainder of ``f``.
    """
    f = dict(f)
    heap = [(heap_key(e, rows), e) for e in f]
    heapify(heap)
    rem = {}
    steps = 0
    num = 1
    den = 1
    while heap:
        _, m = heappop(heap)
        a = f.get(m)
        if a is None:
            continue
        for lead, lc, terms in basis:
            if divides(lead, m):
                break
        else:
            rem[m] = f.pop(m)
            continue
        q = tuple(x - y for x, y in zip(m, lead))
        h = gcd(a, lc)
        cf = lc // h
        cg = a // h
        if cf < 0:
            cf, cg = -cf, -cg
        if cf != 1:
            num *= cf
            for k in f:
                f[k] *= cf
            for k in rem:
                rem[k] *= cf
        del f[m]
        for e, c in terms[1:]:
            me = tuple(x + y for x, y in zip(q, e))
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
            g = _content(f, rem)
            if g > 1:
                den *= g
                _divide(f, g)
                _divide(rem, g)
    g = _content(rem)
    if g > 1:
        den *= g
        _divide(rem, g)
    return rem, num, den


def spoly(g1, g2):
    """Fraction-free S-polynomial of two basis elements."""
    lead1, lc1, terms1 = g1
    lead2, lc2, terms2 = g2
    L = lcm_exp(lead1, lead2)
    q1 = tuple(x - y for x, y in zip(L, lead1))
    q2 = tuple(x - y for x, y in zip(L, lead2))
    h = gcd(lc1, lc2)
    c1 = lc2 // h
    c2 = lc1 // h
    out = {}
    for e, c in terms1[1:]:
        me = tuple(x + y for x, y in zip(q1, e))
        out[me] = out.get(me, 0) + c1 * c
    for e, c in terms2[1:]:
        me = tuple(x + y for x, y in zip(q2, e))
        v = out.get(me, 0) - c2 * c
        if v:
            out[me] = v
        else:
            out.pop(me, None)
    return {k: v for k, v in out.items() if v}
