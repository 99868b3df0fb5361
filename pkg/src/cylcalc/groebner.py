"""Buchberger engine and the ideal-level decision procedures built on it.

Every geometric question in this package is reduced to one of:
ideal membership, consistency (``1 not in I``), radical membership via the
Rabinowitsch trick, radical equality, elimination, and saturation.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Optional, Tuple

from . import _backend
from .polycore import GREVLEX, MonomialOrder, Polynomial, render

ONE = Polynomial.constant(1)


# -- presentations -----------------------------------------------------------

@dataclass(frozen=True)
class IdealPresentation:
    """Finite generator list at a finite level (a set of variable indices).

    Zero generators are dropped; an empty list is the zero ideal.
    """

    level: frozenset
    generators: Tuple[Polynomial, ...] = ()

    def __post_init__(self):
        level = frozenset(self.level)
        gens = tuple(Polynomial.coerce(g) for g in self.generators)
        gens = tuple(g for g in gens if g)
        for g in gens:
            extra = g.support() - level
            if extra:
                raise ValueError(
                    f"generator {g} uses t{min(extra)} outside level {format_level(level)}")
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "generators", gens)

    def at(self, level: Iterable[int]) -> "IdealPresentation":
        """The same generators, regarded at a larger level."""
        return IdealPresentation(self.level | frozenset(level), self.generators)

    def __add__(self, other: "IdealPresentation") -> "IdealPresentation":
        return IdealPresentation(self.level | other.level, self.generators + other.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def __str__(self):
        return "<" + ", ".join(render(g) for g in self.generators) + ">@" + format_level(self.level)


def ideal(*generators, level: Optional[Iterable[int]] = None) -> IdealPresentation:
    """Build a presentation; the level defaults to the generators' support."""
    gens = [Polynomial.coerce(g) for g in generators]
    lv = frozenset().union(*(g.support() for g in gens)) if level is None else frozenset(level)
    if level is not None:
        lv |= frozenset().union(*(g.support() for g in gens))
    return IdealPresentation(lv, tuple(gens))


def unit_ideal(level: Iterable[int] = ()) -> IdealPresentation:
    return IdealPresentation(frozenset(level), (ONE,))


def sum_ideals(ideals: Iterable[IdealPresentation], level: Iterable[int] = ()) -> IdealPresentation:
    lv = frozenset(level)
    gens: list = []
    for I in ideals:
        lv |= I.level
        gens.extend(I.generators)
    return IdealPresentation(lv, tuple(gens))


def product_ideal(I: IdealPresentation, J: IdealPresentation) -> IdealPresentation:
    """Generator-wise product; ``V(I*J) = V(I) | V(J)``."""
    return IdealPresentation(I.level | J.level,
                             tuple(f * g for f in I.generators for g in J.generators))


def format_level(level: Iterable[int]) -> str:
    return "{" + ",".join(str(v) for v in sorted(level)) + "}"


def fresh_variable(*index_sets: Iterable[int]) -> int:
    """Smallest index strictly greater than every index in play."""
    top = -1
    for s in index_sets:
        for v in s:
            if v > top:
                top = v
    return top + 1


# -- dense conversion --------------------------------------------------------

def _to_dense(p: Polynomial, pos: dict) -> dict:
    n = len(pos)
    den = 1
    for c in p.terms.values():
        den = lcm(den, c.denominator)
    out = {}
    for m, c in p.terms.items():
        e = [0] * n
        for v, k in m:
            e[pos[v]] = k
        out[tuple(e)] = c.numerator * (den // c.denominator)
    return out


def _from_dense(d: dict, variables: tuple, scale: Fraction = Fraction(1)) -> Polynomial:
    terms = {}
    for e, c in d.items():
        m = tuple((variables[j], k) for j, k in enumerate(e) if k)
        terms[m] = Fraction(c) * scale
    return Polynomial(terms)


def _entry(d: dict, rows) -> tuple:
    key = _backend.kernels.heap_key
    terms = sorted(d.items(), key=lambda ec: key(ec[0], rows))
    return terms[0][0], terms[0][1], terms


def _is_constant_dense(d: dict) -> bool:
    return len(d) == 1 and not any(next(iter(d)))


# -- Buchberger --------------------------------------------------------------

def _buchberger(dense_gens, rows):
    """Reduced Gröbner basis as a list of primitive dense polynomials.

    Pairs are taken smallest lcm first (normal strategy); the product
    criterion and Buchberger's chain criterion discard useless pairs.
    """
    K = _backend.kernels
    G: list = []
    pairs: list = []
    pending: set = set()

    def add(d):
        if d[next(iter(sorted(d, key=lambda e: K.heap_key(e, rows))))] < 0:
            d = {e: -c for e, c in d.items()}
        g = _entry(d, rows)
        j = len(G)
        G.append(g)
        for i in range(j):
            L = K.lcm_exp(G[i][0], g[0])
            heapq.heappush(pairs, (sum(L), tuple(-x for x in K.heap_key(L, rows)), i, j, L))
            pending.add((i, j))

    for d in dense_gens:
        r = K.normal_form(d, G, rows)[0] if G else dict(d)
        if r:
            if _is_constant_dense(r):
                return [r]
            add(r)

    while pairs:
        _, _, i, j, L = heapq.heappop(pairs)
        pending.discard((i, j))
        li, lj = G[i][0], G[j][0]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        if _chain_skip(G, i, j, L, pending, K):
            continue
        r = K.normal_form(K.spoly(G[i], G[j]), G, rows)[0]
        if r:
            if _is_constant_dense(r):
                return [r]
            add(r)

    return _reduce_basis(G, rows, K)


def _chain_skip(G, i, j, L, pending, K):
    for k in range(len(G)):
        if k == i or k == j:
            continue
        if not K.divides(G[k][0], L):
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        return True
    return False


def _reduce_basis(G, rows, K):
    # smallest leads first, so every divisor of a lead is seen before it
    order = sorted(range(len(G)), key=lambda i: K.heap_key(G[i][0], rows), reverse=True)
    minimal = []
    for i in order:
        lead = G[i][0]
        if any(K.divides(G[j][0], lead) for j in minimal):
            continue
        minimal.append(i)
    reduced = []
    for i in minimal:
        others = [G[j] for j in minimal if j != i]
        d = dict((e, c) for e, c in G[i][2])
        r = K.normal_form(d, others, rows)[0] if others else d
        lead = min(r, key=lambda e: K.heap_key(e, rows))
        if r[lead] < 0:
            r = {e: -c for e, c in r.items()}
        reduced.append((K.heap_key(lead, rows), r))
    reduced.sort(key=lambda kr: kr[0])
    return [r for _, r in reduced]


@lru_cache(maxsize=16384)
def _reduced_basis(gens: tuple, variables: tuple, order: MonomialOrder) -> tuple:
    if not gens:
        return ()
    pos = {v: j for j, v in enumerate(variables)}
    rows = order.rows(variables)
    dense = [_to_dense(g, pos) for g in gens]
    out = []
    for d in _buchberger(dense, rows):
        lead = min(d, key=lambda e: _backend.kernels.heap_key(e, rows))
        out.append(_from_dense(d, variables, Fraction(1, d[lead])))
    return tuple(out)


_backend.on_switch(_reduced_basis.cache_clear)


def clear_cache():
    _reduced_basis.cache_clear()


# -- Gröbner bases -----------------------------------------------------------

@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Gröbner basis: monic, sorted by descending leading monomial."""

    level: frozenset
    order: MonomialOrder
    basis: Tuple[Polynomial, ...]
    reduced: bool = True
    _dense: dict = field(default_factory=dict, compare=False, repr=False)

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0] == ONE

    def ideal(self) -> IdealPresentation:
        return IdealPresentation(self.level, self.basis)

    def support(self) -> frozenset:
        return frozenset().union(*(g.support() for g in self.basis))

    def _entries(self, variables):
        if variables not in self._dense:
            pos = {v: j for j, v in enumerate(variables)}
            rows = self.order.rows(variables)
            self._dense[variables] = (rows, [_entry(_to_dense(g, pos), rows) for g in self.basis])
        return self._dense[variables]

    def normal_form(self, f: Polynomial) -> Polynomial:
        """Exact remainder of ``f`` on division by the basis."""
        f = Polynomial.coerce(f)
        if not f or not self.basis:
            return f
        variables = tuple(sorted(self.level | f.support()))
        rows, entries = self._entries(variables)
        pos = {v: j for j, v in enumerate(variables)}
        d = _to_dense(f, pos)
        scale = Fraction(1)
        for c in f.terms.values():
            scale = Fraction(lcm(scale.numerator, c.denominator))
        rem, num, den = _backend.kernels.normal_form(d, entries, rows)
        if not rem:
            return Polynomial()
        return _from_dense(rem, variables, Fraction(den, num) / scale)

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)


def _variables(I: IdealPresentation) -> tuple:
    return tuple(sorted(I.level))


def groebner_basis(I: IdealPresentation, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    basis = _reduced_basis(I.generators, _variables(I), order)
    return GroebnerBasis(I.level, order, basis)


def _embed(f: Polynomial, I: IdealPresentation) -> IdealPresentation:
    extra = f.support() - I.level
    return I.at(extra) if extra else I


def ideal_member(f: Polynomial, I: IdealPresentation) -> bool:
    f = Polynomial.coerce(f)
    if not f:
        return True
    return groebner_basis(_embed(f, I)).contains(f)


def is_consistent(I: IdealPresentation) -> bool:
    """True iff ``1`` is not in ``I``, i.e. ``V(I)`` is nonempty over Q-bar."""
    return not groebner_basis(I).is_unit()


def rabinowitsch_ideal(f: Polynomial, I: IdealPresentation) -> Tuple[IdealPresentation, int]:
    f = Polynomial.coerce(f)
    y = fresh_variable(I.level, f.support())
    J = IdealPresentation(I.level | f.support() | {y},
                          I.generators + (ONE - Polynomial.var(y) * f,))
    return J, y


def radical_member(f: Polynomial, I: IdealPresentation) -> bool:
    """True iff ``f`` lies in the radical of ``I``."""
    J, _ = rabinowitsch_ideal(f, I)
    return not is_consistent(J)


def radical_equal(I: IdealPresentation, J: IdealPresentation) -> bool:
    level = I.level | J.level
    I, J = I.at(level), J.at(level)
    return (all(radical_member(g, J) for g in I.generators)
            and all(radical_member(g, I) for g in J.generators))


def radical_contains(I: IdealPresentation, J: IdealPresentation) -> bool:
    """True iff every generator of ``J`` lies in the radical of ``I``."""
    level = I.level | J.level
    I = I.at(level)
    return all(radical_member(g, I) for g in J.generators)


def eliminate(I: IdealPresentation, keep: Iterable[int]) -> IdealPresentation:
    """Presentation of ``I`` intersected with the ring on ``keep``."""
    keep = frozenset(keep)
    if not keep <= I.level:
        raise ValueError(f"keep set {format_level(keep)} is not inside level {format_level(I.level)}")
    drop = I.level - keep
    order = MonomialOrder.eliminating(drop) if drop else GREVLEX
    G = groebner_basis(I, order)
    return IdealPresentation(keep, tuple(g for g in G.basis if g.support() <= keep))


def saturate(I: IdealPresentation, f: Polynomial) -> IdealPresentation:
    """Presentation of ``I : f^oo`` at ``level(I)`` (widened by ``support(f)``)."""
    f = Polynomial.coerce(f)
    J, _ = rabinowitsch_ideal(f, I)
    return eliminate(J, I.level | f.support())


# -- certificates ------------------------------------------------------------

@dataclass(frozen=True)
class RadicalProof:
    """Evidence that ``f`` lies in the radical of an ideal.

    ``basis`` is the reduced Gröbner basis of ``I + <1 - t_y*f>`` (it is
    ``[1]`` exactly when the claim holds). ``power``, when found, is the
    least ``k`` with ``f^k`` in ``I``, a second route to the same claim.
    """

    f: Polynomial
    fresh: int
    basis: Tuple[Polynomial, ...]
    power: Optional[int] = None

    @property
    def holds(self) -> bool:
        return self.basis == (ONE,)


def radical_proof(f: Polynomial, I: IdealPresentation, max_power: int = 32) -> RadicalProof:
    f = Polynomial.coerce(f)
    J, y = rabinowitsch_ideal(f, I)
    basis = groebner_basis(J).basis
    power = None
    if basis == (ONE,):
        G = groebner_basis(_embed(f, I))
        g = Polynomial.constant(1)
        for k in range(1, max_power + 1):
            g = G.normal_form(g * f)
            if not g:
                power = k
                break
    return RadicalProof(f, y, basis, power)


def verify_radical_proof(proof: RadicalProof, I: IdealPresentation) -> bool:
    """Re-check a proof from scratch, bypassing the basis cache."""
    J, y = rabinowitsch_ideal(proof.f, I)
    if y != proof.fresh:
        return False
    basis = _reduced_basis.__wrapped__(J.generators, _variables(J), GREVLEX)
    if basis != (ONE,) or not proof.holds:
        return False
    if proof.power is not None:
        E = _embed(proof.f, I)
        G = GroebnerBasis(E.level, GREVLEX,
                          _reduced_basis.__wrapped__(E.generators, _variables(E), GREVLEX))
        if not G.contains(proof.f ** proof.power):
            return False
    return True
