"""Cylinder sets in F^L: finite unions of level-tagged locally closed pieces.

A piece ``(level, A, B)`` denotes the preimage under the projection to
``F^level`` of ``V(A) minus V(B)``. Nothing removed is ``B = <1>``; the
whole space is ``(A = <>, B = <1>)``. There is no canonical form: equality
and inclusion are decided semantically through emptiness of differences,
and emptiness of one piece is ``B`` inside the radical of ``A``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

from .groebner import (
    GREVLEX,
    ONE,
    IdealPresentation,
    eliminate,
    format_level,
    groebner_basis,
    radical_member,
    saturate,
    product_ideal,
)
from .polycore import Polynomial


class NotOpen(ValueError):
    """The cylinder passed where an open set was required is not open."""


class NotWeaklyStable(ValueError):
    def __init__(self, generator: Polynomial):
        self.generator = generator
        super().__init__(f"generator {generator} breaks the reconstruction")


@dataclass(frozen=True)
class LocallyClosedPiece:
    level: frozenset
    closed: IdealPresentation
    removed: IdealPresentation

    def __post_init__(self):
        level = frozenset(self.level) | self.closed.level | self.removed.level
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "closed", self.closed.at(level))
        object.__setattr__(self, "removed", self.removed.at(level))

    def trivially_empty(self) -> bool:
        return self.removed.is_zero() or any(
            g.is_constant() for g in self.closed.generators)

    def is_empty(self) -> bool:
        if self.trivially_empty():
            return True
        if not self.closed.generators:
            # V(A) is everything; only a zero removed ideal could cover it
            return False
        return all(radical_member(b, self.closed) for b in self.removed.generators)

    def simplified(self) -> "LocallyClosedPiece":
        """Same set, smaller presentation.

        ``A`` becomes its reduced basis; each removed generator is replaced
        by its normal form modulo ``A`` (both agree on ``V(A)``), with zeros,
        duplicates and scalar multiples dropped.
        """
        if self.trivially_empty():
            return self
        if not self.closed.generators:
            monic = {b.monic(): None for b in self.removed.generators}
            gens = (ONE,) if any(b.is_constant() for b in monic) else tuple(monic)
            return LocallyClosedPiece(self.level, self.closed, IdealPresentation(self.level, gens))
        G = groebner_basis(self.closed, GREVLEX)
        if G.is_unit():
            return LocallyClosedPiece(self.level, IdealPresentation(self.level, (ONE,)), self.removed)
        removed: dict = {}
        for b in self.removed.generators:
            r = G.normal_form(b)
            if not r:
                continue
            r = r.monic()
            if r.is_constant():
                removed = {ONE: None}
                break
            removed[r] = None
        return LocallyClosedPiece(self.level, IdealPresentation(self.level, G.basis),
                                  IdealPresentation(self.level, tuple(removed)))

    def lift(self, level: Iterable[int]) -> "LocallyClosedPiece":
        return LocallyClosedPiece(self.level | frozenset(level), self.closed, self.removed)


@dataclass(frozen=True)
class CylinderSet:
    pieces: Tuple[LocallyClosedPiece, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))

    def level(self) -> frozenset:
        return frozenset().union(*(p.level for p in self.pieces))

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __sub__(self, other):
        return difference(self, other)

    def __invert__(self):
        return complement(self)


# -- constructors ------------------------------------------------------------

def _ideal(gens, level) -> IdealPresentation:
    gens = tuple(Polynomial.coerce(g) for g in gens)
    lv = frozenset(level).union(*(g.support() for g in gens))
    return IdealPresentation(lv, gens)


def piece(closed=(), removed=(ONE,), level=()) -> LocallyClosedPiece:
    return LocallyClosedPiece(frozenset(level), _ideal(closed, ()), _ideal(removed, ()))


def closed_set(*generators, level=()) -> CylinderSet:
    """``V(generators)``."""
    return CylinderSet((piece(generators, (ONE,), level),))


def open_set(*generators, level=()) -> CylinderSet:
    """Complement of ``V(generators)``."""
    return CylinderSet((piece((), generators, level),))


def full_space(level=()) -> CylinderSet:
    return CylinderSet((piece((), (ONE,), level),))


def empty_set() -> CylinderSet:
    return CylinderSet(())


# -- operations --------------------------------------------------------------

def lift_to_level(c: CylinderSet, K: Iterable[int]) -> CylinderSet:
    K = frozenset(K)
    for p in c.pieces:
        if not p.level <= K:
            raise ValueError(f"level {format_level(K)} does not contain piece level {format_level(p.level)}")
    return CylinderSet(tuple(LocallyClosedPiece(K, p.closed, p.removed) for p in c.pieces))


def _prune(pieces) -> tuple:
    out = []
    for p in pieces:
        p = p.simplified()
        if not p.is_empty():
            out.append(p)
    return tuple(out)


def union(a: CylinderSet, b: CylinderSet) -> CylinderSet:
    return CylinderSet(a.pieces + b.pieces)


def _meet(p: LocallyClosedPiece, q: LocallyClosedPiece) -> LocallyClosedPiece:
    # removed parts multiply: V(B*B') = V(B) | V(B')
    return LocallyClosedPiece(p.level | q.level, p.closed + q.closed,
                              product_ideal(p.removed, q.removed))


def intersect(a: CylinderSet, b: CylinderSet) -> CylinderSet:
    return CylinderSet(_prune(_meet(p, q) for p in a.pieces for q in b.pieces))


def _subtract(r: LocallyClosedPiece, q: LocallyClosedPiece) -> list:
    """Pieces of ``r`` minus ``q``, empties dropped."""
    level = r.level | q.level
    if groebner_basis((r.closed + q.closed).at(level), GREVLEX).is_unit():
        return [r]  # disjoint closures
    # r - q = (r - V(A')) | (r & V(A') & V(B'))
    outside = LocallyClosedPiece(level, r.closed, product_ideal(r.removed, q.closed))
    inside = LocallyClosedPiece(level, r.closed + q.closed + q.removed, r.removed)
    return list(_prune((outside, inside)))


def _difference_pieces(pieces, b: CylinderSet, stop_early: bool = False):
    out = []
    for p in pieces:
        remaining = list(_prune((p,)))
        for q in b.pieces:
            if not remaining:
                break
            remaining = [s for r in remaining for s in _subtract(r, q)]
        if remaining and stop_early:
            return remaining
        out.extend(remaining)
    return out


def complement(a: CylinderSet) -> CylinderSet:
    return CylinderSet(tuple(_difference_pieces(full_space(a.level()).pieces, a)))


def difference(a: CylinderSet, b: CylinderSet) -> CylinderSet:
    return CylinderSet(tuple(_difference_pieces(a.pieces, b)))


def bool_op(op: str, a: CylinderSet, b: Optional[CylinderSet] = None) -> CylinderSet:
    if op == "complement":
        return complement(a)
    if b is None:
        raise ValueError(f"{op} needs two operands")
    ops = {"union": union, "intersect": intersect, "difference": difference}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op](a, b)


def is_empty(c: CylinderSet) -> bool:
    return all(p.is_empty() for p in c.pieces)


def is_subset(a: CylinderSet, b: CylinderSet) -> bool:
    return not _difference_pieces(a.pieces, b, stop_early=True)


def is_equal(a: CylinderSet, b: CylinderSet) -> bool:
    return is_subset(a, b) and is_subset(b, a)


def closure(c: CylinderSet) -> CylinderSet:
    """Zariski closure; every output piece has nothing removed."""
    out = []
    for p in c.pieces:
        if p.trivially_empty():
            continue
        for b in p.removed.generators:
            sat = p.closed if b.is_constant() else saturate(p.closed, b)
            if any(g.is_constant() for g in sat.generators):
                continue
            out.append(LocallyClosedPiece(p.level, sat, IdealPresentation(p.level, (ONE,))))
    return CylinderSet(tuple(out))


def is_closed(c: CylinderSet) -> bool:
    return is_subset(closure(c), c)


def is_open(c: CylinderSet) -> bool:
    return is_closed(complement(c))


def vanishing_ideal_of_closed(c: CylinderSet) -> IdealPresentation:
    """An ideal whose zero set is the closure of ``c`` (product over pieces)."""
    level = c.level()
    result = IdealPresentation(level, (ONE,))
    for p in closure(c).pieces:
        result = product_ideal(result, p.closed)
    return result.at(level)


@dataclass(frozen=True)
class WeakStabilityWitness:
    """``U`` is the preimage of the complement of ``V(complement_ideal)`` in ``F^level``."""

    level: frozenset
    complement_ideal: IdealPresentation

    def as_cylinder(self) -> CylinderSet:
        return CylinderSet((LocallyClosedPiece(self.level, IdealPresentation(self.level),
                                               self.complement_ideal),))

    def closed_part(self) -> CylinderSet:
        return CylinderSet((LocallyClosedPiece(self.level, self.complement_ideal,
                                               IdealPresentation(self.level, (ONE,))),))


def stable_level_of(A: IdealPresentation) -> Tuple[frozenset, IdealPresentation]:
    """Support of the reduced grevlex basis of ``A``, and ``A`` contracted there.

    Raises :class:`NotWeaklyStable` if extending the contraction back does
    not recover ``A`` up to radical.
    """
    G = groebner_basis(A, GREVLEX)
    K = G.support()
    C = eliminate(A, K)
    back = C.at(A.level)
    for g in A.generators:
        if not radical_member(g, back):
            raise NotWeaklyStable(g)
    return K, C


def is_weakly_stable(c: CylinderSet) -> WeakStabilityWitness:
    """Witness that the open cylinder ``c`` is a preimage from a finite level.

    The level reported is *a* stable level, not necessarily the smallest.
    """
    comp = complement(c)
    if not is_subset(closure(comp), comp):
        raise NotOpen("the complement of the input is not closed")
    A = vanishing_ideal_of_closed(comp)
    K, C = stable_level_of(A)
    return WeakStabilityWitness(K, C)


def union_all(cylinders: Iterable[CylinderSet]) -> CylinderSet:
    pieces: list = []
    for c in cylinders:
        pieces.extend(c.pieces)
    return CylinderSet(tuple(pieces))


__all__ = [
    "CylinderSet", "LocallyClosedPiece", "WeakStabilityWitness", "NotOpen", "NotWeaklyStable",
    "piece", "closed_set", "open_set", "full_space", "empty_set", "lift_to_level", "bool_op",
    "union", "intersect", "complement", "difference", "is_empty", "is_subset", "is_equal",
    "closure", "is_closed", "is_open", "is_weakly_stable", "stable_level_of", "union_all",
    "vanishing_ideal_of_closed",
]
