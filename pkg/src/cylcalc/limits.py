"""Direct systems of polynomial rings and ideals of their direct limit.

Two flavors share one duck-typed interface (``variables``, ``le``,
``upper_bound``, ``push``, ``contract``, ``faithful_level``):

* :class:`InclusionSystem` -- levels are finite sets of variable indices,
  ordered by inclusion, with inclusion maps ``F[I] -> F[J]``;
* :class:`DirectSystemSpec` -- an explicitly enumerated directed poset of
  named levels with polynomial substitution maps.

A family of ideals of the limit ring is a list of :class:`LeveledIdeal`; the
constructions below decide which family members come from a given level,
sum those, and locate a level from which the whole family is generated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, Mapping, Optional, Sequence, Tuple

from .groebner import (
    IdealPresentation,
    RadicalProof,
    eliminate,
    fresh_variable,
    ideal_member,
    radical_member,
    radical_proof,
    format_level,
    sum_ideals,
    verify_radical_proof,
)
from .polycore import Polynomial

DEFAULT_BUDGET = 64


class BudgetExhausted(RuntimeError):
    """A stream was consumed up to its prefix budget without success."""

    def __init__(self, message: str, consumed: int):
        self.consumed = consumed
        super().__init__(message)


class LevelError(ValueError):
    """Levels not comparable, no upper bound, or a malformed system."""


# -- systems -----------------------------------------------------------------

class InclusionSystem:
    """Polynomial rings ``F[I]`` for finite ``I``, with inclusion maps."""

    flavor = "inclusion"

    def variables(self, level) -> frozenset:
        return frozenset(level)

    def le(self, i, j) -> bool:
        return frozenset(i) <= frozenset(j)

    def upper_bound(self, levels: Iterable) -> frozenset:
        levels = list(levels)
        if not levels:
            raise LevelError("no levels given")
        return frozenset().union(*map(frozenset, levels))

    def faithful_level(self, levels: Iterable) -> frozenset:
        # inclusions are flat and faithful: any common level decides equality
        return self.upper_bound(levels)

    def push(self, p: Polynomial, i, j) -> Polynomial:
        if not self.le(i, j):
            raise LevelError(f"level {format_level(i)} is not below {format_level(j)}")
        return p

    def push_ideal(self, I: IdealPresentation, i, j) -> IdealPresentation:
        if not self.le(i, j):
            raise LevelError(f"level {format_level(i)} is not below {format_level(j)}")
        return IdealPresentation(frozenset(j) | I.level, I.generators)

    def contract(self, A: IdealPresentation, i, j) -> IdealPresentation:
        """Preimage of ``A`` (an ideal at level ``j``) in the ring at ``i``."""
        return eliminate(A.at(j), frozenset(i))

    def describe(self, level) -> str:
        return format_level(level)


INCLUSION = InclusionSystem()


@dataclass(frozen=True)
class DirectSystemSpec:
    """Explicit direct system with substitution maps.

    ``levels`` maps a level name to its variable set. ``maps`` gives, for
    generating pairs ``(i, j)`` with ``i <= j``, an image polynomial in
    level ``j``'s variables for every variable of level ``i``. The order is
    the reflexive-transitive closure of the generating pairs; composites
    along different paths must agree, and every pair of levels needs an upper
    bound.
    """

    levels: Mapping[Hashable, frozenset]
    maps: Mapping[Tuple[Hashable, Hashable], Mapping[int, Polynomial]]

    flavor = "system"

    def __post_init__(self):
        levels = {k: frozenset(v) for k, v in self.levels.items()}
        object.__setattr__(self, "levels", levels)
        closure: Dict[tuple, Dict[int, Polynomial]] = {
            (k, k): {v: Polynomial.var(v) for v in vs} for k, vs in levels.items()}
        edges: Dict[Hashable, list] = {k: [] for k in levels}
        for (i, j), mapping in self.maps.items():
            if i not in levels or j not in levels:
                raise LevelError(f"map {i} -> {j} names an undeclared level")
            mapping = {int(v): Polynomial.coerce(p) for v, p in mapping.items()}
            if set(mapping) != set(levels[i]):
                raise LevelError(f"map {i} -> {j} must give an image for exactly the variables of {i}")
            for v, p in mapping.items():
                if not p.support() <= levels[j]:
                    raise LevelError(f"image of t{v} under {i} -> {j} leaves level {j}")
            if i == j:
                if any(p != Polynomial.var(v) for v, p in mapping.items()):
                    raise LevelError(f"map {i} -> {i} must be the identity")
                continue
            edges[i].append((j, mapping))
        # compose along all paths; breadth-first from every source
        for src in levels:
            frontier = [src]
            while frontier:
                nxt = []
                for mid in frontier:
                    for dst, step in edges[mid]:
                        composed = {v: p.substitute(step)
                                    for v, p in closure[(src, mid)].items()}
                        if (src, dst) in closure:
                            if closure[(src, dst)] != composed:
                                raise LevelError(f"maps {src} -> {dst} along different paths disagree")
                            continue
                        if dst == src:
                            raise LevelError(f"levels {src} and {mid} form a cycle")
                        closure[(src, dst)] = composed
                        nxt.append(dst)
                frontier = nxt
        for src, dst in list(closure):
            if src != dst and (dst, src) in closure:
                raise LevelError(f"levels {src} and {dst} form a cycle")
        object.__setattr__(self, "_closure", closure)
        names = list(levels)
        for a, b in itertools.combinations(names, 2):
            self.upper_bound([a, b])

    def variables(self, level) -> frozenset:
        try:
            return self.levels[level]
        except KeyError:
            raise LevelError(f"unknown level {level!r}") from None

    def le(self, i, j) -> bool:
        return (i, j) in self._closure

    def upper_bound(self, levels: Iterable):
        levels = list(levels)
        if not levels:
            raise LevelError("no levels given")
        for lv in levels:
            self.variables(lv)
        candidates = [k for k in self.levels if all(self.le(i, k) for i in levels)]
        if not candidates:
            raise LevelError("levels " + ", ".join(map(str, levels)) + " have no upper bound")
        for k in candidates:
            if not any(c != k and self.le(c, k) for c in candidates):
                return k
        return candidates[0]

    def top(self):
        # a finite directed poset has a greatest element
        return self.upper_bound(list(self.levels))

    def faithful_level(self, levels: Iterable):
        # the direct limit of a finite system is the ring at its top level
        return self.top()

    def map(self, i, j) -> Dict[int, Polynomial]:
        if not self.le(i, j):
            raise LevelError(f"level {i} is not below {j}")
        return self._closure[(i, j)]

    def push(self, p: Polynomial, i, j) -> Polynomial:
        return p.substitute(self.map(i, j))

    def push_ideal(self, I: IdealPresentation, i, j) -> IdealPresentation:
        mapping = self.map(i, j)
        return IdealPresentation(self.variables(j),
                                 tuple(g.substitute(mapping) for g in I.generators))

    def contract(self, A: IdealPresentation, i, j) -> IdealPresentation:
        """Preimage of ``A`` (at level ``j``) under the map ``i -> j``.

        Computed as the elimination ideal of ``A + <s_v - phi(t_v)>`` onto
        fresh copies ``s_v`` of level ``i``'s variables.
        """
        if i == j:
            return A
        mapping = self.map(i, j)
        src = sorted(self.variables(i))
        base = fresh_variable(A.level, self.variables(j), src)
        copy = {v: base + n for n, v in enumerate(src)}
        gens = list(A.generators) + [Polynomial.var(copy[v]) - mapping[v] for v in src]
        J = IdealPresentation(A.level | self.variables(j) | set(copy.values()), tuple(gens))
        E = eliminate(J, set(copy.values()))
        back = {c: v for v, c in copy.items()}
        return IdealPresentation(self.variables(i), tuple(g.rename(back) for g in E.generators))

    def describe(self, level) -> str:
        return str(level)


# -- leveled ideals ----------------------------------------------------------

@dataclass(frozen=True)
class LeveledIdeal:
    """Sum of extensions of finitely many level-tagged presentations."""

    entries: Tuple[Tuple[Hashable, IdealPresentation], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple((lv, I) for lv, I in self.entries))

    @classmethod
    def of(cls, *ideals: IdealPresentation) -> "LeveledIdeal":
        """Inclusion flavor: each presentation lives at its own level."""
        return cls(tuple((I.level, I) for I in ideals))

    @classmethod
    def at(cls, level, I: IdealPresentation) -> "LeveledIdeal":
        return cls(((level, I),))

    def levels(self) -> list:
        return [lv for lv, _ in self.entries]

    def generators(self) -> list:
        return [g for _, I in self.entries for g in I.generators]


def _check_entry(system, level, I: IdealPresentation):
    if not I.level <= system.variables(level):
        raise LevelError(f"presentation {I} does not live at level {system.describe(level)}")


def extend(system, I: IdealPresentation, i, j) -> IdealPresentation:
    """Image of ``I`` (at level ``i``) in the ring at level ``j``."""
    return system.push_ideal(I, i, j)


def common_level(system, levels: Sequence):
    levels = list(levels)
    if not levels:
        raise LevelError("common level of an empty list")
    return system.upper_bound(levels)


def ideal_at(system, L: LeveledIdeal, k) -> IdealPresentation:
    """All entries of ``L`` pushed to level ``k`` and summed."""
    pushed = []
    for lv, I in L.entries:
        _check_entry(system, lv, I)
        pushed.append(system.push_ideal(I, lv, k))
    return sum_ideals(pushed, system.variables(k))


def _level_of_member(system, L: LeveledIdeal, i):
    """Contraction to level ``i`` if ``L`` comes from ``i`` up to radical, else None."""
    k = system.faithful_level([i] + L.levels())
    A = ideal_at(system, L, k)
    b = system.contract(A, i, k)
    back = system.push_ideal(b, i, k)
    if all(radical_member(g, back) for g in A.generators):
        # back is inside A by construction, so one direction suffices
        return b
    return None


def lambda_of_level(family: Sequence[LeveledIdeal], i, system=INCLUSION) -> frozenset:
    """Positions of family members that are quasi-finite of level ``i``.

    Decided up to radical: contract to ``i``, extend back, compare.
    """
    return frozenset(n for n, L in enumerate(family)
                     if _level_of_member(system, L, i) is not None)


def u_of_level(family: Sequence[LeveledIdeal], i, system=INCLUSION) -> LeveledIdeal:
    """Sum of the members coming from level ``i``, presented at ``i``."""
    parts = []
    for L in family:
        b = _level_of_member(system, L, i)
        if b is not None:
            parts.append(b)
    return LeveledIdeal.at(i, sum_ideals(parts, system.variables(i)))


# -- certificates ------------------------------------------------------------

@dataclass(frozen=True)
class QuasiFiniteCertificate:
    """A level ``m`` and a presentation there, with radical proofs both ways.

    ``forward[n]`` shows the n-th claimed generator lies in the radical of
    ``ideal`` (extended); ``backward`` shows the converse. ``exact`` records
    whether plain ideal membership also holds in both directions.
    """

    level: Hashable
    ideal: IdealPresentation
    claimed: Tuple[Polynomial, ...]
    forward: Tuple[RadicalProof, ...]
    backward: Tuple[RadicalProof, ...]
    compared_at: Hashable
    exact: bool
    prefix: Optional[int] = None


def _certify(system, m, b: IdealPresentation, claimed: IdealPresentation, k,
             prefix=None) -> QuasiFiniteCertificate:
    ext = system.push_ideal(b, m, k)
    claimed = claimed.at(ext.level)
    ext = ext.at(claimed.level)
    forward = tuple(radical_proof(g, ext) for g in claimed.generators)
    backward = tuple(radical_proof(g, claimed) for g in ext.generators)
    exact = (all(ideal_member(g, ext) for g in claimed.generators)
             and all(ideal_member(g, claimed) for g in ext.generators))
    return QuasiFiniteCertificate(m, b, claimed.generators, forward, backward, k, exact, prefix)


def verify_certificate(cert: QuasiFiniteCertificate, system=INCLUSION, radical_only=False) -> bool:
    """Independent re-check of every proof in ``cert``."""
    ext = system.push_ideal(cert.ideal, cert.level, cert.compared_at)
    claimed = IdealPresentation(ext.level | frozenset().union(*(g.support() for g in cert.claimed)),
                                cert.claimed)
    ext = ext.at(claimed.level)
    if len(cert.forward) != len(claimed.generators) or len(cert.backward) != len(ext.generators):
        return False
    for g, pr in zip(claimed.generators, cert.forward):
        if pr.f != g or not verify_radical_proof(pr, ext):
            return False
    for g, pr in zip(ext.generators, cert.backward):
        if pr.f != g or not verify_radical_proof(pr, claimed):
            return False
    if cert.exact and not radical_only:
        if not all(ideal_member(g, ext) for g in claimed.generators):
            return False
        if not all(ideal_member(g, claimed) for g in ext.generators):
            return False
    return True


def find_stabilizing_level(family: Sequence[LeveledIdeal], system=INCLUSION) -> QuasiFiniteCertificate:
    """Level ``m`` with the full sum of the family equal to its level-``m`` part."""
    levels = [lv for L in family for lv in L.levels()]
    if not levels:
        zero = IdealPresentation(frozenset())
        m = frozenset() if system.flavor == "inclusion" else system.top()
        return _certify(system, m, IdealPresentation(system.variables(m)), zero.at(system.variables(m)), m)
    m = common_level(system, levels)
    k = system.faithful_level([m])
    full = sum_ideals((ideal_at(system, L, k) for L in family), system.variables(k))
    b = u_of_level(family, m, system).entries[0][1]
    return _certify(system, m, b, full, k)


def find_radical_stabilizing_level(family: Iterable[LeveledIdeal], target, system=INCLUSION,
                                   budget: int = DEFAULT_BUDGET) -> QuasiFiniteCertificate:
    """Consume ``family`` until the target's generators lie in the prefix radical.

    ``target`` is a :class:`LeveledIdeal` or, for the inclusion flavor, an
    :class:`IdealPresentation`. The caller asserts that the whole family and
    the target have the same radical; a prefix generator outside the target's
    radical, detected once the target is reached, raises ``ValueError``.
    """
    if isinstance(target, IdealPresentation):
        target = LeveledIdeal.of(target)
    consumed: list = []
    stream = iter(family)
    for n in range(1, budget + 1):
        try:
            consumed.append(next(stream))
        except StopIteration:
            raise BudgetExhausted(
                f"family ended after {n - 1} members without reaching the target's radical",
                n - 1) from None
        levels = target.levels() + [lv for L in consumed for lv in L.levels()]
        m = common_level(system, levels)
        k = system.faithful_level([m])
        tgt = ideal_at(system, target, k)
        prefix = sum_ideals((ideal_at(system, L, k) for L in consumed), system.variables(k))
        tgt, prefix = tgt.at(prefix.level), prefix.at(tgt.level)
        if all(radical_member(g, prefix) for g in tgt.generators):
            if not all(radical_member(g, tgt) for g in prefix.generators):
                raise ValueError("family member outside the target's radical: precondition violated")
            bm = sum_ideals((ideal_at(system, L, m) for L in consumed), system.variables(m))
            return _certify(system, m, bm, tgt, k, prefix=n)
    raise BudgetExhausted(f"target not reached within a budget of {budget} members", budget)
