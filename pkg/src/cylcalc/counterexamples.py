"""Finite truncations of the two standard counterexamples over a countable field.

The first is the affine space ``F^N`` that is not quasi-compact. The cover is
``U_i = complement of V(p_i)`` with ``p_i = <f_1, ..., f_i>`` and
``f_k = (t0 - a_k) t_k - 1``. The second is a projection that does not preserve
constructibility: the maximal ideal contracts to zero in ``F[t1]``.

Only the finite-level consequences are computed. Over the rationals the
enumeration is injective but not surjective onto the algebraic closure, so
the statement "the intersection of all ``V(p_i)`` is empty" is outside reach.
The identity ``p_i = <f_1..f_i>`` (the kernel of the evaluation map) holds
because the quotient ring is a localization of ``F[t0]``, hence a domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .groebner import (
    IdealPresentation,
    RadicalProof,
    eliminate,
    is_consistent,
    radical_proof,
    verify_radical_proof,
)
from .polycore import Polynomial, render
from .compactness import BasicOpen, OpenPresentation, check_cover


def calkin_wilf(n: int) -> Fraction:
    """``q_n`` for n >= 1: 1, 1/2, 2, 1/3, 3/2, 2/3, 3, ..."""
    q = Fraction(1)
    for _ in range(n - 1):
        q = 1 / (2 * math.floor(q) - q + 1)
    return q


@dataclass
class FieldEnumeration:
    """Injective map from positive indices to rationals, memoized.

    The default is ``a_1 = 0``, ``a_2k = q_k``, ``a_2k+1 = -q_k`` over the
    Calkin-Wilf sequence ``q``.
    """

    rule: Optional[Callable[[int], Fraction]] = None
    _cache: Dict[int, Fraction] = field(default_factory=dict, repr=False)
    _seq: List[Fraction] = field(default_factory=lambda: [Fraction(1)], repr=False)

    def _default(self, i: int) -> Fraction:
        if i == 1:
            return Fraction(0)
        k = i // 2
        while len(self._seq) < k:
            q = self._seq[-1]
            self._seq.append(1 / (2 * math.floor(q) - q + 1))
        q = self._seq[k - 1]
        return q if i % 2 == 0 else -q

    def __call__(self, i: int) -> Fraction:
        if i < 1:
            raise IndexError("enumeration indices start at 1")
        if i not in self._cache:
            rule = self.rule or self._default
            self._cache[i] = Fraction(rule(i))
        return self._cache[i]

    def prefix(self, n: int) -> List[Fraction]:
        vals = [self(i) for i in range(1, n + 1)]
        if len(set(vals)) != len(vals):
            raise ValueError(f"enumeration is not injective on its first {n} values")
        return vals


DEFAULT_ENUMERATION = FieldEnumeration()


def f_k(k: int, enum: FieldEnumeration = DEFAULT_ENUMERATION) -> Polynomial:
    t0, tk = Polynomial.var(0), Polynomial.var(k)
    return (t0 - enum(k)) * tk - 1


@dataclass(frozen=True)
class CounterexampleTruncation:
    n: int
    enum: FieldEnumeration = field(compare=False)
    generators: Tuple[Polynomial, ...]

    def ideal(self, i: int) -> IdealPresentation:
        """``p_i`` at level ``{0..i}``."""
        if not 1 <= i <= self.n:
            raise IndexError(f"p_{i} is outside the truncation 1..{self.n}")
        return IdealPresentation(frozenset(range(i + 1)), self.generators[:i])

    def ideals(self) -> List[IdealPresentation]:
        return [self.ideal(i) for i in range(1, self.n + 1)]

    def open_member(self, i: int) -> BasicOpen:
        I = self.ideal(i)
        return BasicOpen(I.level, I)


def build_truncation(n: int, enum: FieldEnumeration = DEFAULT_ENUMERATION) -> CounterexampleTruncation:
    if n < 1:
        raise ValueError("n must be positive")
    enum.prefix(n + 1)
    return CounterexampleTruncation(n, enum, tuple(f_k(k, enum) for k in range(1, n + 1)))


def witness_point(tr: CounterexampleTruncation, m: int) -> Dict[int, Fraction]:
    """A point of ``V(p_m)``: ``x0 = a_(m+1)`` and ``x_k = 1/(x0 - a_k)``."""
    if not 1 <= m <= tr.n:
        raise ValueError(f"m must lie in 1..{tr.n}")
    x0 = tr.enum(m + 1)
    point = {0: x0}
    for k in range(1, m + 1):
        point[k] = 1 / (x0 - tr.enum(k))
    return point


def forced_point(tr: CounterexampleTruncation, k: int) -> Dict[int, Fraction]:
    """A point with ``x0 = a_k``; the remaining coordinates are arbitrary (here 1)."""
    point = {j: Fraction(1) for j in range(tr.n + 1)}
    point[0] = tr.enum(k)
    return point


@dataclass(frozen=True)
class ChainLink:
    i: int
    proofs: Tuple[RadicalProof, ...]

    @property
    def holds(self) -> bool:
        return all(p.holds for p in self.proofs)


@dataclass(frozen=True)
class NoSubcoverReport:
    n: int
    chain: Tuple[ChainLink, ...]
    consistent: bool
    witness: Dict[int, Fraction]
    witness_values: Tuple[Fraction, ...]
    covers_full_space: bool

    @property
    def holds(self) -> bool:
        return (all(link.holds for link in self.chain) and self.consistent
                and all(v == 0 for v in self.witness_values) and not self.covers_full_space)

    def render(self) -> str:
        lines = [f"== example41 n={self.n} =="]
        lines.append("== chain ==")
        for link in self.chain:
            status = "verified" if link.holds else "FAILED"
            powers = ",".join(str(p.power) for p in link.proofs)
            lines.append(f"p_{link.i} in rad p_{link.i + 1}: {status} (powers {powers})")
        if not self.chain:
            lines.append("single member, nothing to compare")
        lines.append("== consistency ==")
        lines.append(f"p_{self.n} proper: {'true' if self.consistent else 'false'}")
        lines.append("== witness ==")
        pt = ", ".join(f"t{k}={v}" for k, v in sorted(self.witness.items()))
        lines.append(f"point: {pt}")
        vals = ", ".join(str(v) for v in self.witness_values)
        lines.append(f"generator values: {vals}")
        lines.append("== conclusion ==")
        if self.holds:
            lines.append(f"U_1 .. U_{self.n} ascend and U_{self.n} misses the witness;"
                         " no subfamily covers the full space")
        else:
            lines.append("demonstration FAILED")
        return "\n".join(lines) + "\n"


def demonstrate_no_finite_subcover(n: int, enum: FieldEnumeration = DEFAULT_ENUMERATION) -> NoSubcoverReport:
    tr = build_truncation(n, enum)
    links = []
    for i in range(1, n):
        bigger = tr.ideal(i + 1)
        links.append(ChainLink(i, tuple(radical_proof(g, bigger) for g in tr.ideal(i).generators)))
    top = tr.ideal(n)
    point = witness_point(tr, n)
    values = tuple(g.evaluate(point) for g in top.generators)
    covers = check_cover(OpenPresentation.full_space(), [tr.open_member(i) for i in range(1, n + 1)])
    return NoSubcoverReport(n, tuple(links), is_consistent(top), point, values, covers)


def verify_chain(report: NoSubcoverReport, enum: FieldEnumeration = DEFAULT_ENUMERATION) -> bool:
    tr = build_truncation(report.n, enum)
    return all(verify_radical_proof(p, tr.ideal(link.i + 1))
               for link in report.chain for p in link.proofs)


def chevalley_failure(n: int, enum: FieldEnumeration = DEFAULT_ENUMERATION) -> IdealPresentation:
    """Contraction of ``p_n`` to ``F[t1]``; it is the zero ideal for every ``n``."""
    return eliminate(build_truncation(n, enum).ideal(n), {1})


def render_chevalley(n: int, result: IdealPresentation) -> str:
    lines = [f"== example43 n={n} ==", "== contraction =="]
    gens = "; ".join(render(g) for g in result.generators) or "(none)"
    lines.append(f"generators in F[t1]: {gens}")
    lines.append("== conclusion ==")
    if result.is_zero():
        lines.append("contraction to F[t1] is the zero ideal")
    else:
        lines.append("contraction to F[t1] is NOT the zero ideal")
    return "\n".join(lines) + "\n"
