"""Exact sparse polynomials over the rationals in the variables t0, t1, ...

A monomial is a tuple of ``(variable index, exponent)`` pairs sorted by
index, with no zero exponents; ``()`` is the unit monomial. A polynomial maps
monomials to nonzero :class:`fractions.Fraction` coefficients.

Variables compare by ascending index, so ``t0 > t1 > t2 > ...``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Tuple, Union

Monomial = Tuple[Tuple[int, int], ...]
Scalar = Union[int, Fraction]

MAX_EXPONENT = 65535

UNIT: Monomial = ()


class ParseError(ValueError):
    """Raised for malformed polynomial text; ``pos`` is a 0-based offset."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}")


# -- monomials ---------------------------------------------------------------

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def grevlex_key(m: Monomial):
    # Larger key means larger monomial. Ties on degree are broken at the
    # highest-index variable: the smaller exponent there wins.
    return (mono_degree(m), tuple((-v, -e) for v, e in reversed(m)))


def lex_key(m: Monomial):
    return tuple((-v, e) for v, e in m)


# -- monomial orders ---------------------------------------------------------

@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on the variables in play.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"elim"``. An elimination order
    compares the ``elim`` variables first (by degree, then grevlex) and
    falls back to grevlex on the remaining variables, so any polynomial whose
    leading monomial avoids ``elim`` lies entirely in the remaining
    variables.
    """

    kind: str = "grevlex"
    elim: frozenset = frozenset()

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        object.__setattr__(self, "elim", frozenset(self.elim))
        if self.kind != "elim" and self.elim:
            raise ValueError("only elimination orders carry an elimination set")

    @classmethod
    def eliminating(cls, variables: Iterable[int]) -> "MonomialOrder":
        return cls("elim", frozenset(variables))

    def rows(self, variables: Tuple[int, ...]):
        """Weight matrix for dense exponent vectors over ``variables``.

        Each row is a tuple of ``(position, weight)`` pairs; monomials are
        compared by their row values lexicographically.
        """
        n = len(variables)
        if self.kind == "lex":
            return tuple(((j, 1),) for j in range(n))
        if self.kind == "grevlex":
            return _grevlex_rows(list(range(n)))
        first = [j for j, v in enumerate(variables) if v in self.elim]
        rest = [j for j, v in enumerate(variables) if v not in self.elim]
        return _grevlex_rows(first) + _grevlex_rows(rest)

    def __str__(self):
        if self.kind == "elim":
            return "elim(" + ",".join(f"t{v}" for v in sorted(self.elim)) + ")"
        return self.kind


def _grevlex_rows(positions):
    if not positions:
        return ()
    rows = [tuple((j, 1) for j in positions)]
    rows.extend(((j, -1),) for j in reversed(positions[1:]))
    return tuple(rows)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


# -- polynomials -------------------------------------------------------------

def _coerce_scalar(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient must be int or Fraction, not {type(c).__name__}")


class Polynomial:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _coerce_scalar(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        c = _coerce_scalar(c)
        return cls._raw({UNIT: c} if c else {})

    @classmethod
    def var(cls, index: int, exponent: int = 1) -> "Polynomial":
        if index < 0:
            raise ValueError("variable index must be a natural number")
        if exponent == 0:
            return cls.constant(1)
        return cls._raw({((index, exponent),): Fraction(1)})

    @classmethod
    def coerce(cls, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        return cls.constant(x)

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        other = Polynomial.coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-Polynomial.coerce(other))

    def __rsub__(self, other):
        return Polynomial.coerce(other) - self

    def __mul__(self, other):
        other = Polynomial.coerce(other)
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a natural number")
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: Scalar) -> "Polynomial":
        c = _coerce_scalar(c)
        if not c:
            return Polynomial()
        return Polynomial._raw({m: v * c for m, v in self._terms.items()})

    def support(self) -> frozenset:
        return frozenset(v for m in self._terms for v, _ in m)

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        return max((mono_degree(m) for m in self._terms), default=-1)

    def is_constant(self) -> bool:
        return all(m == UNIT for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(UNIT, Fraction(0))

    def sorted_terms(self, key=grevlex_key):
        """Terms in descending order under ``key`` (grevlex by default)."""
        return sorted(self._terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def leading_term(self, key=grevlex_key):
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        return max(self._terms.items(), key=lambda mc: key(mc[0]))

    def monic(self, key=grevlex_key) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_term(key)[1])

    def substitute(self, mapping: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Simultaneously replace each variable ``t_v`` in ``mapping``."""
        result = Polynomial()
        cache: dict = {}
        for m, c in self._terms.items():
            term = Polynomial.constant(c)
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = Polynomial.coerce(mapping[v]) ** e
                    term = term * cache[key]
                else:
                    term = term * Polynomial.var(v, e)
            result = result + term
        return result

    def rename(self, mapping: Mapping[int, int]) -> "Polynomial":
        """Injective renaming of variable indices."""
        out = {}
        for m, c in self._terms.items():
            out[tuple(sorted((mapping.get(v, v), e) for v, e in m))] = c
        return Polynomial._raw(out)

    def evaluate(self, point: Mapping[int, Scalar]) -> Fraction:
        missing = self.support() - set(point)
        if missing:
            raise KeyError(f"no value assigned to {', '.join(f't{v}' for v in sorted(missing))}")
        total = Fraction(0)
        for m, c in self._terms.items():
            value = c
            for v, e in m:
                value *= _coerce_scalar(point[v]) ** e
            total += value
        return total

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Polynomial({render(self)!r})"


def render(p: Polynomial) -> str:
    """Canonical text form: terms in descending grevlex order."""
    if not p:
        return "0"
    parts = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        factors = [f"t{v}" if e == 1 else f"t{v}^{e}" for v, e in m]
        if a == 1 and factors:
            body = "*".join(factors)
        else:
            body = "*".join([str(a)] + factors)
        if i == 0:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def poly_arith(op: str, p: Polynomial, q: Polynomial) -> Polynomial:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def evaluate(p: Polynomial, point: Mapping[int, Scalar]) -> Fraction:
    return p.evaluate(point)


def support(p: Polynomial) -> frozenset:
    return p.support()


def var(index: int) -> Polynomial:
    return Polynomial.var(index)


# -- parser ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|([-+*/^()]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                j = pos
                while j < len(text) and text[j].isspace():
                    j += 1
                raise ParseError(f"unexpected character {text[j]!r}", text, j)
            kind = "int" if m.group(1) else "t" if m.group(2) else m.group(3)
            start = m.start(m.lastindex)
            self.tokens.append((kind, m.group(m.lastindex), start))
            pos = m.end()
        self.i = 0

    def peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i][0]
        return None

    def pos(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i][2]
        return len(self.text)

    def take(self, kind=None):
        tok = self.tokens[self.i] if self.i < len(self.tokens) else None
        if tok is None or (kind is not None and tok[0] != kind):
            want = f"{kind!r}" if kind else "a token"
            got = f"{tok[1]!r}" if tok else "end of input"
            raise ParseError(f"expected {want}, found {got}", self.text, self.pos())
        self.i += 1
        return tok

    def poly(self) -> Polynomial:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        result = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self) -> Polynomial:
        if self.peek() == "int":
            result = Polynomial.constant(self.coeff())
        else:
            result = self.factor()
        while self.peek() == "*":
            self.take()
            result = result * self.factor()
        return result

    def coeff(self) -> Fraction:
        num = int(self.take("int")[1])
        if self.peek() == "/":
            self.take()
            at = self.pos()
            den = int(self.take("int")[1])
            if den == 0:
                raise ParseError("zero denominator", self.text, at)
            return Fraction(num, den)
        return Fraction(num)

    def factor(self) -> Polynomial:
        kind = self.peek()
        if kind == "t":
            self.take()
            if self.peek() != "int" or self.tokens[self.i][2] != self.tokens[self.i - 1][2] + 1:
                raise ParseError("variable index must be a natural number", self.text, self.pos())
            index = int(self.take("int")[1])
            exponent = 1
            if self.peek() == "^":
                self.take()
                at = self.pos()
                exponent = int(self.take("int")[1])
                if exponent > MAX_EXPONENT:
                    raise ParseError(f"exponent exceeds {MAX_EXPONENT}", self.text, at)
            return Polynomial.var(index, exponent)
        if kind == "(":
            self.take()
            inner = self.poly()
            self.take(")")
            return inner
        got = self.tokens[self.i][1] if self.i < len(self.tokens) else "end of input"
        raise ParseError(f"expected a variable or '(' but found {got!r}", self.text, self.pos())


def parse_poly(text: str) -> Polynomial:
    """Parse the polynomial grammar into canonical form.

    >>> str(parse_poly("(t0 - 2)*t3 - 1"))
    't0*t3 - 2*t3 - 1'
    """
    parser = _Parser(text)
    if not parser.tokens:
        raise ParseError("empty polynomial", text, 0)
    result = parser.poly()
    if parser.peek() is not None:
        raise ParseError(f"unexpected {parser.tokens[parser.i][1]!r}", text, parser.pos())
    return result


def parse_poly_list(text: str) -> list:
    """Semicolon-separated polynomials; blank entries are skipped."""
    out = []
    offset = 0
    for chunk in text.split(";"):
        if chunk.strip():
            try:
                out.append(parse_poly(chunk))
            except ParseError as exc:
                raise ParseError(str(exc).rsplit(" at position", 1)[0], text, offset + exc.pos) from None
        offset += len(chunk) + 1
    return out
