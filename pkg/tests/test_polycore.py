from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cylcalc.polycore import (
    MAX_EXPONENT,
    ParseError,
    Polynomial,
    evaluate,
    grevlex_key,
    lex_key,
    parse_poly,
    parse_poly_list,
    poly_arith,
    render,
    support,
    var,
)

from conftest import polys

t0, t1, t2 = var(0), var(1), var(2)


def test_parse_basic():
    p = parse_poly("t0^2 - 3/2*t0*t1 + 1")
    assert p == t0 ** 2 - Fraction(3, 2) * t0 * t1 + 1
    assert parse_poly("-(t0 + t1)*(t0 - t1)") == t1 ** 2 - t0 ** 2
    assert parse_poly("0") == Polynomial()
    assert parse_poly("2*t1*t1") == 2 * t1 ** 2


def test_render_examples():
    assert render(t0 * t1 - 1) == "t0*t1 - 1"
    assert render(Polynomial()) == "0"
    assert render(-t0) == "-t0"
    assert render(Fraction(1, 2) * t2 ** 3) == "1/2*t2^3"


@pytest.mark.parametrize("text, pos", [
    ("t0 +* 1", 4),
    ("t", 1),
    ("t0^", 3),
    ("(t0 + 1", 7),
    ("t0 t1", 3),
])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as e:
        parse_poly(text)
    assert e.value.pos == pos


def test_parse_rejects_zero_denominator_and_huge_exponent():
    with pytest.raises(ParseError):
        parse_poly("1/0*t0")
    with pytest.raises(ParseError):
        parse_poly(f"t0^{MAX_EXPONENT + 1}")


def test_parse_list_offsets():
    assert parse_poly_list("t0; t1 - 1") == [t0, t1 - 1]
    with pytest.raises(ParseError) as e:
        parse_poly_list("t0; t1 +")
    assert e.value.pos == 8


def test_orders():
    # t0 > t1 > t2; grevlex breaks degree ties by the smallest variable
    a, b = ((0, 1), (2, 1)), ((1, 2),)
    assert grevlex_key(b) > grevlex_key(a)
    assert lex_key(((0, 1),)) > lex_key(((1, 5),))
    assert t0.leading_term()[0] == ((0, 1),)


def test_evaluate_requires_all_variables():
    assert evaluate(t0 * t1 + 1, {0: 2, 1: Fraction(1, 2)}) == 2
    with pytest.raises(KeyError):
        evaluate(t0 * t1, {0: 1})


def test_substitute_is_simultaneous():
    p = t0 + 2 * t1
    assert p.substitute({0: t1, 1: t0}) == t1 + 2 * t0


def test_support_and_degree():
    assert support(t0 * t2 + 1) == frozenset({0, 2})
    assert Polynomial().degree() == -1
    assert (t0 ** 2 * t1 + t2).degree() == 3


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Polynomial()


@given(polys(max_terms=6))
def test_render_parse_roundtrip(p):
    assert parse_poly(render(p)) == p


@given(polys(), polys(), st.dictionaries(st.integers(0, 2), st.fractions(-3, 3, max_denominator=3),
                                         min_size=3, max_size=3))
def test_evaluation_is_a_ring_map(p, q, pt):
    assert evaluate(p * q, pt) == evaluate(p, pt) * evaluate(q, pt)
    assert evaluate(poly_arith("add", p, q), pt) == evaluate(p, pt) + evaluate(q, pt)


@given(polys(max_deg=2, max_terms=3), st.integers(0, 3))
def test_power_matches_repeated_product(p, k):
    expected = Polynomial.constant(1)
    for _ in range(k):
        expected = expected * p
    assert p ** k == expected
