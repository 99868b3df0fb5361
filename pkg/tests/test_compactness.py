import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cylcalc.compactness import (
    BY_EQUIVALENCE,
    BasicOpen,
    OpenPresentation,
    brute_force_minimal_subcovers,
    check_cover,
    decide_affine_conditions,
    decide_system_conditions,
    extract_finite_cylinder_union,
    extract_finite_subcover,
    verify_cylinder_union,
    verify_report,
    verify_subcover,
)
from cylcalc.counterexamples import build_truncation
from cylcalc.cylinder import closed_set, empty_set, full_space, is_empty, open_set, union
from cylcalc.groebner import ideal, radical_equal
from cylcalc.limits import BudgetExhausted, DirectSystemSpec, LeveledIdeal
from cylcalc.polycore import var

from instances import random_cylinder, random_ideal, random_poly
from oracles import cover_falsified

t0, t1, t2 = var(0), var(1), var(2)
B = BasicOpen.of
opn = OpenPresentation.affine


def test_check_cover_examples():
    assert check_cover(opn(ideal(t0)), [B(t0)])
    # U = {t0*t1 != 0} lies inside B(t0) = {t0 != 0}
    assert check_cover(opn(ideal(t0 * t1)), [B(t0)])
    assert check_cover(opn(ideal(t0 * t1)), [B(t0), B(t1)])
    # the cover that genuinely needs both members
    assert not check_cover(opn(ideal(t0, t1)), [B(t0)])
    assert check_cover(opn(ideal(t0, t1)), [B(t0), B(t1)])


def test_subcover_product_complement_needs_one_member():
    U = opn(ideal(t0 * t1 * t2))
    cover = [B(t0), B(t1), B(t2), B(t0 * t1)]
    cert = extract_finite_subcover(U, cover)
    assert cert.chosen == (0,)
    assert verify_subcover(U, cover, cert)
    assert brute_force_minimal_subcovers(U, cover)[0] == 1


def test_subcover_point_complement_needs_three():
    U = opn(ideal(t0, t1, t2))
    cover = [B(t0), B(t1), B(t2), B(t0 * t1), B(t1 * t2)]
    cert = extract_finite_subcover(U, cover)
    assert cert.chosen == (0, 1, 2) and verify_subcover(U, cover, cert)
    assert brute_force_minimal_subcovers(U, cover)[0] == 3
    assert cert.level == frozenset({0, 1, 2})


def test_subcover_powers_prune_to_singleton():
    U = opn(ideal(t0))
    cover = [B(t0 ** k) for k in range(1, 6)]
    cert = extract_finite_subcover(U, cover)
    assert len(cert.chosen) == 1
    assert all(p.holds for p in cert.proofs)


def test_subcover_stream_exhausts_budget():
    tr = build_truncation(9)
    stream = (tr.open_member(i) for i in range(1, 10))
    with pytest.raises(BudgetExhausted) as e:
        extract_finite_subcover(OpenPresentation.full_space(), stream, budget=8)
    assert e.value.consumed == 8
    with pytest.raises(BudgetExhausted):
        extract_finite_subcover(opn(ideal(t0, t1)), [B(t0)])


def test_empty_open_needs_nothing():
    cert = extract_finite_subcover(opn(ideal(level={0})), [B(t0)])
    assert cert.chosen == ()


def test_decide_affine_examples():
    r = decide_affine_conditions(opn(ideal(t0, t1, level={0, 1, 5})))
    assert r.stable_level == frozenset({0, 1}) and r.uniform()
    assert r.methods["b"] == BY_EQUIVALENCE and r.methods["a"] == "by-construction"
    r = decide_affine_conditions(OpenPresentation.full_space())
    assert r.stable_level == frozenset() and r.uniform()
    r = decide_affine_conditions(opn(ideal(t2 ** 2, level={2})))
    assert r.stable_level == frozenset({2})
    assert radical_equal(r.weak_stability.complement_ideal, ideal(t2))


def test_decide_system_examples():
    S = DirectSystemSpec({"A": frozenset({0}), "B": frozenset({1})}, {("A", "B"): {0: t1 ** 2}})
    U = OpenPresentation(LeveledIdeal.at("A", ideal(t0 - 1)), S)
    r = decide_system_conditions(U)
    assert r.quasi_finite.level == "B"
    assert r.quasi_finite.ideal.generators == (t1 ** 2 - 1,)
    assert r.uniform() and verify_report(U, r)

    Z = DirectSystemSpec({"A": frozenset({0}), "B": frozenset({1})}, {("A", "B"): {0: 0 * t1}})
    U = OpenPresentation(LeveledIdeal.at("A", ideal(t0)), Z)
    r = decide_system_conditions(U)
    assert r.quasi_finite.ideal.is_zero() and r.uniform()
    assert is_empty(r.cylinder)

    U = opn(ideal(t0, t1, level={0, 1, 5}))
    assert decide_system_conditions(U).verdicts == {c: True for c in "abcdef"}


def test_cylinder_union_examples():
    C = union(closed_set(t0, level={0, 1}), closed_set(t1, level={0, 1}))
    parts = [closed_set(t0), closed_set(t1), closed_set(t0, t1)]
    assert extract_finite_cylinder_union(C, parts) == (0, 1)
    assert extract_finite_cylinder_union(empty_set(), parts) == ()
    assert extract_finite_cylinder_union(full_space({0}), [open_set(t0), closed_set(t0)]) == (0, 1)
    with pytest.raises(BudgetExhausted):
        extract_finite_cylinder_union(full_space({0}), [open_set(t0)])


seeds = st.integers(0, 10 ** 6)


@given(seeds)
@settings(max_examples=20)
def test_subcover_certificates_are_sound_and_minimal(seed):
    rng = random.Random(seed)
    U = opn(random_ideal(rng, frozenset({0, 1, 2}), 2, 2))
    cover = [B(random_poly(rng, {0, 1, 2}, 2)) for _ in range(rng.randint(1, 3))]
    cover += [B(g) for g in U.complement.generators()]  # guarantees coverage
    cert = extract_finite_subcover(U, cover)
    assert verify_subcover(U, cover, cert)
    chosen = [cover[n] for n in cert.chosen]
    for n in range(len(chosen)):
        assert not check_cover(U, chosen[:n] + chosen[n + 1:])
    samples = [{0: Fraction(a), 1: Fraction(b), 2: Fraction(c)}
               for a, b, c in itertools.product((-1, 0, 1, 2), repeat=3)]
    assert cover_falsified(cert.target, cert.covering.generators, [0, 1, 2], samples=samples) is None


def test_non_covers_are_mostly_confirmed_by_points():
    # a "false" verdict should usually be visible at a point of a small prime field
    from cylcalc.groebner import sum_ideals
    from oracles import eval_mod_p, points_mod_p
    refuted = confirmed = 0
    for seed in range(30):
        rng = random.Random(seed)
        U = opn(random_ideal(rng, frozenset({0, 1}), 2, 2))
        cover = [B(random_poly(rng, {0, 1}, 2)) for _ in range(2)]
        if check_cover(U, cover):
            continue
        refuted += 1
        covering = sum_ideals([m.ideal for m in cover], {0, 1}).generators
        target = U.complement.generators()
        for p in (7, 11, 13):
            if any(all(eval_mod_p(g, pt, p) == 0 for g in covering)
                   and any(eval_mod_p(u, pt, p) for u in target)
                   for pt in points_mod_p([0, 1], p)):
                confirmed += 1
                break
    assert refuted >= 5
    assert confirmed * 2 >= refuted


@given(seeds)
@settings(max_examples=20)
def test_affine_report_coherence(seed):
    rng = random.Random(seed)
    lv = frozenset(rng.sample(range(4), rng.randint(1, 4)))
    U = opn(random_ideal(rng, lv, 3, 2))
    r = decide_affine_conditions(U)
    assert r.uniform() and r.reconstruction
    assert verify_report(U, r)


@given(seeds)
@settings(max_examples=15)
def test_cylinder_union_on_random_covers(seed):
    rng = random.Random(seed)
    parts = [random_cylinder(rng) for _ in range(rng.randint(1, 3))]
    C = union(parts[0], parts[-1])
    chosen = extract_finite_cylinder_union(C, parts)
    assert verify_cylinder_union(C, parts, chosen)
