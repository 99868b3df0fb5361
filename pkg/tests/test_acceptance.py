"""Acceptance gate: eight criteria, each at its stated scale and time limit.

Every criterion records a PASS/FAIL line; the summary is printed at the end
of the pytest run (and directly when this file is executed as a script).
"""

from __future__ import annotations

import itertools
import random
import sys
import time

import pytest

from cylcalc.compactness import (
    BasicOpen,
    OpenPresentation,
    check_cover,
    decide_affine_conditions,
    extract_finite_cylinder_union,
    extract_finite_subcover,
    verify_cylinder_union,
    verify_subcover,
)
from cylcalc.counterexamples import (
    build_truncation,
    chevalley_failure,
    demonstrate_no_finite_subcover,
    forced_point,
    verify_chain,
    witness_point,
)
from cylcalc.cylinder import (
    complement,
    difference,
    intersect,
    is_empty,
    is_equal,
    lift_to_level,
    union,
    union_all,
)
from cylcalc.groebner import ideal, ideal_member, is_consistent, radical_member
from cylcalc.limits import find_stabilizing_level, lambda_of_level, u_of_level, verify_certificate
from cylcalc.polycore import Polynomial, var

from instances import random_cylinder, random_family, random_ideal, random_poly
from oracles import macaulay_member

RESULTS: dict = {}


def record(n: int, title: str, ok: bool, detail: str = ""):
    RESULTS[n] = (title, ok, detail)
    assert ok, f"criterion {n} ({title}) failed: {detail}"


def summary_lines():
    out = []
    for n in sorted(RESULTS):
        title, ok, detail = RESULTS[n]
        out.append(f"{'PASS' if ok else 'FAIL'} criterion {n}: {title}" + (f" -- {detail}" if detail else ""))
    return out


def _levels_upto(universe):
    for r in range(len(universe) + 1):
        for combo in itertools.combinations(universe, r):
            yield frozenset(combo)


def test_criterion_1_stabilization_suite():
    start = time.perf_counter()
    problems = []
    for seed in range(50):
        rng = random.Random(1000 + seed)
        fam = random_family(rng, universe=range(5), max_members=3)
        i = frozenset(rng.sample(range(5), rng.randint(0, 3)))
        j = i | frozenset(rng.sample(range(5), rng.randint(1, 2)))
        if not lambda_of_level(fam, i) <= lambda_of_level(fam, j):
            problems.append(f"seed {seed}: lambda not monotone")
        ui, uj = u_of_level(fam, i).entries[0][1], u_of_level(fam, j).entries[0][1]
        if not all(radical_member(g, uj.at(uj.level | ui.level)) for g in ui.generators):
            problems.append(f"seed {seed}: level-{sorted(i)} part not inside level-{sorted(j)} part")
        cert = find_stabilizing_level(fam)
        um = u_of_level(fam, cert.level).entries[0][1]
        for L in fam:
            for g in L.generators():
                if not radical_member(g, um.at(um.level | g.support())):
                    problems.append(f"seed {seed}: union property fails for {g}")
        if not verify_certificate(cert):
            problems.append(f"seed {seed}: certificate does not verify")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 120
    record(1, "stabilization suite on 50 families", ok,
           f"{elapsed:.1f}s" + (f"; {problems[:3]}" if problems else ""))


def test_criterion_2_affine_coherence():
    mixed, failed = 0, []
    for seed in range(30):
        rng = random.Random(2000 + seed)
        lv = frozenset(rng.sample(range(4), rng.randint(1, 4)))
        extra = frozenset(rng.sample(range(4, 7), rng.randint(0, 2)))
        A = random_ideal(rng, lv, 3, 2).at(lv | extra)
        U = OpenPresentation.affine(A)
        r = decide_affine_conditions(U)
        values = set(r.verdicts.values())
        if len(values) > 1:
            mixed += 1
        rebuilt = lift_to_level(r.weak_stability.as_cylinder(), A.level)
        from cylcalc.cylinder import open_set
        if not (values == {True} and is_equal(rebuilt, open_set(*A.generators, level=A.level))):
            failed.append(seed)
    record(2, "affine condition coherence on 30 opens", mixed == 0 and not failed,
           f"mixed={mixed}, failed seeds={failed}")


def test_criterion_3_non_quasi_compact_truncation():
    start = time.perf_counter()
    n = 10
    tr = build_truncation(n)
    consistent = all(is_consistent(tr.ideal(i)) for i in range(1, n + 1))
    zeros = all(g.evaluate(witness_point(tr, m)) == 0
                for m in range(1, n + 1) for g in tr.ideal(m).generators)
    forced = all(f.evaluate(forced_point(tr, k)) == -1 for k, f in enumerate(tr.generators, 1))
    report = demonstrate_no_finite_subcover(n)
    chain = report.holds and verify_chain(report)
    elapsed = time.perf_counter() - start
    ok = consistent and zeros and forced and chain and elapsed < 30
    record(3, "non-quasi-compact truncation n=10", ok,
           f"consistent={consistent} zeros={zeros} forced=-1:{forced} chain={chain} {elapsed:.2f}s")


def test_criterion_4_chevalley_failure():
    times, bad = [], []
    for n in range(1, 7):
        start = time.perf_counter()
        E = chevalley_failure(n)
        times.append(time.perf_counter() - start)
        if not E.is_zero():
            bad.append(n)
    ok = not bad and max(times) < 10
    record(4, "contraction to F[t1] is zero for n<=6", ok, f"max {max(times):.3f}s, nonzero at {bad}")


def test_criterion_5_subcover_extraction():
    t0, t1, t2 = var(0), var(1), var(2)
    U = OpenPresentation.affine(ideal(t0 * t1 * t2))
    cover = [BasicOpen.of(p) for p in (t0, t1, t2, t0 * t1, t1 * t2)]
    cert = extract_finite_subcover(U, cover)
    verified = verify_subcover(U, cover, cert)
    smallest = min(len(c) for r in range(len(cover) + 1)
                   for c in itertools.combinations(range(len(cover)), r)
                   if check_cover(U, [cover[k] for k in c]))
    ok = verified and len(cert.chosen) == 3 and smallest == 3
    record(5, "pruned subcover of 3 members, none smaller", ok,
           f"chosen={list(cert.chosen)} ({len(cert.chosen)} members), smallest by brute force={smallest},"
           f" verified={verified}")


def test_criterion_6_boolean_algebra():
    start = time.perf_counter()
    bad = []
    cyls = [random_cylinder(random.Random(6000 + s), universe=(0, 1, 2), max_pieces=2) for s in range(200)]
    for k, a in enumerate(cyls):
        b = cyls[(k * 7 + 3) % 200]
        lv = a.level() | b.level() | {3}
        checks = (
            is_equal(complement(complement(a)), a),
            is_equal(complement(union(a, b)), intersect(complement(a), complement(b))),
            is_equal(complement(intersect(a, b)), union(complement(a), complement(b))),
            is_empty(difference(a, a)),
            is_equal(lift_to_level(a, lv), a) and (is_equal(a, b) == is_equal(lift_to_level(a, lv), lift_to_level(b, lv))),
        )
        if not all(checks):
            bad.append(k)
    elapsed = time.perf_counter() - start
    record(6, "boolean algebra laws on 200 cylinders", not bad and elapsed < 180,
           f"{elapsed:.1f}s, failures={bad[:5]}")


def _macaulay(f, gens, variables, start_degree, max_degree):
    return any(macaulay_member(f, gens, variables, D) for D in range(start_degree, max_degree + 1))


def test_criterion_7_membership_oracle():
    disagreements, members = [], 0
    for seed in range(30):
        rng = random.Random(7000 + seed)
        nv = rng.randint(1, 3)
        variables = list(range(nv))
        gens = [random_poly(rng, variables, max_deg=3, max_terms=3) for _ in range(rng.randint(1, 2))]
        if seed % 2 == 0:
            f = sum((random_poly(rng, variables, max_deg=1, max_terms=2) * g for g in gens), Polynomial())
        else:
            f = random_poly(rng, variables, max_deg=3, max_terms=3)
        gb = ideal_member(f, ideal(*gens, level=variables))
        top = max([f.degree()] + [g.degree() for g in gens])
        mac = _macaulay(f, gens, variables, max(f.degree(), 0), top + 4)
        members += gb
        if gb != mac:
            disagreements.append(seed)
    record(7, "membership agrees with the Macaulay oracle", not disagreements,
           f"{members} members of 30, disagreements at seeds {disagreements}")


def test_criterion_8_finite_union():
    bad = []
    for seed in range(20):
        rng = random.Random(8000 + seed)
        core = [random_cylinder(rng, max_pieces=2) for _ in range(rng.randint(1, 3))]
        C = union_all(core)
        parts = [random_cylinder(rng, max_pieces=1) for _ in range(rng.randint(0, 2))] + core
        rng.shuffle(parts)
        chosen = extract_finite_cylinder_union(C, parts)
        if not (verify_cylinder_union(C, parts, chosen)
                and is_empty(difference(C, union_all(parts[k] for k in chosen)))):
            bad.append(seed)
    record(8, "finite unions inside covered cylinders", not bad, f"failures at seeds {bad}")


if __name__ == "__main__":
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    print("\n".join(summary_lines()))
    sys.exit(code)
