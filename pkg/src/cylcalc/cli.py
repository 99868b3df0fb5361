"""``cylcalc`` command line.

Exit codes: 0 decided true or success, 1 decided false, 2 input error,
3 stream budget exhausted. Any polynomial, cylinder or document argument may
be given as ``@path`` to read it from a file.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import compactness as cp
from . import counterexamples as cx
from . import cylinder as cy
from . import formats as fm
from .groebner import (
    IdealPresentation,
    eliminate,
    groebner_basis,
    radical_equal,
    radical_proof,
)
from .limits import DEFAULT_BUDGET, INCLUSION, BudgetExhausted
from .polycore import GREVLEX, LEX, ParseError, parse_poly, parse_poly_list, render

EXIT_TRUE, EXIT_FALSE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _text(value: str) -> str:
    if value.startswith("@"):
        try:
            with open(value[1:], encoding="utf-8") as fh:
                return fh.read()
        except OSError as e:
            raise InputError(f"cannot read {value[1:]}: {e.strerror}") from None
    return value


def _polys(value: str, what: str) -> list:
    text = _text(value).replace("\n", ";")
    try:
        return [p for p in parse_poly_list(text)]
    except ParseError as e:
        raise InputError(f"{what}: {e}") from None


def _poly(value: str, what: str):
    try:
        return parse_poly(_text(value).strip())
    except ParseError as e:
        raise InputError(f"{what}: {e}") from None


def _level(value: Optional[str]) -> frozenset:
    if value is None:
        return frozenset()
    text = _text(value).strip()
    if not text.startswith("{"):
        text = "{" + text + "}"
    try:
        return fm.parse_level(text)
    except fm.FormatError as e:
        raise InputError(f"--level: {e}") from None


def _ideal(value: str, what: str, level=None) -> IdealPresentation:
    gens = _polys(value, what)
    lv = frozenset(level or ()).union(*(g.support() for g in gens))
    return IdealPresentation(lv, tuple(gens))


def _embed_both(*ideals: IdealPresentation):
    lv = frozenset().union(*(I.level for I in ideals))
    return [I.at(lv) for I in ideals]


def _cylinder(value: str, what: str) -> cy.CylinderSet:
    try:
        return fm.parse_cylinder(_text(value))
    except (fm.FormatError, ParseError) as e:
        raise InputError(f"{what}: {e}") from None


def _order(name: str):
    return LEX if name == "lex" else GREVLEX


def _verdict(out, flag: bool) -> int:
    out.write("true\n" if flag else "false\n")
    return EXIT_TRUE if flag else EXIT_FALSE


# -- subcommands -------------------------------------------------------------

def cmd_gb(a, out):
    I = _ideal(a.ideal, "--ideal", _level(a.level))
    G = groebner_basis(I, _order(a.order))
    for g in G.basis:
        out.write(render(g) + "\n")
    return EXIT_TRUE


def cmd_member(a, out):
    f = _poly(a.f, "--f")
    I, = _embed_both(_ideal(a.ideal, "--ideal", f.support()))
    return _verdict(out, groebner_basis(I, _order(a.order)).contains(f))


def cmd_radical_member(a, out):
    f = _poly(a.f, "--f")
    I = _ideal(a.ideal, "--ideal", f.support())
    pr = radical_proof(f, I)
    code = _verdict(out, pr.holds)
    if a.proof:
        out.write(fm.render_proof(pr) + "\n")
    return code


def cmd_radical_eq(a, out):
    I, J = _embed_both(_ideal(a.a, "--a"), _ideal(a.b, "--b"))
    return _verdict(out, radical_equal(I, J))


def cmd_eliminate(a, out):
    I = _ideal(a.ideal, "--ideal", _level(a.level))
    keep = _level(a.keep)
    if not keep <= I.level:
        raise InputError(f"--keep {fm.format_level(keep)} is not inside the ideal's level {fm.format_level(I.level)}")
    E = eliminate(I, keep)
    for g in E.generators:
        out.write(render(g) + "\n")
    if E.is_zero():
        out.write("0\n")
    return EXIT_TRUE


def cmd_cyl(a, out):
    A = _cylinder(a.a, "--a")
    B = _cylinder(a.b, "--b") if a.b is not None else None
    op = a.op
    if op in ("union", "intersect", "equal") and B is None:
        raise InputError(f"cyl {op} needs --b")
    if op == "union":
        out.write(fm.render_cylinder(cy.union(A, B)))
    elif op == "intersect":
        out.write(fm.render_cylinder(cy.intersect(A, B)))
    elif op == "complement":
        out.write(fm.render_cylinder(cy.complement(A)))
    elif op == "closure":
        out.write(fm.render_cylinder(cy.closure(A)))
    elif op == "empty":
        return _verdict(out, cy.is_empty(A))
    elif op == "equal":
        return _verdict(out, cy.is_equal(A, B))
    elif op == "stable":
        try:
            w = cy.is_weakly_stable(A)
        except cy.NotOpen as e:
            raise InputError(str(e)) from None
        out.write(f"level: {fm.format_level(w.level)}\n")
        out.write(f"complement: {fm.render_polys(w.complement_ideal.generators, '; ') or '0'}\n")
    return EXIT_TRUE


def cmd_decide(a, out):
    if a.mode == "affine":
        if a.ideal is None:
            raise InputError("decide affine needs --ideal")
        U = cp.OpenPresentation.affine(_ideal(a.ideal, "--ideal", _level(a.level)))
        report = cp.decide_affine_conditions(U)
        system = INCLUSION
    else:
        if a.doc is None:
            raise InputError("decide system needs --doc")
        try:
            doc = fm.parse_document(_text(a.doc))
        except (fm.FormatError, ParseError) as e:
            raise InputError(f"--doc: {e}") from None
        if not doc.ideals:
            raise InputError("--doc: the document has no 'ideal' block")
        system = doc.system
        U = cp.OpenPresentation(doc.ideals[0], system)
        try:
            report = cp.decide_system_conditions(U, system)
        except ValueError as e:
            raise InputError(str(e)) from None
    out.write(fm.render_report(report, system))
    return EXIT_TRUE if report.uniform() else EXIT_FALSE


def _members(a) -> List[cp.BasicOpen]:
    members = []
    if a.cover:
        members += [cp.BasicOpen.of(p) for p in _polys(a.cover, "--cover")]
    for m in a.member or ():
        members.append(cp.BasicOpen.of(*_polys(m, "--member")))
    return members


def cmd_subcover(a, out):
    U = cp.OpenPresentation.affine(_ideal(a.target, "--target"))
    if a.stream == "example41":
        tr = cx.build_truncation(a.budget + 1)
        cover = (tr.open_member(i) for i in range(1, tr.n + 1))
        members = None
    else:
        members = _members(a)
        if not members:
            raise InputError("subcover needs --cover, --member or --stream")
        cover = members
    cert = cp.extract_finite_subcover(U, cover, budget=a.budget)
    if members is not None and not cp.verify_subcover(U, members, cert):
        raise RuntimeError("certificate failed re-verification")
    out.write(fm.render_subcover(cert))
    if members is not None:
        for n in cert.chosen:
            m = members[n]
            out.write(f"member {n}: B({fm.render_polys(m.ideal.generators, ', ')})\n")
    return EXIT_TRUE


def cmd_cylcover(a, out):
    C = _cylinder(a.target, "--target")
    parts = [_cylinder(p, "--part") for p in a.part or ()]
    chosen = cp.extract_finite_cylinder_union(C, parts, budget=a.budget)
    if not cp.verify_cylinder_union(C, parts, chosen):
        raise RuntimeError("union failed re-verification")
    out.write("chosen: " + ", ".join(str(n) for n in chosen) + "\n")
    return EXIT_TRUE


def cmd_example41(a, out):
    if a.n < 1:
        raise InputError("--n must be positive")
    report = cx.demonstrate_no_finite_subcover(a.n)
    out.write(report.render())
    return EXIT_TRUE if report.holds else EXIT_FALSE


def cmd_example43(a, out):
    if a.n < 1:
        raise InputError("--n must be positive")
    result = cx.chevalley_failure(a.n)
    out.write(cx.render_chevalley(a.n, result))
    return EXIT_TRUE if result.is_zero() else EXIT_FALSE


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="stream prefix budget")
    common.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")

    p = argparse.ArgumentParser(prog="cylcalc", description="Quasi-compactness toolkit over exact rationals.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gb", parents=[common], help="reduced Groebner basis")
    s.add_argument("--ideal", required=True)
    s.add_argument("--level")
    s.set_defaults(func=cmd_gb)

    s = sub.add_parser("member", parents=[common], help="ideal membership")
    s.add_argument("--f", required=True)
    s.add_argument("--ideal", required=True)
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("radical-member", parents=[common], help="radical membership")
    s.add_argument("--f", required=True)
    s.add_argument("--ideal", required=True)
    s.add_argument("--proof", action="store_true", help="print the proof line")
    s.set_defaults(func=cmd_radical_member)

    s = sub.add_parser("radical-eq", parents=[common], help="equality of radicals")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.set_defaults(func=cmd_radical_eq)

    s = sub.add_parser("eliminate", parents=[common], help="elimination ideal")
    s.add_argument("--ideal", required=True)
    s.add_argument("--keep", required=True, help="indices to keep, e.g. 1,2")
    s.add_argument("--level")
    s.set_defaults(func=cmd_eliminate)

    s = sub.add_parser("cyl", parents=[common], help="cylinder algebra")
    s.add_argument("op", choices=("union", "intersect", "complement", "empty", "equal", "closure", "stable"))
    s.add_argument("--a", required=True)
    s.add_argument("--b")
    s.set_defaults(func=cmd_cyl)

    s = sub.add_parser("decide", parents=[common], help="decide the quasi-compactness conditions")
    s.add_argument("mode", choices=("affine", "system"))
    s.add_argument("--ideal", help="complement ideal (affine)")
    s.add_argument("--level")
    s.add_argument("--doc", help="system document (system)")
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("subcover", parents=[common], help="finite subcover certificate")
    s.add_argument("--target", required=True, help="complement ideal of U")
    s.add_argument("--cover", help="principal members B(p), semicolon separated")
    s.add_argument("--member", action="append", help="member B(p1,...,pk); repeatable")
    s.add_argument("--stream", choices=("example41",))
    s.set_defaults(func=cmd_subcover)

    s = sub.add_parser("cylcover", parents=[common], help="finite union inside a covered cylinder")
    s.add_argument("--target", required=True)
    s.add_argument("--part", action="append")
    s.set_defaults(func=cmd_cylcover)

    for name, func in (("example41", cmd_example41), ("example43", cmd_example43)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--n", type=int, default=3)
        s.set_defaults(func=func)
    return p


def main(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.budget < 1:
        err.write("cylcalc: --budget must be positive\n")
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except (InputError, cy.NotOpen) as e:
        err.write(f"cylcalc: {e}\n")
        return EXIT_INPUT
    except BudgetExhausted as e:
        err.write(f"cylcalc: budget exhausted after {e.consumed} members: {e}\n")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
