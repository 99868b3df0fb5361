"""Plain-text formats for cylinders, direct systems, families and certificates.

Cylinder text, one piece per line (or separated by ``|``)::

    level: {0,1}; closed: [t0, t1]; removed: [1]

Each field is optional. ``closed`` defaults to ``[]``, ``removed`` to
``[1]`` and ``level`` to the support. No piece lines means the empty set.

System document (``#`` starts a comment; indentation is ignored)::

    level A {0}
    level B {1}
    map A B
      t0 -> t1^2
    ideal
      A: t0 - 1
      {0,1}: t0; t1

``level`` lines declare named levels. ``map SRC DST`` opens a block of
``t<k> -> poly`` lines. ``ideal`` opens a new leveled ideal whose entries are
``LEVELREF: polys`` with ``LEVELREF`` a declared name or a brace set. A
document with no ``level`` lines describes the inclusion system, and its
entries use brace sets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional

from .compactness import ConditionsReport, SubcoverCertificate
from .cylinder import CylinderSet, LocallyClosedPiece
from .groebner import ONE, IdealPresentation, RadicalProof, format_level, verify_radical_proof
from .limits import INCLUSION, DirectSystemSpec, LeveledIdeal, QuasiFiniteCertificate
from .polycore import ParseError, Polynomial, parse_poly, render


class FormatError(ValueError):
    def __init__(self, message: str, line: int = 0, token: str = ""):
        self.line = line
        self.token = token
        where = f"line {line}: " if line else ""
        tok = f" (at {token!r})" if token else ""
        super().__init__(f"{where}{message}{tok}")


_BRACES = re.compile(r"^\{\s*([0-9,\s]*)\}$")


def parse_level(text: str, line: int = 0) -> frozenset:
    m = _BRACES.match(text.strip())
    if not m:
        raise FormatError("expected a level such as {0,1}", line, text.strip())
    body = m.group(1).strip()
    if not body:
        return frozenset()
    try:
        return frozenset(int(x) for x in body.split(","))
    except ValueError:
        raise FormatError("level entries must be variable indices", line, text.strip()) from None


def _polys(text: str, line: int, sep: str) -> List[Polynomial]:
    text = text.strip()
    if not text:
        return []
    out = []
    for part in text.split(sep):
        try:
            out.append(parse_poly(part))
        except ParseError as e:
            raise FormatError(str(e), line, part.strip()) from None
    return out


def render_polys(polys, sep: str = ", ") -> str:
    return sep.join(render(p) for p in polys)


# -- cylinders ---------------------------------------------------------------

_FIELD = re.compile(r"^\s*(level|closed|removed)\s*:\s*(.*)$", re.S)


def _parse_piece(text: str, line: int) -> LocallyClosedPiece:
    fields = {}
    for chunk in _split_fields(text):
        m = _FIELD.match(chunk)
        if not m:
            raise FormatError("expected 'level:', 'closed:' or 'removed:'", line, chunk.strip())
        name, value = m.group(1), m.group(2).strip()
        if name in fields:
            raise FormatError(f"field {name!r} given twice", line, chunk.strip())
        fields[name] = value
    level = parse_level(fields["level"], line) if "level" in fields else frozenset()

    def bracketed(name, default):
        if name not in fields:
            return default
        v = fields[name]
        if not (v.startswith("[") and v.endswith("]")):
            raise FormatError(f"{name} must be a bracketed list", line, v)
        return _polys(v[1:-1], line, ",")

    closed = bracketed("closed", [])
    removed = bracketed("removed", [ONE])
    lv = level.union(*(p.support() for p in closed + removed))
    return LocallyClosedPiece(lv, IdealPresentation(lv, tuple(closed)), IdealPresentation(lv, tuple(removed)))


def _split_fields(text: str):
    # semicolons split fields, except inside brackets
    depth, cur, out = 0, [], []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == ";" and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        out.append("".join(cur))
    return out


def parse_cylinder(text: str) -> CylinderSet:
    pieces = []
    for n, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body or body == "empty":
            continue
        for chunk in body.split("|"):
            if chunk.strip():
                pieces.append(_parse_piece(chunk, n))
    return CylinderSet(tuple(pieces))


def render_piece(p: LocallyClosedPiece) -> str:
    return (f"level: {format_level(p.level)}; closed: [{render_polys(p.closed.generators)}];"
            f" removed: [{render_polys(p.removed.generators)}]")


def render_cylinder(c: CylinderSet) -> str:
    if not c.pieces:
        return "empty\n"
    return "".join(render_piece(p) + "\n" for p in c.pieces)


# -- system documents --------------------------------------------------------

@dataclass(frozen=True)
class SystemDocument:
    system: object
    ideals: tuple


_MAP_LINE = re.compile(r"^t(\d+)\s*->\s*(.+)$")


def parse_document(text: str) -> SystemDocument:
    levels: dict = {}
    maps: dict = {}
    ideals: list = []
    block: Optional[tuple] = None
    pending: list = []

    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split(None, 1)[0]
        if head == "level":
            parts = line.split(None, 2)
            if len(parts) < 3:
                raise FormatError("expected 'level NAME {indices}'", n, line)
            if parts[1] in levels:
                raise FormatError("level declared twice", n, parts[1])
            levels[parts[1]] = parse_level(parts[2], n)
            block = None
        elif head == "map":
            parts = line.split()
            if len(parts) != 3:
                raise FormatError("expected 'map SRC DST'", n, line)
            block = ("map", (parts[1], parts[2]), n)
            maps.setdefault((parts[1], parts[2]), {})
        elif head == "ideal":
            pending.append([])
            block = ("ideal", len(pending) - 1, n)
        elif block is not None and block[0] == "map":
            m = _MAP_LINE.match(line)
            if not m:
                raise FormatError("expected 't<k> -> poly'", n, line)
            try:
                maps[block[1]][int(m.group(1))] = parse_poly(m.group(2))
            except ParseError as e:
                raise FormatError(str(e), n, m.group(2)) from None
        elif block is not None and block[0] == "ideal":
            if ":" not in line:
                raise FormatError("expected 'LEVELREF: polys'", n, line)
            ref, polys = line.split(":", 1)
            pending[block[1]].append((ref.strip(), _polys(polys, n, ";"), n))
        else:
            raise FormatError("unexpected line outside any block", n, head)

    for (src, dst) in maps:
        for name in (src, dst):
            if name not in levels:
                raise FormatError("map refers to an undeclared level", 0, name)
    if levels:
        try:
            system = DirectSystemSpec(levels, maps)
        except ValueError as e:
            raise FormatError(str(e)) from None
    else:
        system = INCLUSION

    for entries in pending:
        out = []
        for ref, polys, n in entries:
            if ref.startswith("{"):
                if levels:
                    raise FormatError("use a declared level name in a system document", n, ref)
                lv = parse_level(ref, n).union(*(p.support() for p in polys))
                out.append((lv, IdealPresentation(lv, tuple(polys))))
            else:
                if ref not in levels:
                    raise FormatError("unknown level", n, ref)
                lv = levels[ref]
                for p in polys:
                    if not p.support() <= lv:
                        raise FormatError(f"generator uses variables outside level {ref}", n, render(p))
                out.append((ref, IdealPresentation(lv, tuple(polys))))
        ideals.append(LeveledIdeal(tuple(out)))
    return SystemDocument(system, tuple(ideals))


def _level_ref(system, level) -> str:
    return format_level(level) if system.flavor == "inclusion" else str(level)


def render_document(doc: SystemDocument) -> str:
    lines = []
    system = doc.system
    if system.flavor != "inclusion":
        for name, vs in system.levels.items():
            lines.append(f"level {name} {format_level(vs)}")
        for (src, dst), images in system.maps.items():
            lines.append(f"map {src} {dst}")
            for k in sorted(images):
                lines.append(f"  t{k} -> {render(images[k])}")
    for L in doc.ideals:
        lines.append("ideal")
        for level, I in L.entries:
            lines.append(f"  {_level_ref(system, level)}: {render_polys(I.generators, '; ')}")
    return "\n".join(lines) + "\n"


# -- certificates ------------------------------------------------------------

def render_proof(p: RadicalProof) -> str:
    power = "none" if p.power is None else str(p.power)
    return f"proof: f={render(p.f)}; fresh=t{p.fresh}; power={power}; basis=[{render_polys(p.basis)}]"


_PROOF = re.compile(r"^proof:\s*f=(.*?);\s*fresh=t(\d+);\s*power=(none|\d+);\s*basis=\[(.*)\]$")


def parse_proof(line: str, n: int = 0) -> RadicalProof:
    m = _PROOF.match(line.strip())
    if not m:
        raise FormatError("malformed proof line", n, line.strip())
    f = _polys(m.group(1), n, ";")
    if len(f) != 1:
        raise FormatError("proof needs exactly one polynomial", n, m.group(1))
    power = None if m.group(3) == "none" else int(m.group(3))
    return RadicalProof(f[0], int(m.group(2)), tuple(_polys(m.group(4), n, ",")), power)


def render_subcover(cert: SubcoverCertificate, system=INCLUSION) -> str:
    lines = ["== subcover certificate ==",
             "chosen: " + ", ".join(str(n) for n in cert.chosen),
             f"level: {_level_ref(system, cert.level)}",
             f"variables: {format_level(cert.covering.level)}",
             "covering: " + render_polys(cert.covering.generators, "; "),
             "target: " + render_polys(cert.target, "; ")]
    lines += [render_proof(p) for p in cert.proofs]
    return "\n".join(lines) + "\n"


def parse_subcover(text: str) -> SubcoverCertificate:
    values: dict = {}
    proofs = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("=="):
            continue
        if line.startswith("proof:"):
            proofs.append(parse_proof(line, n))
            continue
        key, _, value = line.partition(":")
        values[key.strip()] = (value.strip(), n)
    for key in ("chosen", "level", "variables", "covering", "target"):
        if key not in values:
            raise FormatError(f"certificate lacks a {key!r} line")
    chosen_text = values["chosen"][0]
    chosen = tuple(int(x) for x in chosen_text.split(",")) if chosen_text else ()
    variables = parse_level(values["variables"][0], values["variables"][1])
    level_text = values["level"][0]
    level = parse_level(level_text) if level_text.startswith("{") else level_text
    covering = IdealPresentation(variables, tuple(_polys(values["covering"][0], values["covering"][1], ";")))
    target = tuple(_polys(values["target"][0], values["target"][1], ";"))
    return SubcoverCertificate(chosen, level, target, covering, tuple(proofs))


def recheck_subcover(cert: SubcoverCertificate) -> bool:
    """Stand-alone check: every target generator carries a valid proof against the covering ideal."""
    if len(cert.proofs) != len(cert.target):
        return False
    return all(p.f == t and verify_radical_proof(p, cert.covering)
               for t, p in zip(cert.target, cert.proofs))


def render_quasi_finite(cert: QuasiFiniteCertificate, system=INCLUSION) -> str:
    lines = ["== quasi-finite certificate ==",
             f"level: {_level_ref(system, cert.level)}",
             f"ideal: {render_polys(cert.ideal.generators, '; ') or '0'}",
             f"claimed: {render_polys(cert.claimed, '; ') or '0'}",
             f"compared at: {_level_ref(system, cert.compared_at)}",
             f"exact: {'true' if cert.exact else 'false'}"]
    if cert.prefix is not None:
        lines.append(f"prefix: {cert.prefix}")
    lines.append("-- forward --")
    lines += [render_proof(p) for p in cert.forward]
    lines.append("-- backward --")
    lines += [render_proof(p) for p in cert.backward]
    return "\n".join(lines) + "\n"


_NAMES = {
    "affine": {"a": "finitely generated complement ideal", "b": "quasi-compact",
               "c": "cylinder set", "d": "retro-compact", "e": "bounded-level subcovers",
               "f": "stable level exists", "g": "preimage of its image at the stable level",
               "h": "weakly stable", "i": "closed set at the stable level"},
    "system": {"a": "quasi-compact", "b": "retro-compact", "c": "weakly stable",
               "d": "quasi-stable", "e": "cylinder set", "f": "quasi-finite ideal"},
}


def render_report(report: ConditionsReport, system=INCLUSION) -> str:
    lines = [f"== conditions ({report.theorem}) =="]
    for c in sorted(report.verdicts):
        v = "true" if report.verdicts[c] else "false"
        lines.append(f"({c}) {v} [{report.methods[c]}] {_NAMES[report.theorem][c]}")
    lines.append("== witnesses ==")
    lines.append(f"common level: {_level_ref(system, report.common_level)}")
    lines.append(f"generators: {render_polys(report.generators, '; ') or '0'}")
    w = report.weak_stability
    if w is not None:
        lines.append(f"stable level: {format_level(w.level)}")
        lines.append(f"stable complement: {render_polys(w.complement_ideal.generators, '; ') or '0'}")
    if report.cylinder is not None:
        lines.append("cylinder:")
        lines += ["  " + render_piece(p) for p in report.cylinder.pieces]
    lines.append(f"reconstruction: {'verified' if report.reconstruction else 'FAILED'}")
    out = "\n".join(lines) + "\n"
    if report.quasi_finite is not None:
        out += render_quasi_finite(report.quasi_finite, system)
    return out
