"""Line-oriented text format for algebras and modules.

Grammar (one directive per line, ``#`` starts a comment)::

    field Q | field Fp <p>
    basis <name> <degree>            # repeated, in basis order
    unit <name>
    mult <left> <right> = <terms>    # omitted products are zero
    diff <name> = <terms>            # omitted differentials are zero
    presentation truncated <top>     # optional: degree truncation of an infinite-type algebra
    module <label>                   # optional module section
    mbasis <name> <degree>
    act <algebra name> <module name> = <terms>
    mdiff <name> = <terms>

``<terms>`` is ``0`` or a signed sum such as ``2 z - 1/2 w + x``.
Coefficients are decimal integers or ``a/b``; a number directly followed by a
name is a coefficient, otherwise it is read as a basis name (so ``1`` can name
the unit).  Products with the unit default
to the unit law unless written out; the unit acts as the identity on modules.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .algebra import DGAlgebra, DGModule, validate_dga, validate_module
from .errors import ParseError
from .linalg import QQ, FieldSpec, Vector

__all__ = ["AlgebraDocument", "parse_document", "parse_algebra", "parse_field", "serialize_algebra",
           "serialize_module", "read_document", "digest"]

_NAME = re.compile(r"^[A-Za-z0-9_][A-Za-z0-9_'.]*$")
_COEF = re.compile(r"^[0-9]+(/[0-9]+)?$")


@dataclass
class AlgebraDocument:
    algebra: DGAlgebra
    module: Optional[DGModule] = None
    truncated_top: Optional[int] = None
    digest: str = ""

    def presentation(self):
        """The algebra, wrapped as a truncated presentation when the file declares one."""
        if self.truncated_top is None:
            return self.algebra
        from .koszul import TruncatedPresentation
        return TruncatedPresentation(self.algebra, self.truncated_top)


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def parse_field(tag: str, p: Optional[str] = None) -> FieldSpec:
    """``Q``, ``Fp 7``, ``Fp7`` or ``Fp:7``."""
    tag = tag.strip()
    if tag == "Q":
        return QQ
    m = re.fullmatch(r"Fp[:]?(\d+)?", tag)
    if not m:
        raise ValueError(f"unknown field {tag!r}")
    val = m.group(1) or p
    if val is None:
        raise ValueError("Fp needs a prime")
    return FieldSpec.prime(int(val))


def _coef(F: FieldSpec, tok: str, line: int):
    if not _COEF.match(tok):
        raise ParseError(f"malformed coefficient {tok!r}", line)
    q = Fraction(tok)
    try:
        return F.coerce(q)
    except (ZeroDivisionError, ValueError, ArithmeticError) as e:
        raise ParseError(f"arithmetic error: coefficient {tok} is not defined over {F}", line) from e


_TOKEN = re.compile(r"[+-]|[^\s+-]+")


def _terms(F: FieldSpec, text: str, names: Mapping[str, int], line: int) -> Vector:
    toks = _TOKEN.findall(text)
    if toks == ["0"]:
        return {}
    if not toks:
        raise ParseError("empty right-hand side", line)
    out: Dict[int, object] = {}
    k = 0
    first = True
    while k < len(toks):
        neg = False
        if toks[k] in "+-":
            neg = toks[k] == "-"
            k += 1
        elif not first:
            raise ParseError(f"missing '+' or '-' before {toks[k]!r}", line)
        first = False
        c = F.one
        # a number is a coefficient only when a name follows it ("2 1" is twice the basis element 1)
        if k + 1 < len(toks) and _COEF.match(toks[k]) and toks[k + 1] not in "+-":
            c = _coef(F, toks[k], line)
            k += 1
        if k >= len(toks):
            raise ParseError("incomplete expression", line)
        t = toks[k]
        k += 1
        if t in "+-" or not _NAME.match(t):
            raise ParseError(f"malformed term {t!r}", line)
        if t not in names:
            raise ParseError(f"unknown basis name {t!r}", line)
        i = names[t]
        out[i] = F.add(out.get(i, F.zero), F.neg(c) if neg else c)
        if out[i] == 0:
            del out[i]
    return out


def parse_document(text: str, field: Optional[FieldSpec] = None, label: str = "") -> AlgebraDocument:
    """Parse an algebra (and optional module) file; ``field`` overrides the file's field line."""
    F: Optional[FieldSpec] = field
    field_seen = False
    basis: List[Tuple[str, int]] = []
    unit: Optional[str] = None
    mult: Dict[Tuple[int, int], Vector] = {}
    mult_named: set = set()
    diff: Dict[int, Vector] = {}
    top: Optional[int] = None
    mod_label: Optional[str] = None
    mbasis: List[Tuple[str, int]] = []
    act: Dict[Tuple[int, int], Vector] = {}
    mdiff: Dict[int, Vector] = {}
    idx: Dict[str, int] = {}
    midx: Dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "field":
            if field_seen:
                raise ParseError("field given twice", lineno)
            field_seen = True
            parts = rest.split()
            try:
                fld = parse_field(parts[0], parts[1] if len(parts) > 1 else None) if parts else None
            except ValueError as e:
                raise ParseError(str(e), lineno) from e
            if fld is None:
                raise ParseError("field line needs Q or Fp <p>", lineno)
            if F is None:
                F = fld
            continue
        if F is None:
            raise ParseError("the field line must come first", lineno)
        if head in ("basis", "mbasis"):
            parts = rest.split()
            if len(parts) != 2 or not _NAME.match(parts[0]) or not re.fullmatch(r"-?\d+", parts[1]):
                raise ParseError(f"expected '{head} <name> <degree>'", lineno)
            table, target = (idx, basis) if head == "basis" else (midx, mbasis)
            if head == "basis" and (mult or diff or unit):
                raise ParseError("basis lines must precede unit, mult and diff", lineno)
            if head == "mbasis" and mod_label is None:
                raise ParseError("mbasis outside a module section", lineno)
            if parts[0] == "0":
                raise ParseError("'0' is reserved for the zero element", lineno)
            if parts[0] in table:
                raise ParseError(f"duplicate basis name {parts[0]!r}", lineno)
            table[parts[0]] = len(target)
            target.append((parts[0], int(parts[1])))
        elif head == "unit":
            if rest not in idx:
                raise ParseError(f"unknown basis name {rest!r}", lineno)
            unit = rest
        elif head == "mult":
            lhs, eq, rhs = rest.partition("=")
            names = lhs.split()
            if not eq or len(names) != 2:
                raise ParseError("expected 'mult <a> <b> = <terms>'", lineno)
            for n in names:
                if n not in idx:
                    raise ParseError(f"unknown basis name {n!r}", lineno)
            key = (idx[names[0]], idx[names[1]])
            if key in mult_named:
                raise ParseError(f"product {names[0]} {names[1]} given twice", lineno)
            mult_named.add(key)
            mult[key] = _terms(F, rhs, idx, lineno)
        elif head == "diff":
            lhs, eq, rhs = rest.partition("=")
            n = lhs.strip()
            if not eq or n not in idx:
                raise ParseError(f"unknown basis name {n!r}" if eq else "expected 'diff <a> = <terms>'", lineno)
            diff[idx[n]] = _terms(F, rhs, idx, lineno)
        elif head == "presentation":
            parts = rest.split()
            if len(parts) != 2 or parts[0] != "truncated" or not parts[1].isdigit():
                raise ParseError("expected 'presentation truncated <top degree>'", lineno)
            top = int(parts[1])
        elif head == "module":
            if mod_label is not None:
                raise ParseError("only one module section per file", lineno)
            mod_label = rest or "M"
        elif head == "act":
            lhs, eq, rhs = rest.partition("=")
            names = lhs.split()
            if mod_label is None:
                raise ParseError("act outside a module section", lineno)
            if not eq or len(names) != 2:
                raise ParseError("expected 'act <a> <m> = <terms>'", lineno)
            if names[0] not in idx or names[1] not in midx:
                raise ParseError(f"unknown basis name in {lhs.strip()!r}", lineno)
            act[(idx[names[0]], midx[names[1]])] = _terms(F, rhs, midx, lineno)
        elif head == "mdiff":
            lhs, eq, rhs = rest.partition("=")
            n = lhs.strip()
            if mod_label is None:
                raise ParseError("mdiff outside a module section", lineno)
            if not eq or n not in midx:
                raise ParseError(f"unknown basis name {n!r}", lineno)
            mdiff[midx[n]] = _terms(F, rhs, midx, lineno)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if F is None:
        raise ParseError("missing field line")
    if not basis:
        raise ParseError("no basis lines")
    if unit is None:
        raise ParseError("unit undefined")
    u = idx[unit]
    for i in range(len(basis)):
        if (u, i) not in mult_named:
            mult[(u, i)] = {i: F.one}
        if (i, u) not in mult_named:
            mult[(i, u)] = {i: F.one}
    alg = DGAlgebra(F, tuple(n for n, _ in basis), tuple(d for _, d in basis),
                    {k: v for k, v in mult.items() if v}, {k: v for k, v in diff.items() if v},
                    {u: F.one}, label)
    module = None
    if mod_label is not None:
        if not mbasis:
            raise ParseError("module section has no mbasis lines")
        for j in range(len(mbasis)):
            act.setdefault((u, j), {j: F.one})
        module = DGModule(alg, tuple(n for n, _ in mbasis), tuple(d for _, d in mbasis),
                          {k: v for k, v in act.items() if v}, {k: v for k, v in mdiff.items() if v},
                          mod_label)
    return AlgebraDocument(alg, module, top, digest(text))


def parse_algebra(text: str, field: Optional[FieldSpec] = None, label: str = "",
                  validate: bool = True) -> DGAlgebra:
    """Parse and (by default) validate; validation failures raise :class:`ParseError`."""
    doc = parse_document(text, field, label)
    if validate:
        rep = validate_dga(doc.algebra)
        if not rep.ok:
            raise ParseError("invalid DGA: " + "; ".join(v.message for v in rep.violations[:3]))
        if doc.module is not None:
            rep = validate_module(doc.module)
            if not rep.ok:
                raise ParseError("invalid module: " + "; ".join(v.message for v in rep.violations[:3]))
    return doc.algebra


def read_document(path: str, field: Optional[FieldSpec] = None) -> AlgebraDocument:
    import os
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    label = os.path.splitext(os.path.basename(path))[0]
    doc = parse_document(text, field, label)
    rep = validate_dga(doc.algebra)
    if not rep.ok:
        raise ParseError("invalid DGA: " + "; ".join(v.message for v in rep.violations[:3]))
    if doc.module is not None:
        rep = validate_module(doc.module)
        if not rep.ok:
            raise ParseError("invalid module: " + "; ".join(v.message for v in rep.violations[:3]))
    return doc


def _fmt_terms(F: FieldSpec, v: Mapping[int, object], names) -> str:
    if not v:
        return "0"
    parts = []
    for i in sorted(v):
        c = v[i]
        neg = F.characteristic == 0 and c < 0
        mag = F.neg(c) if neg else c
        s = names[i] if mag == 1 else f"{F.format(mag)} {names[i]}"
        if not parts:
            parts.append(("-" + s) if neg else s)
        else:
            parts.append(("- " if neg else "+ ") + s)
    return " ".join(parts)


def serialize_algebra(a: DGAlgebra) -> str:
    """Canonical text: every nonzero product and differential written out, in index order."""
    F = a.field
    u = a.unit_index()
    if u is None:
        raise ValueError("the text format needs the unit to be a basis element")
    lines = [f"field {F.tag}"]
    lines += [f"basis {n} {d}" for n, d in zip(a.names, a.degrees)]
    lines.append(f"unit {a.names[u]}")
    for (i, j) in sorted(a.mult):
        if a.mult[(i, j)]:
            lines.append(f"mult {a.names[i]} {a.names[j]} = {_fmt_terms(F, a.mult[(i, j)], a.names)}")
    for i in sorted(a.diff):
        if a.diff[i]:
            lines.append(f"diff {a.names[i]} = {_fmt_terms(F, a.diff[i], a.names)}")
    return "\n".join(lines) + "\n"


def serialize_module(m: DGModule) -> str:
    F = m.field
    A = m.algebra
    u = A.unit_index()
    lines = [f"module {m.label or 'M'}"]
    lines += [f"mbasis {n} {d}" for n, d in zip(m.names, m.degrees)]
    for (i, j) in sorted(m.action):
        if i != u and m.action[(i, j)]:
            lines.append(f"act {A.names[i]} {m.names[j]} = {_fmt_terms(F, m.action[(i, j)], m.names)}")
    for j in sorted(m.diff):
        if m.diff[j]:
            lines.append(f"mdiff {m.names[j]} = {_fmt_terms(F, m.diff[j], m.names)}")
    return "\n".join(lines) + "\n"
