"""Command-line entry points and deterministic reports.

Every command builds a :class:`ReportDocument`; ``--json`` prints it as JSON
with keys in a fixed order, otherwise as indented text.  Exit codes: 0 success,
2 parse error, 3 precondition error, 4 internal invariant violation, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from . import __version__
from .algebra import (DGAlgebra, cohomology_dims, j_plus, radical, semisimple_module, semisimple_quotient,
                      separability_check, validate_dga, validate_module)
from .catalogue import catalogue, find_entry
from .complexes import TruncationPolicy
from .errors import InvariantViolation, ParseError, PreconditionError, ReflexError
from .io import AlgebraDocument, parse_document, parse_field, serialize_algebra
from .linalg import FieldSpec

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INVARIANT, EXIT_USAGE = 0, 2, 3, 4, 64

COMMANDS = ("validate", "cohomology", "radical", "quotient", "hh", "hh-homology", "cup", "koszul-dual",
            "tor-kk", "perfectness", "reflexivity", "monoidal-selftest", "catalogue")


class UsageError(Exception):
    pass


@dataclass
class ReportDocument:
    """Key order: tool, version, command, input, params, result."""

    command: str
    input: Optional[Dict[str, str]]
    params: Dict[str, object]
    result: Dict[str, object]
    status: int = EXIT_OK
    tool: str = "reflexdga"
    version: str = __version__

    def as_dict(self) -> Dict[str, object]:
        return {"tool": self.tool, "version": self.version, "command": self.command,
                "input": self.input, "params": self.params, "result": self.result}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines: List[str] = []
        _render(self.as_dict(), 0, lines)
        return "\n".join(lines) + "\n"


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _render(obj, indent: int, out: List[str]) -> None:
    pad = "  " * indent
    for k, v in obj.items():
        if isinstance(v, dict):
            out.append(f"{pad}{k}:")
            _render(v, indent + 1, out)
        elif isinstance(v, list) and v and all(isinstance(r, dict) for r in v):
            out.append(f"{pad}{k}:")
            cols = list(v[0].keys())
            cells = [[_scalar(r.get(c)) for c in cols] for r in v]
            widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
            out.append(pad + "  " + "  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
            for row in cells:
                out.append(pad + "  " + "  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip())
        elif isinstance(v, list):
            if not v:
                out.append(f"{pad}{k}: []")
            else:
                out.append(f"{pad}{k}:")
                out.extend(f"{pad}  - {_scalar(x)}" for x in v)
        else:
            out.append(f"{pad}{k}: {_scalar(v)}")


# -- argument handling -----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _degrees(text: str):
    lo, sep, hi = text.partition("..")
    try:
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"--degrees expects lo..hi, got {text!r}")
    if not sep or lo_i > hi_i:
        raise UsageError(f"--degrees expects lo..hi with lo <= hi, got {text!r}")
    return lo_i, hi_i


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="reflexdga", description="Exact computations with finite-dimensional DG algebras.")
    p.add_argument("command", help="one of: " + ", ".join(COMMANDS))
    p.add_argument("input", nargs="?", help="algebra file (a catalogue name also works)")
    p.add_argument("--max-weight", type=int, default=6)
    p.add_argument("--degrees", default="-10..10")
    p.add_argument("--field", default=None, help="Q or Fp<p> (overrides the file)")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--module", default=None, help="perfectness: simple | free | file (default: file's module or simple)")
    p.add_argument("--method", default="auto", help="tor-kk: auto | shift_totalization | bar")
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")
    return p


def _normalize_argv(argv: Sequence[str]) -> List[str]:
    # "--degrees -2..4" would otherwise be taken for an option
    out: List[str] = []
    it = iter(argv)
    for a in it:
        if a == "--degrees":
            nxt = next(it, None)
            if nxt is None:
                raise UsageError("--degrees needs a value")
            out.append(f"--degrees={nxt}")
        else:
            out.append(a)
    return out


def _resolve_input(path: Optional[str]) -> str:
    if path is None:
        raise UsageError("this command needs an input file")
    if os.path.exists(path):
        return path
    entry = find_entry(os.path.splitext(os.path.basename(path))[0])
    if entry is not None:
        return entry.path
    raise PreconditionError(f"no such file: {path}")


def _load(args) -> AlgebraDocument:
    # well-formed text describing an invalid DGA is a precondition failure, as in `validate`
    field = parse_field(args.field) if args.field else None
    path = _resolve_input(args.input)
    with open(path, encoding="utf-8") as fh:
        doc = parse_document(fh.read(), field, os.path.splitext(os.path.basename(path))[0])
    rep = validate_dga(doc.algebra)
    if not rep.ok:
        raise PreconditionError("invalid DGA: " + "; ".join(v.message for v in rep.violations[:3]))
    if doc.module is not None:
        rep = validate_module(doc.module)
        if not rep.ok:
            raise PreconditionError("invalid module: " + "; ".join(v.message for v in rep.violations[:3]))
    return doc


def _input_info(path: str, doc: AlgebraDocument) -> Dict[str, str]:
    return {"name": os.path.basename(_resolve_input(path)), "digest": doc.digest}


def _policy(args) -> TruncationPolicy:
    try:
        return TruncationPolicy(args.max_weight, _degrees(args.degrees))
    except ValueError as e:
        raise UsageError(str(e))


def _params(args, policy: Optional[TruncationPolicy], **extra) -> Dict[str, object]:
    out: Dict[str, object] = {}
    if policy is not None:
        out["max_weight"] = policy.max_weight
        out["degrees"] = f"{policy.degree_window[0]}..{policy.degree_window[1]}"
    out["field"] = args.field or "file"
    out.update(extra)
    return out


# -- formatting helpers ------------------------------------------------------------------

def _terms(a: DGAlgebra, v) -> str:
    F = a.field
    if not v:
        return "0"
    return " + ".join(f"{F.format(c)}*{a.names[i]}" for i, c in sorted(v.items()))


def _hh_rows(table) -> List[Dict[str, object]]:
    rows = []
    for (m, n), d in sorted(table.entries.items(), key=lambda kv: (kv[0][1] if kv[0][1] is not None else -1,
                                                                      kv[0][0])):
        rows.append({"degree": m, "weight": n, "dim": d, "exact": table.exact[(m, n)]})
    return rows


def _class_name(c) -> str:
    m, n, k = c
    return f"e[{m},{'-' if n is None else n},{k}]"


# -- commands ------------------------------------------------------------------------------

def cmd_validate(args):
    path = _resolve_input(args.input)
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    doc = parse_document(text, parse_field(args.field) if args.field else None,
                         os.path.splitext(os.path.basename(path))[0])
    rep = validate_dga(doc.algebra)
    result = {"ok": rep.ok, "dim": doc.algebra.dim, "field": doc.algebra.field.tag,
              "violations": [{"kind": v.kind, "message": v.message} for v in rep.violations]}
    status = EXIT_OK if rep.ok else EXIT_PRECONDITION
    return ReportDocument("validate", _input_info(path, doc), _params(args, None), result, status)


def cmd_cohomology(args):
    doc = _load(args)
    dims = cohomology_dims(doc.algebra)
    result = {"dims": [{"degree": d, "dim": dims[d]} for d in sorted(dims)], "acyclic": not dims}
    return ReportDocument("cohomology", _input_info(args.input, doc), _params(args, None), result)


def cmd_radical(args):
    doc = _load(args)
    a = doc.algebra
    r = radical(a)
    jp = j_plus(a)
    result = {"radical_dim": r.dim, "radical_basis": [_terms(a, v) for v in r.basis],
              "nilpotent": r.is_nilpotent(), "two_sided": r.is_two_sided(),
              "j_plus_dim": jp.dim, "j_plus_basis": [_terms(a, v) for v in jp.basis]}
    return ReportDocument("radical", _input_info(args.input, doc), _params(args, None), result)


def cmd_quotient(args):
    doc = _load(args)
    s = semisimple_quotient(doc.algebra)
    result = {"dim": s.dim, "basis": [{"name": n, "degree": d} for n, d in zip(s.names, s.degrees)],
              "separability": separability_check(s) if s.dim else "zero",
              "text": serialize_algebra(s).splitlines() if s.dim and s.unit_index() is not None else []}
    return ReportDocument("quotient", _input_info(args.input, doc), _params(args, None), result)


def _hh_report(name, args, table):
    return {"mode": "bigraded" if table.bigraded else "total", "safe_window": table.window.describe(),
            "euler_ok": table.euler_ok,
            "stabilized": [{"degree": k, "stable": v} for k, v in sorted(table.stabilized.items())],
            "entries": _hh_rows(table), "caveats": list(table.caveats)}


def cmd_hh(args):
    from .hochschild import hh_cohomology
    doc = _load(args)
    policy = _policy(args)
    t = hh_cohomology(doc.algebra, policy)
    return ReportDocument("hh", _input_info(args.input, doc), _params(args, policy), _hh_report("hh", args, t))


def cmd_hh_homology(args):
    from .hochschild import hh_homology
    doc = _load(args)
    policy = _policy(args)
    t = hh_homology(doc.presentation(), policy)
    res = _hh_report("hh-homology", args, t)
    res["degree_convention"] = "cohomological (homological degree = -degree)"
    return ReportDocument("hh-homology", _input_info(args.input, doc), _params(args, policy), res)


def cmd_cup(args):
    from .hochschild import cup_product
    doc = _load(args)
    policy = _policy(args)
    cup = cup_product(doc.algebra, policy)
    F = cup.field
    rows = []
    for (x, y), prod in sorted(cup.constants.items()):
        rows.append({"left": _class_name(x), "right": _class_name(y),
                     "product": " + ".join(f"{F.format(c)}*{_class_name(z)}" for z, c in sorted(prod.items()))
                     or "0"})
    result = {"classes": [_class_name(c) for c in cup.classes],
              "unit": " + ".join(f"{F.format(c)}*{_class_name(z)}" for z, c in sorted(cup.unit.items())),
              "unital": cup.unital, "associative": cup.associative,
              "skipped_products": len(cup.skipped), "products": rows}
    return ReportDocument("cup", _input_info(args.input, doc), _params(args, policy), result)


def cmd_koszul_dual(args):
    from .koszul import koszul_dual
    doc = _load(args)
    policy = _policy(args)
    ext = koszul_dual(doc.algebra, policy)
    result = {"zero": ext.zero,
              "dims": [] if ext.table is None else _hh_rows(ext.table),
              "polynomial_generator_degree": ext.polynomial_pattern(),
              "notes": list(ext.notes)}
    return ReportDocument("koszul-dual", _input_info(args.input, doc), _params(args, policy), result)


def cmd_tor_kk(args):
    from .koszul import derived_tensor_k_k
    doc = _load(args)
    policy = _policy(args)
    tor = derived_tensor_k_k(doc.algebra, policy, args.method)
    result = {"method": tor.method, "safe_window": tor.window.describe(),
              "dims": [{"index": i, "dim": tor.dims_by_index[i]} for i in sorted(tor.dims_by_index)],
              "t_action": [{"from": s, "to": t, "iso": iso} for s, t, iso in tor.t_action],
              "t_is_chain_map": tor.t_is_chain_map,
              "t_shifts_isomorphically": tor.t_shifts_isomorphically() if tor.t_action else None}
    return ReportDocument("tor-kk", _input_info(args.input, doc), _params(args, policy, method=args.method), result)


def cmd_perfectness(args):
    from .algebra import free_module
    from .koszul import perfectness_probe
    doc = _load(args)
    policy = _policy(args)
    a = doc.algebra
    choice = args.module or ("file" if doc.module is not None else "simple")
    if choice == "file":
        if doc.module is None:
            raise PreconditionError("the input file has no module section")
        m = doc.module
    elif choice == "simple":
        m = semisimple_module(a)
    elif choice == "free":
        m = free_module(a)
    else:
        raise UsageError(f"unknown --module {choice!r}")
    res = perfectness_probe(m, policy)
    result = {"module": choice, "verdict": res.verdict, "witness": res.witness,
              "stages": [{"stage": n, "total": tot,
                          "by_degree": " ".join(f"{d}:{c}" for d, c in sorted(per.items())) or "-"}
                         for n, per, tot in res.stages]}
    return ReportDocument("perfectness", _input_info(args.input, doc), _params(args, policy, module=choice), result)


def cmd_reflexivity(args):
    from .koszul import reflexivity_report
    doc = _load(args)
    policy = _policy(args)
    rep = reflexivity_report(doc.algebra, policy)
    result = {"verdict": rep.verdict,
              "evidence": [{"criterion": e.criterion, "status": e.status, "detail": e.detail} for e in rep.evidence],
              "notes": list(rep.notes)}
    return ReportDocument("reflexivity", _input_info(args.input, doc), _params(args, policy), result)


def cmd_monoidal_selftest(args):
    from .monoidal import selftest
    if args.trials < 0:
        raise UsageError("--trials must be nonnegative")
    field = parse_field(args.field) if args.field else FieldSpec(0)
    rep = selftest(args.seed, args.trials, args.trials, args.trials, field)
    result = {"pass": rep.ok, "objects_per_category": args.trials,
              "graded_vect": {"objects": rep.graded_trials, "all_six_true": rep.passed_graded},
              "modules_over_dual_numbers": {"objects": rep.module_trials, "all_six_true": rep.passed_modules,
                                            "all_six_false": rep.module_trials - rep.passed_modules},
              "retract_pairs_per_category": rep.retract_trials,
              "disagreements": rep.disagreements, "projectivity_mismatches": rep.projective_mismatches,
              "retract_failures": rep.retract_failures, "identity_failures": rep.identity_failures}
    status = EXIT_OK if rep.ok else EXIT_INVARIANT
    return ReportDocument("monoidal-selftest", None,
                          {"seed": args.seed, "trials": args.trials, "field": args.field or "Q"}, result, status)


def cmd_catalogue(args):
    cat = catalogue()
    result = {"entries": [{"name": e.name, "path": e.relpath, "digest": e.digest} for e in cat.entries],
              "expected_results": cat.expected_path_rel, "expected_digest": cat.expected_digest}
    return ReportDocument("catalogue", None, {}, result)


HANDLERS: Dict[str, Callable] = {
    "validate": cmd_validate, "cohomology": cmd_cohomology, "radical": cmd_radical, "quotient": cmd_quotient,
    "hh": cmd_hh, "hh-homology": cmd_hh_homology, "cup": cmd_cup, "koszul-dual": cmd_koszul_dual,
    "tor-kk": cmd_tor_kk, "perfectness": cmd_perfectness, "reflexivity": cmd_reflexivity,
    "monoidal-selftest": cmd_monoidal_selftest, "catalogue": cmd_catalogue,
}


def run_command(name: str, argv: Sequence[str] = ()) -> ReportDocument:
    """Run one command programmatically; raises the package's exceptions on failure."""
    if name not in HANDLERS:
        raise UsageError(f"unknown command {name!r}")
    args = build_parser().parse_intermixed_args(_normalize_argv([name, *argv]))
    return HANDLERS[name](args)


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".report-")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    usage = build_parser().format_usage()
    try:
        if not argv or argv[0] in ("-h", "--help"):
            sys.stdout.write(build_parser().format_help())
            return EXIT_OK if argv else EXIT_USAGE
        args = build_parser().parse_intermixed_args(_normalize_argv(argv))
        if args.command not in HANDLERS:
            raise UsageError(f"unknown command {args.command!r}; expected one of: {', '.join(COMMANDS)}")
        report = HANDLERS[args.command](args)
        _write(report.to_json() if args.json else report.to_text(), args.out)
        return report.status
    except UsageError as e:
        sys.stderr.write(usage + f"error: {e}\n")
        return EXIT_USAGE
    except ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return EXIT_PARSE
    except PreconditionError as e:
        sys.stderr.write(f"precondition error: {e}\n")
        return EXIT_PRECONDITION
    except ValueError as e:
        sys.stderr.write(f"precondition error: {e}\n")
        return EXIT_PRECONDITION
    except InvariantViolation as e:
        sys.stderr.write(f"invariant violation: {e}\n")
        return EXIT_INVARIANT
    except ReflexError as e:  # pragma: no cover
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INVARIANT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
