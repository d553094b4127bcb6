"""Command line interface.

    parasym grade A3 --xi 1,2,3
    parasym classify "sl(4,R)" --xi 2 --format structured
    parasym tables --max-rank 6 --out tables.jsonl --diff path/to/golden
    parasym deform A3 --xi 1,2,3 --comp 2,1

Node numbers are Bourbaki unless ``--paper-numbering`` is given, in which
case the numbering of the reference tables is used for input and output
(this only differs for F4).

Structured output is JSON lines.  The first line is a header

    {"catalog_sha256": ..., "convention": "bourbaki"|"paper",
     "format": "parasym", "schema": 1, "tool_version": ...}

and each further line is one record with a ``kind`` field ("grading",
"classification" or "deformation").  ``read_structured`` parses it back.

Exit codes: 0 success, 1 usage or parse error, 2 mathematical refusal,
3 golden mismatch.
"""

from __future__ import annotations

import argparse
import itertools
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from types import SimpleNamespace
from typing import Sequence

from . import __version__
from .chevalley import build_structure_table
from .construct import (
    ConstructionError,
    annihilator_tower,
    central_symmetry_solutions,
    deform,
)
from .golden import GoldenError, evaluate_tables
from .kostant import enumerate_components
from .parabolic import GradingError, grade
from .realform import (
    CatalogError,
    RealFormDescriptor,
    admissible_xi,
    all_instances,
    catalog_hash,
    parse_form,
    paper_node_map,
)
from .rootsys import RootSystemError, parse_types
from .symmetry import SYMBOLS, ClassificationRow, JAction, SymmetryError, classify

EXIT_OK, EXIT_USAGE, EXIT_REFUSED, EXIT_MISMATCH = 0, 1, 2, 3
SCHEMA = 1
MAX_TABLE_RANK = 8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- numbering ------------------------------------------------------------
class Numbering:
    """Translate node labels between the internal numbering and the user's."""

    def __init__(self, rf: RealFormDescriptor, paper: bool = False):
        self.rf = rf
        self.paper = paper
        self.out = paper_node_map(rf) if paper else {i: i for i in range(1, rf.rank + 1)}
        self.back = {v: k for k, v in self.out.items()}

    def parse(self, text) -> int:
        return self.back[self.rf.parse_node(text)]

    def label(self, i: int) -> str:
        return self.rf.node_label(self.out[i])

    def key(self, i: int) -> int:
        return self.out[i]

    def pair(self, i: int, j: int) -> str:
        return f"({self.label(i)},{self.label(j)})"

    def j_tuple(self, j: JAction) -> str:
        pm = j.phase_map
        return "(" + ",".join(SYMBOLS[pm[k]] for k in sorted(j.display, key=self.key)) + ")"


def _split_list(text: str) -> list[str]:
    parts = [p.strip() for p in re.split(r"[,\s]+", text.strip().strip("{}()")) if p.strip()]
    if not parts:
        raise UsageError(f"empty node list {text!r}")
    return parts


def resolve_form(text: str) -> RealFormDescriptor:
    """A real form name, ``X(form)``, or a bare type such as ``A3`` (the split form)."""
    text = text.strip()
    m = re.fullmatch(r"[A-G]\((.+)\)", text)
    if m:
        text = m.group(1)
    if re.fullmatch(r"[A-G]\d+", text):
        types = tuple(parse_types(text))
        for rf in all_instances(types[0].rank):
            if rf.is_split and tuple(rf.complex_type) == types:
                return rf
        raise CatalogError(f"no split real form of type {text} in the catalog")
    return parse_form(text)


# -- structured output ----------------------------------------------------
def header(paper: bool) -> dict:
    return {
        "catalog_sha256": catalog_hash(),
        "convention": "paper" if paper else "bourbaki",
        "format": "parasym",
        "schema": SCHEMA,
        "tool_version": __version__,
    }


def dump_lines(records: Sequence[dict], paper: bool) -> str:
    lines = [json.dumps(header(paper), sort_keys=True, ensure_ascii=False)]
    lines += [json.dumps(r, sort_keys=True, ensure_ascii=False) for r in records]
    return "\n".join(lines) + "\n"


def read_structured(text: str) -> tuple[dict, list[dict]]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty document")
    head = json.loads(lines[0])
    if head.get("format") != "parasym" or head.get("schema") != SCHEMA:
        raise ValueError(f"not a parasym schema {SCHEMA} document")
    return head, [json.loads(ln) for ln in lines[1:]]


def row_record(row: ClassificationRow, ixi, num: Numbering) -> dict:
    rf = num.rf
    disp = sorted((i for i in ixi if not rf.is_complex or i <= rf.display_rank), key=num.key)
    return {
        "kind": "classification",
        "form": rf.name,
        "xi": [num.label(i) for i in disp],
        "components": [
            {"label": num.pair(rc.representative.i, rc.representative.j), "homogeneity": rc.homogeneity,
             "gamma": sorted((num.label(k) for k in rc.gamma), key=lambda s: (len(s), s))}
            for rc in row.components
        ],
        "gamma": sorted((num.label(k) for k in row.gamma), key=lambda s: (len(s), s)),
        "J": [{"tuple": num.j_tuple(j), "class": j.cls, "verdict": row.verdicts[j.tuple_repr]}
              for j in sorted(row.j_actions, key=lambda a: (a.order, num.j_tuple(a)))],
    }


def _render_row(rec: dict) -> str:
    comps = ", ".join(c["label"] + f"[h={c['homogeneity']}]" for c in rec["components"]) or "-"
    gamma = ", ".join("a" + k for k in rec["gamma"]) or "-"
    js = ", ".join(f"{j['tuple']} {j['verdict']}" for j in rec["J"]) or "-"
    return f"{rec['form']:<14} Xi={{{','.join(rec['xi'])}}}  kappa_H: {comps}  gamma: {gamma}  J: {js}"


def _emit(args, records: list[dict], render) -> None:
    if args.format == "structured":
        sys.stdout.write(dump_lines(records, args.paper_numbering))
    else:
        for r in records:
            print(render(r))


# -- commands -------------------------------------------------------------
def cmd_grade(args) -> int:
    types = parse_types(args.type)
    if not types:
        raise UsageError(f"cannot read type {args.type!r}")
    rs_stub = SimpleNamespace(complex_type=tuple(types))
    pmap = paper_node_map(rs_stub) if args.paper_numbering else None
    back = {v: k for k, v in pmap.items()} if pmap else None
    xi = []
    for s in _split_list(args.xi):
        i = int(s)
        xi.append(back.get(i, i) if back else i)
    from .rootsys import build_root_system

    rs = build_root_system(types)
    if any(not 1 <= i <= rs.rank for i in xi):
        raise GradingError(f"Xi={sorted(xi)} out of range for {args.type}")
    g = grade(rs, xi)
    dims = {d: g.dims[d] for d in range(-g.k, g.k + 1)}
    rec = {
        "kind": "grading",
        "type": args.type,
        "xi": sorted(pmap[i] if pmap else i for i in g.xi),
        "k": g.k,
        "dims": {str(d): n for d, n in dims.items()},
        "dim_g_minus": sum(dims[d] for d in range(-g.k, 0)),
        "dim_g_0": dims[0],
        "filtration": [sum(dims[e] for e in range(d, g.k + 1)) for d in range(-g.k, g.k + 1)],
    }

    def render(r):
        neg = ",".join(str(r["dims"][str(d)]) for d in range(-1, -r["k"] - 1, -1))
        return (f"{r['type']} Xi={{{','.join(map(str, r['xi']))}}}: k={r['k']}  "
                f"dims g_-1..g_-k = ({neg})  dim g_- = {r['dim_g_minus']}  dim g_0 = {r['dim_g_0']}  "
                f"filtration dims g^-k..g^k = {r['filtration']}")

    _emit(args, [rec], render)
    return EXIT_OK


def cmd_classify(args) -> int:
    rf = resolve_form(args.form)
    num = Numbering(rf, args.paper_numbering)
    ixi = [num.parse(s) for s in _split_list(args.xi)]
    comps = None
    if args.comp:
        comps = []
        for c in args.comp:
            a, b = _split_list(c)
            comps.append((num.parse(a), num.parse(b)))
    full = rf.internal_xi([rf.node_label(i) for i in ixi])
    row = classify(rf, full, comps)
    _emit(args, [row_record(row, full, num)], _render_row)
    return EXIT_OK


def _sweep_form(job) -> list[dict]:
    rf, paper = job
    num = Numbering(rf, paper)
    out = []
    d = rf.display_rank
    for k in range(1, d + 1):
        for s in itertools.combinations(range(1, d + 1), k):
            ixi = rf.internal_xi(s)
            if not admissible_xi(rf, ixi):
                continue
            out.append(row_record(classify(rf, ixi), ixi, num))
    return out


def _row_key(rec: dict) -> tuple:
    return (rec["form"], len(rec["xi"]), [int(x.rstrip("'")) for x in rec["xi"]])


def table_records(max_rank: int, paper: bool = False, workers: int = 1) -> list[dict]:
    if not 1 <= max_rank <= MAX_TABLE_RANK:
        raise UsageError(f"--max-rank must lie in 1..{MAX_TABLE_RANK}")
    jobs = [(rf, paper) for rf in all_instances(max_rank)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_sweep_form, jobs))
    else:
        chunks = [_sweep_form(j) for j in jobs]
    return sorted((r for c in chunks for r in c), key=_row_key)


def cmd_tables(args) -> int:
    records = table_records(args.max_rank, args.paper_numbering, args.workers)
    text = dump_lines(records, args.paper_numbering)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {len(records)} rows to {args.out}", file=sys.stderr)
    elif args.format == "structured":
        sys.stdout.write(text)
    else:
        for r in records:
            print(_render_row(r))
    if args.diff:
        try:
            report = evaluate_tables(Path(args.diff), max_rank=args.max_rank, workers=args.workers)
        except GoldenError as exc:
            print(f"golden: {exc}", file=sys.stderr)
            return EXIT_MISMATCH
        for t in sorted({r.table for r in report.results}):
            c = report.counts(t)
            print(f"golden table {t}: {c['pass']} pass, {c['skip']} skipped, {c['fail']} fail", file=sys.stderr)
        for r in report.results:
            if r.status == "fail":
                print("  " + r.line(), file=sys.stderr)
        if not report.ok:
            return EXIT_MISMATCH
    return EXIT_OK


def cmd_deform(args) -> int:
    rf = resolve_form(args.target)
    num = Numbering(rf, args.paper_numbering)
    ixi = rf.internal_xi([rf.node_label(num.parse(s)) for s in _split_list(args.xi)])
    if not admissible_xi(rf, ixi):
        raise SymmetryError(f"Xi is not admissible for {rf.name}")
    rs = rf.root_system
    g = grade(rs, ixi)
    cs = enumerate_components(rs, g)
    comps = []
    for text in [args.comp] + list(args.also or []):
        a, b = (num.parse(x) for x in _split_list(text))
        try:
            comps.append(cs.find(a, b))
        except KeyError:
            try:
                comps.append(cs.find(b, a))
            except KeyError:
                raise ConstructionError(f"({a},{b}) is not a component for this Xi") from None
    t = build_structure_table(rs)
    d = deform(t, g, comps, rf)
    tower = annihilator_tower(d)
    sol = central_symmetry_solutions(d, allow_outer=args.allow_outer)
    order = lambda js: sorted((num.j_tuple(j) for j in js))
    rec = {
        "kind": "deformation",
        "form": rf.name,
        "xi": [num.label(i) for i in sorted(rf.display_xi(ixi), key=num.key)],
        "components": [num.pair(c.i, c.j) for c in comps],
        "jacobi": d.jacobi_ok,
        "dim_a0": tower.dim_a0,
        "dim_a_plus": tower.dim_a_plus,
        "tower": tower.dims,
        "order2": order(sol.order2),
        "order4": order(sol.order4),
        "generators": order(sol.generators()),
        "parametric": [list(v) for v in sol.parametric],
        "outer_allowed": bool(args.allow_outer),
    }

    def render(r):
        lines = [
            f"{r['form']} Xi={{{','.join(r['xi'])}}} components {' '.join(r['components'])}",
            f"  Jacobi identity: {'ok' if r['jacobi'] else 'FAILED'}",
            f"  dims: a0={r['dim_a0']}; a+={r['dim_a_plus']}  (tower {r['tower']})",
            f"  order-2 central solutions: {{{', '.join(r['order2'])}}}",
        ]
        if r["order4"]:
            lines.append(f"  order-4 central solutions: {{{', '.join(r['order4'])}}}")
        if r["generators"]:
            lines.append(f"  finite solutions generated by: {', '.join(r['generators'])}")
        if r["parametric"]:
            lines.append("  parametric exponents: " + ", ".join("(" + ",".join(f"a^{e}" for e in v) + ")"
                                                             for v in r["parametric"]))
        return "\n".join(lines)

    _emit(args, [rec], render)
    return EXIT_OK


# -- entry point ----------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--paper-numbering", action="store_true",
                        help="read and print node numbers in the numbering of the reference tables")
    common.add_argument("--format", choices=("table", "structured"), default="table")

    p = _Parser(prog="parasym", description="Symmetries of parabolic geometries.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("grade", parents=[common], help="grading of a complex type")
    s.add_argument("type", help="e.g. A3, G2, A2+A2")
    s.add_argument("--xi", required=True, help="comma separated simple roots")
    s.set_defaults(func=cmd_grade)

    s = sub.add_parser("classify", parents=[common], help="one classification row")
    s.add_argument("form", help="real form, e.g. sl(4,R), su(1,2), g2(2) or a split type A3")
    s.add_argument("--xi", required=True)
    s.add_argument("--comp", action="append", help="restrict to component i,j (repeatable)")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("tables", parents=[common], help="sweep the catalog")
    s.add_argument("--max-rank", type=int, default=MAX_TABLE_RANK)
    s.add_argument("--out", help="write the structured document here")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--diff", metavar="DIR", help="also compare with golden tables stored in DIR")
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("deform", parents=[common], help="deform g_- by a harmonic component")
    s.add_argument("target", help="type (split form) or real form")
    s.add_argument("--xi", required=True)
    s.add_argument("--comp", required=True, help="component i,j")
    s.add_argument("--also", action="append", help="additional component i,j (repeatable)")
    s.add_argument("--allow-outer", action="store_true", help="accept central elements outside the group")
    s.set_defaults(func=cmd_deform)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CatalogError, RootSystemError) as exc:
        print(f"parasym: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GradingError, SymmetryError, ConstructionError) as exc:
        print(f"parasym: refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (ValueError, OSError) as exc:
        print(f"parasym: {exc}", file=sys.stderr)
        return EXIT_USAGE


__all__ = ["EXIT_MISMATCH", "EXIT_OK", "EXIT_REFUSED", "EXIT_USAGE", "Numbering", "build_parser", "dump_lines",
           "main", "read_structured", "resolve_form", "table_records"]
