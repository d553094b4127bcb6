"""Regression data for the published classification tables.

Each golden file stores the rows of one table with their parameters left
symbolic.  ``evaluate_table`` instantiates every row over all parameter
values whose real form has rank at most ``max_rank``, runs ``classify`` on
the row's components and compares the component list, the γ column and the
J column.

J columns are compared as follows.  Listed order-two actions must coincide
with the computed ones.  Complex actions are only listed up to composition
with the listed order-two actions, so the computed complex actions must
equal that closure.  The all-plus tuple produced by a "±" expansion is the
identity and is dropped.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import yaml

from ._expr import evaluate
from .realform import CatalogError, RealFormDescriptor, admissible_xi, catalog_hash, catalog_lookup
from .symmetry import PHASES, SymmetryError, classify

VAR_RANGE = 18
TABLE_IDS = (2, 3, 4, 5, 6)


class GoldenError(ValueError):
    pass


def golden_dir() -> Path:
    from .realform import catalog_path

    return catalog_path().parent / "golden"


def load_table(path: Path, check_hash: bool = True) -> dict:
    doc = yaml.safe_load(Path(path).read_text())
    if check_hash and doc.get("catalog_sha256") != catalog_hash():
        raise GoldenError(f"{path}: catalog hash mismatch; regenerate or restore the catalog")
    return doc


def parse_j(text: str) -> list[tuple]:
    """``"(-,±,i)"`` -> every phase tuple it denotes."""
    body = text.strip().strip("()")
    options = []
    for tok in body.split(","):
        tok = tok.strip()
        if tok in ("±", "+-", "+/-"):
            options.append((0, 2))
        elif tok in PHASES:
            options.append((PHASES[tok],))
        else:
            raise GoldenError(f"cannot read J entry {tok!r} in {text!r}")
    return [p for p in itertools.product(*options)]


def _node(rf: RealFormDescriptor, expr, env: dict) -> int:
    s = str(expr).strip()
    primed = s.endswith("'")
    v = int(evaluate(s.rstrip("'"), env))
    return rf.parse_node(f"{v}'" if primed else str(v))


def _label(rf: RealFormDescriptor, text: str, env: dict) -> tuple[int, int]:
    a, b = text.strip().strip("()").split(",")
    return (_node(rf, a, env), _node(rf, b, env))


@dataclass
class InstanceResult:
    table: int
    row: str
    form: str
    xi: tuple
    status: str  # pass | fail | skip
    problems: list = field(default_factory=list)
    reason: str = ""

    def line(self) -> str:
        xi = "{" + ",".join(map(str, self.xi)) + "}"
        tail = "; ".join(self.problems) if self.problems else self.reason
        return f"table{self.table} row {self.row} {self.form} {xi}: {self.status}" + (f" ({tail})" if tail else "")


def _instances(row: dict, max_rank: int):
    names = row.get("vars", [])
    grid = itertools.product(range(VAR_RANGE), repeat=len(names)) if names else [()]
    seen = set()
    for vals in grid:
        env = dict(zip(names, vals))
        try:
            if not all(evaluate(w, env) for w in row.get("where", [])):
                continue
        except ZeroDivisionError:
            continue
        for pattern, params in row["forms"]:
            try:
                p = {k: int(evaluate(v, env)) for k, v in params.items()}
                rf = catalog_lookup(pattern, p)
            except CatalogError:
                continue
            if rf.display_rank > max_rank:
                continue
            xi = [int(evaluate(x, env)) for x in row["xi"]]
            if len(set(xi)) != len(xi) or not all(1 <= i <= rf.display_rank for i in xi):
                continue
            if not admissible_xi(rf, xi):
                continue
            key = (rf.name, tuple(xi))
            if key in seen:
                continue
            seen.add(key)
            yield rf, xi, env


def check_instance(table: int, row: dict, rf: RealFormDescriptor, xi: list, env: dict) -> InstanceResult:
    res = InstanceResult(table, row["id"], rf.name, tuple(xi), "pass")
    for issue in row.get("known_issues", []):
        if evaluate(issue.get("when", "1 == 1"), env) and rf.pattern in issue.get("forms", [rf.pattern]):
            res.status, res.reason = "skip", issue["reason"]
            return res
    try:
        labels = [_label(rf, k, env) for k in row["kappa"]]
        out = classify(rf, xi, labels)
    except (SymmetryError, CatalogError) as exc:
        res.status = "fail"
        res.problems.append(str(exc))
        return res
    got_labels = sorted(rc.label for rc in out.components)
    want_labels = sorted(f"({rf.node_label(a)},{rf.node_label(b)})" for a, b in labels)
    if len(out.components) != len(labels):
        res.problems.append(f"components {got_labels} != {want_labels}")
    want_gamma = set()
    for g in row.get("gamma", []):
        if isinstance(g, dict):
            if evaluate(g.get("when", "1 == 1"), env):
                want_gamma.add(int(evaluate(g["node"], env)))
        else:
            want_gamma.add(int(evaluate(g, env)))
    if set(out.gamma) != want_gamma:
        res.problems.append(f"gamma {sorted(out.gamma)} != {sorted(want_gamma)}")
    order = [int(evaluate(x, env)) for x in row["xi"]]
    listed = set()
    for text in row.get("J", []):
        for tup in parse_j(text):
            if len(tup) != len(order):
                raise GoldenError(f"row {row['id']}: J {text} does not match Xi length")
            listed.add(frozenset(zip(order, tup)))
    listed.discard(frozenset((k, 0) for k in order))
    two = {j for j in listed if all(p in (0, 2) for _, p in j)}
    four = {j for j in listed if all(p in (1, 3) for _, p in j)}
    closure = {frozenset((k, (p + dict(o)[k]) % 4) for k, p in c) for c in four for o in two | {frozenset((k, 0) for k in order)}}
    got = {frozenset((k, j.phase_map[k]) for k in j.display) for j in out.j_actions}
    got_two = {j for j in got if all(p in (0, 2) for _, p in j)}
    got_four = got - got_two
    if got_two != two or got_four != closure:
        res.problems.append(f"J {_fmt(got, order)} != {_fmt(two | closure, order)}")
    if res.problems:
        res.status = "fail"
    return res


def _fmt(js: Iterable[frozenset], order: list) -> str:
    from .symmetry import SYMBOLS

    out = []
    for j in js:
        d = dict(j)
        out.append("(" + ",".join(SYMBOLS[d[k]] for k in sorted(order)) + ")")
    return "{" + " ".join(sorted(out)) + "}"


def _row_job(args) -> list[InstanceResult]:
    table, row, max_rank = args
    return [check_instance(table, row, rf, xi, env) for rf, xi, env in _instances(row, max_rank)]


@dataclass
class GoldenReport:
    results: list

    def counts(self, table: int | None = None) -> dict:
        rs = [r for r in self.results if table is None or r.table == table]
        return {s: sum(r.status == s for r in rs) for s in ("pass", "fail", "skip")}

    def rows(self, table: int | None = None) -> dict:
        """Per-row status: fail if any instance fails, skip if every instance is skipped."""
        by_row: dict = {}
        for r in self.results:
            if table is None or r.table == table:
                by_row.setdefault((r.table, r.row), []).append(r.status)
        out = {}
        for key, sts in by_row.items():
            out[key] = "fail" if "fail" in sts else "pass" if "pass" in sts else "skip"
        return out

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.results)


def evaluate_tables(directory: Path | None = None, tables: Iterable[int] = TABLE_IDS, max_rank: int = 8,
                    workers: int = 1, check_hash: bool = True) -> GoldenReport:
    directory = Path(directory or golden_dir())
    jobs = []
    for t in tables:
        doc = load_table(directory / f"table{t}.yaml", check_hash)
        jobs += [(t, row, max_rank) for row in doc["rows"]]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_row_job, jobs))
    else:
        chunks = [_row_job(j) for j in jobs]
    return GoldenReport([r for c in chunks for r in c])


# -- construction examples ------------------------------------------------
EXAMPLES = ("sl4", "so35", "sp8", "sl5")


def load_example(name: str, directory: Path | None = None) -> dict:
    path = Path(directory or golden_dir()) / f"example_{name}.yaml"
    if not path.exists():
        raise GoldenError(f"no example fixture {name!r} in {path.parent}")
    return yaml.safe_load(path.read_text())


def _qi(expr: str, t):
    import sympy

    from ._exact import QI, simplify

    v = sympy.nsimplify(sympy.sympify(expr, locals={"t": sympy.Rational(t)}))
    re, im = (sympy.Rational(x) for x in v.as_real_imag())
    return simplify(QI(Fraction(re.p, re.q), Fraction(im.p, im.q)))


def extension_data(t, directory: Path | None = None):
    """(k, alpha, structure table, grading) for the stored extension family at ``t``."""
    from .chevalley import build_structure_table
    from .construct import BracketAlgebra, from_matrix, matrix_realization
    from .parabolic import grade
    from .rootsys import build_root_system, parse_types

    doc = load_example("extension", directory)
    rs = build_root_system(parse_types(doc["type"]))
    table = build_structure_table(rs)
    real = matrix_realization(table)
    k = BracketAlgebra.from_matrices([[[Fraction(x) for x in row] for row in m] for m in doc["k_basis"]])
    alpha = [from_matrix([[_qi(e, t) for e in row] for row in m], real) for m in doc["alpha"]]
    return k, alpha, table, grade(rs, doc["xi"])


def expected_extension_coefficient(key: str, t, directory: Path | None = None):
    return _qi(load_example("extension", directory)["expect"][key], t)


__all__ = [
    "EXAMPLES",
    "GoldenError",
    "GoldenReport",
    "InstanceResult",
    "evaluate_tables",
    "expected_extension_coefficient",
    "extension_data",
    "golden_dir",
    "load_example",
    "load_table",
    "parse_j",
]
