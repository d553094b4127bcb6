"""Real forms described combinatorially: a diagram involution and black nodes.

A descriptor stores the complexified diagram, an involutive diagram
automorphism ``sigma`` of simple-root indices and the set of compact (black)
nodes.  The conjugation acts on roots by

    sigma*(r) = w_black(sigma(r))

where ``w_black`` is the longest element of the Weyl group generated by the
black nodes.  On a black simple root this gives ``-alpha_j``; on a white one it
gives ``alpha_sigma(j)`` plus a combination of black roots.

A complex simple algebra viewed as a real one is the two-factor diagram with
the factor swap; its second-factor nodes print with a prime.
"""

from __future__ import annotations

import hashlib
import os
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

import yaml

from ._expr import evaluate, format_template
from .parabolic import Xi
from .rootsys import Root, RootSystem, SimpleType, apply_word, build_root_system, is_positive

CATALOG_ENV = "PARASYM_CATALOG_DIR"
CATALOG_FILE = "catalog.yaml"


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class RootSpaceKind:
    kind: str  # "real" or "complex-pair"
    partner: Root

    @property
    def is_real(self) -> bool:
        return self.kind == "real"


@dataclass(frozen=True)
class RealFormDescriptor:
    name: str
    pattern: str
    params: tuple
    complex_type: tuple
    sigma: tuple
    compact_nodes: frozenset
    is_complex: bool = False

    def __post_init__(self):
        n = sum(t.rank for t in self.complex_type)
        s = self.sigma
        if sorted(s) != list(range(1, n + 1)):
            raise CatalogError(f"{self.name}: sigma {s} is not a permutation of 1..{n}")
        if any(s[s[i] - 1] != i + 1 for i in range(n)):
            raise CatalogError(f"{self.name}: sigma is not an involution")
        if {s[j - 1] for j in self.compact_nodes} != set(self.compact_nodes):
            raise CatalogError(f"{self.name}: sigma does not preserve the compact nodes")
        cart = self.root_system.cartan
        if any(cart[s[i] - 1][s[j] - 1] != cart[i][j] for i in range(n) for j in range(n)):
            raise CatalogError(f"{self.name}: sigma is not a diagram automorphism")
        if self.is_complex and self.compact_nodes:
            raise CatalogError(f"{self.name}: a complex form has no compact nodes")

    # -- basic data ------------------------------------------------------
    @property
    def root_system(self) -> RootSystem:
        return build_root_system(self.complex_type)

    @property
    def rank(self) -> int:
        return sum(t.rank for t in self.complex_type)

    @property
    def display_rank(self) -> int:
        """Rank of the first factor; primed labels are offsets past it."""
        return self.complex_type[0].rank if self.is_complex else self.rank

    @property
    def is_split(self) -> bool:
        return not self.is_complex and not self.compact_nodes and all(
            self.sigma[i] == i + 1 for i in range(self.rank)
        )

    def param(self, key: str) -> int:
        return dict(self.params)[key]

    # -- labels ----------------------------------------------------------
    def node_label(self, i: int) -> str:
        r1 = self.display_rank
        return f"{i - r1}'" if self.is_complex and i > r1 else str(i)

    def parse_node(self, text) -> int:
        s = str(text).strip()
        primed = s.endswith("'")
        i = int(s.rstrip("'"))
        if primed:
            if not self.is_complex:
                raise CatalogError(f"primed node {s} on the non-complex form {self.name}")
            i += self.display_rank
        if not 1 <= i <= self.rank:
            raise CatalogError(f"node {s} out of range for {self.name}")
        return i

    def internal_xi(self, xi: Xi | Iterable) -> Xi:
        """Ξ on the full diagram; for complex forms the primed copies are added."""
        idx = {self.parse_node(i) for i in xi}
        if self.is_complex:
            idx |= {self.sigma[i - 1] for i in idx}
        return Xi.of(idx)

    def display_xi(self, xi: Xi | Iterable) -> tuple:
        idx = sorted(int(i) for i in xi)
        if self.is_complex:
            return tuple(i for i in idx if i <= self.display_rank)
        return tuple(idx)

    # -- conjugation -----------------------------------------------------
    @property
    def black_word(self) -> tuple:
        return _longest_word(self.root_system, tuple(sorted(self.compact_nodes)))

    def sigma_root(self, r: Root) -> Root:
        perm = [0] * self.rank
        for k, c in enumerate(r):
            perm[self.sigma[k] - 1] = c
        return tuple(apply_word(self.black_word, tuple(perm), self.root_system))

    def sigma_nodes(self, nodes: Iterable[int]) -> frozenset:
        return frozenset(self.sigma[i - 1] for i in nodes)

    def node_orbits(self, nodes: Iterable[int]) -> list[tuple]:
        seen, out = set(), []
        for i in sorted(nodes):
            if i in seen:
                continue
            orb = tuple(sorted({i, self.sigma[i - 1]}))
            seen.update(orb)
            out.append(orb)
        return out

    def __str__(self):
        return self.name


def _longest_word(rs: RootSystem, nodes: tuple) -> tuple:
    """A reduced word for the longest element of the parabolic subgroup W_nodes."""
    if not nodes:
        return ()
    from .rootsys import Weight, reflect

    lam = Weight(tuple(1 if k + 1 in nodes else 0 for k in range(rs.rank)))
    word = []
    while True:
        for j in nodes:
            if lam.coords[j - 1] > 0:
                lam = reflect(lam, j, rs)
                word.append(j)
                break
        else:
            return tuple(word)


def black_involution(rs: RootSystem, black: Iterable[int]) -> dict:
    """j -> j* with -w_black(alpha_j) = alpha_{j*} for every black node j."""
    nodes = tuple(sorted(black))
    word = _longest_word(rs, nodes)
    out = {}
    for j in nodes:
        img = apply_word(word, rs.simple_root(j), rs)
        neg = tuple(-c for c in img)
        if sum(neg) != 1 or not is_positive(neg):
            raise CatalogError(f"-w_black(alpha_{j}) is not simple")
        out[j] = neg.index(1) + 1
    return out


def admissible_xi(rf: RealFormDescriptor, xi: Xi | Iterable) -> bool:
    """Ξ avoids the compact nodes and is stable under sigma."""
    try:
        idx = rf.internal_xi(xi)
    except (CatalogError, ValueError):
        return False
    s = set(idx)
    return not (s & rf.compact_nodes) and rf.sigma_nodes(s) == s


def root_space_kind(rf: RealFormDescriptor, r: Root) -> RootSpaceKind:
    partner = rf.sigma_root(tuple(r))
    if not rf.root_system.is_root(partner):
        raise CatalogError(f"conjugation maps {r} outside the root system")
    return RootSpaceKind("real" if partner == tuple(r) else "complex-pair", partner)


# -- numbering used by the reference tables ------------------------------
def paper_node_map(rf: RealFormDescriptor) -> dict:
    """Internal (Bourbaki) index -> index in the reference tables.

    The tables follow Bourbaki everywhere except F4, where the nodes run in
    the opposite direction.
    """
    out, off = {}, 0
    for t in rf.complex_type:
        for k in range(1, t.rank + 1):
            out[off + k] = off + (t.rank + 1 - k if t.family == "F" else k)
        off += t.rank
    return out


# -- catalog ---------------------------------------------------------------
def catalog_path() -> Path:
    override = os.environ.get(CATALOG_ENV)
    if override:
        return Path(override) / CATALOG_FILE
    return Path(str(resources.files("parasym") / "data" / CATALOG_FILE))


def catalog_hash(path: Path | None = None) -> str:
    return hashlib.sha256((path or catalog_path()).read_bytes()).hexdigest()


@lru_cache(maxsize=None)
def _load(path: str) -> tuple:
    doc = yaml.safe_load(Path(path).read_text())
    if doc.get("version") != 1:
        raise CatalogError(f"unsupported catalog version {doc.get('version')}")
    return tuple(doc["forms"])


def load_catalog(path: Path | None = None) -> tuple:
    return _load(str(path or catalog_path()))


def pattern_names(path: Path | None = None) -> list[str]:
    seen = []
    for e in load_catalog(path):
        if e["name"] not in seen:
            seen.append(e["name"])
    return seen


def _normalize_params(entry: Mapping, params) -> dict:
    names = list(entry.get("params", []))
    if isinstance(params, Mapping):
        env = {k: int(v) for k, v in params.items()}
    else:
        vals = list(params or ())
        if len(vals) != len(names):
            raise CatalogError(f"{entry['name']} takes parameters {names}, got {vals}")
        env = dict(zip(names, (int(v) for v in vals)))
    if set(env) != set(names):
        raise CatalogError(f"{entry['name']} takes parameters {names}, got {sorted(env)}")
    if entry.get("symmetric") and env[names[0]] > env[names[1]]:
        env[names[0]], env[names[1]] = env[names[1]], env[names[0]]
    return env


def _instantiate(entry: Mapping, env: dict) -> RealFormDescriptor:
    factors = [SimpleType(f, int(evaluate(n, env))) for f, n in entry["factors"]]
    name = format_template(entry.get("instance", entry["name"]), env)
    params = tuple((k, env[k]) for k in entry.get("params", []))
    if entry.get("complex"):
        (t,) = factors
        r = t.rank
        sigma = tuple(list(range(r + 1, 2 * r + 1)) + list(range(1, r + 1)))
        return RealFormDescriptor(name, entry["name"], params, (t, t), sigma, frozenset(), True)
    rs = build_root_system(factors)
    compact = frozenset(int(j) for j in evaluate(entry.get("compact", "[]"), env))
    sigma = list(range(1, rs.rank + 1))
    for a, b in evaluate(entry.get("arrows", "[]"), env):
        if a == b:
            continue
        if a in compact or b in compact:
            raise CatalogError(f"{name}: arrow ({a},{b}) touches a compact node")
        sigma[a - 1], sigma[b - 1] = b, a
    for j, jstar in black_involution(rs, compact).items():
        sigma[j - 1] = jstar
    return RealFormDescriptor(name, entry["name"], params, tuple(factors), tuple(sigma), compact, False)


def catalog_lookup(name: str, params=(), path: Path | None = None) -> RealFormDescriptor:
    """Instantiate the catalog pattern ``name`` at integer ``params``."""
    entries = [e for e in load_catalog(path) if e["name"] == name]
    if not entries:
        raise CatalogError(f"unknown real form {name!r}")
    env = _normalize_params(entries[0], params)
    for e in entries:
        if all(evaluate(w, env) for w in e.get("where", [])):
            return _instantiate(e, env)
    raise CatalogError(f"parameters {env} out of range for {name}")


_INSTANCE_SEARCH = 24


def parse_form(text: str, path: Path | None = None) -> RealFormDescriptor:
    """Resolve an instance name such as ``su(1,2)`` or ``sl(4,R)``.

    Symmetric families accept either order (``su(2,1)`` is ``su(1,2)``).  A
    pattern with explicit parameters, ``su(p,q):p=1,q=2``, is also accepted.
    """
    text = text.strip()
    if ":" in text:
        pat, _, rest = text.partition(":")
        kv = dict(part.split("=") for part in rest.split(",") if part)
        return catalog_lookup(pat.strip(), {k.strip(): int(v) for k, v in kv.items()}, path)
    key = re.sub(r"\s+", "", text)
    for e in load_catalog(path):
        names = e.get("params", [])
        for vals in _param_grid(len(names)):
            env = dict(zip(names, vals))
            try:
                if all(evaluate(w, env) for w in e.get("where", [])):
                    tpl = e.get("instance", e["name"])
                    if format_template(tpl, env) == key:
                        return _instantiate(e, env)
                    if e.get("symmetric") and format_template(tpl, dict(zip(names, vals[::-1]))) == key:
                        return _instantiate(e, env)
            except (ZeroDivisionError, ValueError):
                continue
        if not names and format_template(e.get("instance", e["name"]), {}) == key:
            return _instantiate(e, {})
    raise CatalogError(f"no catalog entry matches {text!r}")


def _param_grid(k: int):
    if k == 0:
        return
    if k == 1:
        for a in range(_INSTANCE_SEARCH):
            yield (a,)
        return
    for a in range(_INSTANCE_SEARCH):
        for b in range(_INSTANCE_SEARCH):
            yield (a, b)


def all_instances(max_rank: int, path: Path | None = None) -> list[RealFormDescriptor]:
    """Every catalog instance whose complex diagram has rank <= max_rank."""
    out, seen = [], set()
    for e in load_catalog(path):
        names = e.get("params", [])
        grid = list(_param_grid(len(names))) if names else [()]
        for vals in grid:
            env = dict(zip(names, vals))
            if e.get("symmetric") and env[names[0]] > env[names[1]]:
                continue
            try:
                if not all(evaluate(w, env) for w in e.get("where", [])):
                    continue
                ranks = [int(evaluate(n, env)) for _, n in e["factors"]]
            except (ZeroDivisionError, ValueError):
                continue
            if sum(ranks) > max_rank or min(ranks) < 1:
                continue
            rf = _instantiate(e, env)
            if rf.name not in seen:
                seen.add(rf.name)
                out.append(rf)
    return out


__all__ = [
    "CatalogError",
    "RealFormDescriptor",
    "RootSpaceKind",
    "admissible_xi",
    "all_instances",
    "black_involution",
    "catalog_hash",
    "catalog_lookup",
    "catalog_path",
    "load_catalog",
    "paper_node_map",
    "parse_form",
    "root_space_kind",
]
