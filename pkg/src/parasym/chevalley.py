"""Chevalley basis structure constants and exact bracket arithmetic.

Basis: root vectors X^a for every root a, and the simple coroots H_1..H_n.

    [X^a, X^-a] = H_a  (the coroot of a, expanded over simple coroots)
    [H_i, X^b]  = <b, alpha_i^vee> X^b
    [X^a, X^b]  = N_{a,b} X^{a+b}   when a+b is a root

The signs of N are fixed by declaring N = +(p+1) on every extraspecial pair
and propagating with the standard identities (Carter, *Simple groups of Lie
type*, ch. 4).  Positive roots are ordered by height, then lexicographically.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from ._exact import simplify
from .rootsys import Root, RootSystem, is_positive


def _add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _neg(a: Root) -> Root:
    return tuple(-x for x in a)


class AlgebraElement:
    """Sparse element: {root: coefficient} plus coordinates over simple coroots."""

    __slots__ = ("roots", "cartan")

    def __init__(self, roots: Mapping[Root, object] | None = None, cartan: Iterable | None = None, rank: int | None = None):
        self.roots = {tuple(r): simplify(c) for r, c in (roots or {}).items() if c != 0}
        if cartan is None:
            if rank is None:
                if not self.roots:
                    raise ValueError("rank is required for an element with no root part")
                rank = len(next(iter(self.roots)))
            cartan = (0,) * rank
        self.cartan = tuple(simplify(c) for c in cartan)

    @classmethod
    def root_vector(cls, r: Root, coeff=1) -> "AlgebraElement":
        return cls({tuple(r): coeff}, rank=len(r))

    @classmethod
    def coroot(cls, i: int, rank: int, coeff=1) -> "AlgebraElement":
        """coeff * H_i for a 1-based simple index."""
        return cls({}, tuple(coeff if k == i - 1 else 0 for k in range(rank)))

    @classmethod
    def zero(cls, rank: int) -> "AlgebraElement":
        return cls({}, rank=rank)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.roots)
        for r, c in other.roots.items():
            out[r] = out.get(r, 0) + c
        return AlgebraElement(out, tuple(a + b for a, b in zip(self.cartan, other.cartan)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __neg__(self) -> "AlgebraElement":
        return self.scale(-1)

    def scale(self, s) -> "AlgebraElement":
        return AlgebraElement({r: s * c for r, c in self.roots.items()}, tuple(s * c for c in self.cartan))

    __rmul__ = scale

    def __mul__(self, s):
        return self.scale(s)

    def is_zero(self) -> bool:
        return not self.roots and not any(self.cartan)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.roots == other.roots and self.cartan == other.cartan

    def __hash__(self):
        return hash((frozenset(self.roots.items()), self.cartan))

    def coefficient(self, r: Root):
        return self.roots.get(tuple(r), 0)

    def support(self) -> list[Root]:
        return sorted(self.roots)

    def __repr__(self):
        parts = [f"{c}*X{list(r)}" for r, c in sorted(self.roots.items())]
        parts += [f"{c}*H{k + 1}" for k, c in enumerate(self.cartan) if c]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class StructureTable:
    rs: RootSystem
    n_constants: Mapping[tuple, int]
    cartan_action: Mapping[tuple, int]
    coroots: Mapping[Root, tuple]

    def basis(self) -> list[AlgebraElement]:
        """Root vectors (sorted) followed by the simple coroots."""
        n = self.rs.rank
        return [AlgebraElement.root_vector(r) for r in self.rs.roots] + [AlgebraElement.coroot(i, n) for i in range(1, n + 1)]

    @property
    def dimension(self) -> int:
        return len(self.rs.roots) + self.rs.rank


class _Builder:
    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.pos = list(rs.positive_roots)  # height-then-lex order
        self.order = {r: k for k, r in enumerate(self.pos)}
        self.cache: dict[tuple, int] = {}
        self.extraspecial: dict[Root, tuple] = {}
        for xi in self.pos:
            if sum(xi) == 1:
                continue
            for a in self.pos:
                b = tuple(x - y for x, y in zip(xi, a))
                if is_positive(b) and rs.is_root(b):
                    self.extraspecial[xi] = (a, b)
                    break

    def p_value(self, a: Root, b: Root) -> int:
        p = 0
        cur = tuple(x - y for x, y in zip(b, a))
        while self.rs.is_root(cur):
            p += 1
            cur = tuple(x - y for x, y in zip(cur, a))
        return p

    def norm(self, r: Root):
        return self.rs.inner(r, r)

    def n(self, a: Root, b: Root) -> int:
        key = (a, b)
        if key in self.cache:
            return self.cache[key]
        val = self._compute(a, b)
        self.cache[key] = val
        return val

    def _compute(self, a: Root, b: Root) -> int:
        s = _add(a, b)
        if not self.rs.is_root(s):
            return 0
        pa, pb = is_positive(a), is_positive(b)
        if pa and pb:
            return self._positive(a, b)
        if not pa and not pb:
            return -self.n(_neg(a), _neg(b))
        # Mixed signs: use the cyclic identity for a + b + c = 0, picking the
        # cyclic pair whose two roots share a sign.
        c = _neg(s)
        trip = (a, b, c)
        for k in range(3):
            x, y, z = trip[k], trip[(k + 1) % 3], trip[(k + 2) % 3]
            if is_positive(x) == is_positive(y):
                # N_{a,b}/(c,c) = N_{x,y}/(z,z)
                val = Fraction(self.n(x, y) * self.norm(c), self.norm(z))
                assert val.denominator == 1
                return int(val)
        raise AssertionError("unreachable: some cyclic pair shares a sign")

    def _positive(self, a: Root, b: Root) -> int:
        xi = _add(a, b)
        a0, b0 = self.extraspecial[xi]
        if (a, b) == (a0, b0):
            return self.p_value(a, b) + 1
        if (b, a) == (a0, b0):
            return -(self.p_value(b, a) + 1)
        total = Fraction(0)
        d1 = tuple(x - y for x, y in zip(b, a0))
        if self.rs.is_root(d1):
            total += Fraction(self.n(b, _neg(a0)) * self.n(a, _neg(b0)), self.norm(d1))
        d2 = tuple(x - y for x, y in zip(a, a0))
        if self.rs.is_root(d2):
            total += Fraction(self.n(_neg(a0), a) * self.n(b, _neg(b0)), self.norm(d2))
        val = total * self.norm(xi) / self.n(a0, b0)
        assert val.denominator == 1
        return int(val)


_TABLES: dict[RootSystem, StructureTable] = {}


def build_structure_table(rs: RootSystem) -> StructureTable:
    if rs in _TABLES:
        return _TABLES[rs]
    b = _Builder(rs)
    consts: dict[tuple, int] = {}
    for a in rs.roots:
        for c in rs.roots:
            if a != _neg(c) and rs.is_root(_add(a, c)):
                consts[(a, c)] = b.n(a, c)
    action = {(i, r): rs._pair_root(r, i - 1) for i in range(1, rs.rank + 1) for r in rs.roots}
    coroots = {r: rs.coroot_coeffs(r) for r in rs.roots}
    table = StructureTable(rs, consts, action, coroots)
    _TABLES[rs] = table
    return table


def bracket(x: AlgebraElement, y: AlgebraElement, t: StructureTable) -> AlgebraElement:
    rs = t.rs
    n = rs.rank
    out: dict[Root, object] = defaultdict(int)
    h = [0] * n
    nconst = t.n_constants
    for a, ca in x.roots.items():
        for b, cb in y.roots.items():
            s = _add(a, b)
            if not any(s):
                for k, v in enumerate(t.coroots[a]):
                    if v:
                        h[k] += ca * cb * v
            else:
                nab = nconst.get((a, b))
                if nab:
                    out[s] += ca * cb * nab
    for k, hk in enumerate(x.cartan):
        if hk:
            for b, cb in y.roots.items():
                out[b] += hk * cb * t.cartan_action[(k + 1, b)]
    for k, hk in enumerate(y.cartan):
        if hk:
            for a, ca in x.roots.items():
                out[a] -= hk * ca * t.cartan_action[(k + 1, a)]
    return AlgebraElement(out, h)


def killing_pairing(x: AlgebraElement, y: AlgebraElement, t: StructureTable):
    """Trace of ad(x) ad(y) over the Chevalley basis."""
    total = 0
    n = t.rs.rank
    for r in t.rs.roots:
        z = bracket(x, bracket(y, AlgebraElement.root_vector(r), t), t)
        total += z.coefficient(r)
    for i in range(1, n + 1):
        z = bracket(x, bracket(y, AlgebraElement.coroot(i, n), t), t)
        total += z.cartan[i - 1]
    return simplify(total)


def jacobiator(x: AlgebraElement, y: AlgebraElement, z: AlgebraElement, t: StructureTable) -> AlgebraElement:
    return (
        bracket(bracket(x, y, t), z, t)
        + bracket(bracket(y, z, t), x, t)
        + bracket(bracket(z, x, t), y, t)
    )


def check_jacobi(t: StructureTable) -> list[tuple]:
    """Exhaustive Jacobi check on basis triples; returns the failing triples."""
    basis = t.basis()
    bad = []
    m = len(basis)
    for i in range(m):
        for j in range(i + 1, m):
            xy = bracket(basis[i], basis[j], t)
            for k in range(j + 1, m):
                z = basis[k]
                v = bracket(xy, z, t) + bracket(bracket(basis[j], z, t), basis[i], t) + bracket(bracket(z, basis[i], t), basis[j], t)
                if not v.is_zero():
                    bad.append((i, j, k))
    return bad
