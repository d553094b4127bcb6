"""Root systems of complex semisimple Lie algebras in Bourbaki numbering.

Roots are integer coefficient tuples over the simple roots.  Weights live in
fundamental-weight coordinates with exact rationals.  Simple-root indices in
the public API are 1-based, matching the way the tables and the CLI talk
about nodes.

The Cartan matrix is stored with ``cartan[i][j] = <alpha_i, alpha_j^vee>`` so
row ``i`` is the simple root ``alpha_i`` written in fundamental weights.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

Root = tuple  # tuple[int, ...]

FAMILIES = "ABCDEFG"
SERIAL_VERSION = 1


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        if f not in FAMILIES:
            raise RootSystemError(f"unknown family {f!r}")
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 3,
            "E": 6 <= n <= 8,
            "F": n == 4,
            "G": n == 2,
        }[f]
        if not ok:
            raise RootSystemError(f"invalid rank {n} for family {f}")

    @classmethod
    def parse(cls, text: str) -> "SimpleType":
        text = text.strip()
        if len(text) < 2 or not text[1:].isdigit():
            raise RootSystemError(f"cannot parse simple type {text!r}")
        return cls(text[0].upper(), int(text[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class Weight:
    """A weight in fundamental-weight coordinates."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coords) + "]"


def _symmetric_form(t: SimpleType) -> list[list[int]]:
    """Gram matrix (alpha_i, alpha_j) with short roots of squared length 2."""
    n, f = t.rank, t.family
    s = [[0] * n for _ in range(n)]

    def link(i: int, j: int, v: int) -> None:
        s[i][j] = s[j][i] = v

    if f in "ABCD" or f == "E":
        lengths = [2] * n
        if f == "B":
            lengths = [4] * (n - 1) + [2]
        elif f == "C":
            lengths = [2] * (n - 1) + [4]
        for i in range(n):
            s[i][i] = lengths[i]
        if f == "E":
            # Bourbaki: 1-3-4-5-6(-7-8) with 2 attached to 4.
            edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        elif f == "D":
            edges = [(k, k + 1) for k in range(n - 2)] + [(n - 3, n - 1)]
        else:
            edges = [(k, k + 1) for k in range(n - 1)]
        for i, j in edges:
            link(i, j, -max(lengths[i], lengths[j]) // 2)
    elif f == "F":
        for i, v in enumerate((4, 4, 2, 2)):
            s[i][i] = v
        link(0, 1, -2)
        link(1, 2, -2)
        link(2, 3, -1)
    elif f == "G":
        s[0][0], s[1][1] = 2, 6
        link(0, 1, -3)
    return s


def _inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


class RootSystem:
    """Immutable root data for a direct sum of simple types."""

    def __init__(self, types: Sequence[SimpleType]):
        if not types:
            raise RootSystemError("at least one simple type is required")
        self.simple_types: tuple[SimpleType, ...] = tuple(types)
        self.rank = sum(t.rank for t in types)
        n = self.rank
        gram = [[0] * n for _ in range(n)]
        factor_of_node: list[int] = []
        offset = 0
        for f, t in enumerate(types):
            block = _symmetric_form(t)
            for i in range(t.rank):
                for j in range(t.rank):
                    gram[offset + i][offset + j] = block[i][j]
            factor_of_node += [f] * t.rank
            offset += t.rank
        self.gram: tuple[tuple[int, ...], ...] = tuple(map(tuple, gram))
        self.factor_of_node: tuple[int, ...] = tuple(factor_of_node)
        self.cartan: tuple[tuple[int, ...], ...] = tuple(
            tuple(2 * gram[i][j] // gram[j][j] for j in range(n)) for i in range(n)
        )
        self.positive_roots: tuple[Root, ...] = self._generate_positive()
        self.roots: tuple[Root, ...] = tuple(
            sorted(self.positive_roots + tuple(tuple(-c for c in r) for r in self.positive_roots),
                   key=lambda r: (sum(r), r))
        )
        self._root_set = frozenset(self.roots)
        self.highest_roots: tuple[Root, ...] = tuple(
            max((r for r in self.positive_roots if self.factor_of_root(r) == f), key=lambda r: (sum(r), r))
            for f in range(len(types))
        )
        self.rho = Weight((1,) * n)

    # -- construction -------------------------------------------------
    def _generate_positive(self) -> tuple[Root, ...]:
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        layers = [simple]
        found = set(simple)
        while layers[-1]:
            nxt = []
            for r in layers[-1]:
                for i in range(n):
                    if r == simple[i]:
                        continue
                    # p = how far the alpha_i string extends below r.
                    p = 0
                    down = list(r)
                    while True:
                        down[i] -= 1
                        if tuple(down) in found:
                            p += 1
                        else:
                            break
                    q = p - self._pair_root(r, i)
                    if q >= 1:
                        up = list(r)
                        up[i] += 1
                        up = tuple(up)
                        if up not in found:
                            found.add(up)
                            nxt.append(up)
            layers.append(sorted(nxt))
        return tuple(sorted(found, key=lambda r: (sum(r), r)))

    def _pair_root(self, r: Sequence[int], i: int) -> int:
        """<r, alpha_i^vee> with 0-based i."""
        return sum(c * self.cartan[k][i] for k, c in enumerate(r) if c)

    # -- queries ----------------------------------------------------------
    def is_root(self, r: Root) -> bool:
        return tuple(r) in self._root_set

    def simple_root(self, i: int) -> Root:
        self._check_index(i)
        return tuple(int(k == i - 1) for k in range(self.rank))

    def factor_of_root(self, r: Root) -> int:
        for k, c in enumerate(r):
            if c:
                return self.factor_of_node[k]
        raise RootSystemError("zero vector has no factor")

    def factor_nodes(self, f: int) -> tuple[int, ...]:
        """1-based node indices of factor ``f``."""
        return tuple(k + 1 for k, g in enumerate(self.factor_of_node) if g == f)

    def inner(self, x: Root, y: Root):
        """Symmetrized form on root-coordinate vectors."""
        return sum(x[a] * self.gram[a][b] * y[b] for a in range(self.rank) if x[a] for b in range(self.rank) if y[b])

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise RootSystemError(f"simple-root index {i} out of range 1..{self.rank}")

    @cached_property
    def cartan_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(map(tuple, _inverse(self.cartan)))

    def root_to_weight(self, r: Sequence) -> Weight:
        n = self.rank
        return Weight(tuple(sum(Fraction(r[k]) * self.cartan[k][j] for k in range(n)) for j in range(n)))

    def weight_to_root(self, w: Weight) -> tuple:
        """Root-lattice coordinates (rational in general) of a weight."""
        n = self.rank
        inv = self.cartan_inverse
        return tuple(sum(w.coords[j] * inv[j][k] for j in range(n)) for k in range(n))

    def coroot_coeffs(self, r: Root) -> tuple:
        """Coefficients of r^vee over the simple coroots."""
        norm = self.inner(r, r)
        return tuple(Fraction(c * self.gram[k][k], norm) for k, c in enumerate(r))

    def height(self, r: Sequence) -> int:
        return sum(r)

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.simple_types == other.simple_types

    def __hash__(self):
        return hash(self.simple_types)

    def __repr__(self):
        return "RootSystem(" + "+".join(str(t) for t in self.simple_types) + ")"


def build_root_system(types: Iterable[Union[SimpleType, str]]) -> RootSystem:
    """Build the root system of a direct sum of simple types."""
    ts = [t if isinstance(t, SimpleType) else SimpleType.parse(t) for t in types]
    return _cached(tuple(ts))


_CACHE: dict[tuple, RootSystem] = {}


def _cached(ts: tuple) -> RootSystem:
    rs = _CACHE.get(ts)
    if rs is None:
        rs = _CACHE[ts] = RootSystem(ts)
    return rs


def parse_types(text: str) -> list[SimpleType]:
    """Parse ``"A3"`` or ``"A2+A2"`` into simple types."""
    return [SimpleType.parse(p) for p in text.replace("x", "+").split("+") if p.strip()]


def make_root(coeffs: Sequence[int]) -> Root:
    """Validate a coefficient vector as a root value (no mixed signs)."""
    c = tuple(int(x) for x in coeffs)
    if any(x > 0 for x in c) and any(x < 0 for x in c):
        raise RootSystemError(f"mixed signs in root coefficients {c}")
    return c


def is_positive(r: Sequence) -> bool:
    return any(c > 0 for c in r) and all(c >= 0 for c in r)


def pairing(x: Union[Root, Weight], i: int, rs: RootSystem) -> Fraction:
    """<x, alpha_i^vee> for a root (root coordinates) or a weight."""
    rs._check_index(i)
    if isinstance(x, Weight):
        return x.coords[i - 1]
    return Fraction(rs._pair_root(x, i - 1))


def reflect(x: Union[Root, Weight], i: int, rs: RootSystem):
    """Simple reflection s_i(x) = x - <x, alpha_i^vee> alpha_i."""
    rs._check_index(i)
    if isinstance(x, Weight):
        c = x.coords[i - 1]
        return Weight(tuple(v - c * rs.cartan[i - 1][k] for k, v in enumerate(x.coords)))
    c = rs._pair_root(x, i - 1)
    out = list(x)
    out[i - 1] -= c
    return tuple(out)


def apply_word(word: Sequence[int], x, rs: RootSystem):
    """Apply w = s_{word[0]} ... s_{word[-1]} (rightmost letter acts first)."""
    for i in reversed(list(word)):
        x = reflect(x, i, rs)
    return x


def affine_action(word: Sequence[int], lam: Weight, rs: RootSystem) -> Weight:
    """The dot action w.lam = w(lam + rho) - rho."""
    return apply_word(word, lam + rs.rho, rs) - rs.rho


def dumps(rs: RootSystem) -> str:
    """Serialize to a versioned JSON document."""
    doc = {
        "version": SERIAL_VERSION,
        "family": [t.family for t in rs.simple_types],
        "rank": [t.rank for t in rs.simple_types],
        "cartan": [list(r) for r in rs.cartan],
        "roots": [list(r) for r in rs.roots],
    }
    return json.dumps(doc, sort_keys=True)


def loads(text: str) -> RootSystem:
    doc = json.loads(text)
    if doc.get("version") != SERIAL_VERSION:
        raise RootSystemError(f"unsupported root system serialization version {doc.get('version')}")
    rs = build_root_system(SimpleType(f, n) for f, n in zip(doc["family"], doc["rank"]))
    if [list(r) for r in rs.cartan] != doc["cartan"] or [list(r) for r in rs.roots] != doc["roots"]:
        raise RootSystemError("serialized root data does not match the rebuilt system")
    return rs
