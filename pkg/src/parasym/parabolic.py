"""Gradings of a semisimple Lie algebra induced by a set of simple roots.

A subset Xi of simple roots gives the functional ht_Xi (sum of the Xi
coefficients of a root).  Root spaces sit in degree ht_Xi, the Cartan
subalgebra sits in degree 0, and k is the largest degree that occurs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .rootsys import Root, RootSystem, RootSystemError


class GradingError(ValueError):
    pass


@dataclass(frozen=True)
class Xi:
    """A non-empty, sorted, duplicate-free set of 1-based simple-root indices."""

    indices: tuple

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if not idx:
            raise GradingError("Xi must be non-empty")
        if len(set(idx)) != len(idx):
            raise GradingError(f"duplicate index in Xi {idx}")
        if any(i < 1 for i in idx):
            raise GradingError(f"Xi indices must be positive, got {idx}")
        object.__setattr__(self, "indices", tuple(sorted(idx)))

    @classmethod
    def of(cls, indices: Iterable[int]) -> "Xi":
        return cls(tuple(indices))

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)

    def __contains__(self, i):
        return i in self.indices

    def __str__(self):
        return "{" + ",".join(map(str, self.indices)) + "}"


def ht(r: Root, nodes: Iterable[int]) -> int:
    """ht over the given 1-based nodes."""
    return sum(r[i - 1] for i in nodes)


@dataclass(frozen=True)
class ParabolicGrading:
    rs: RootSystem
    xi: Xi
    k: int
    degree_of_root: Mapping[Root, int] = field(repr=False)
    dims: Mapping[int, int] = field(repr=False)

    def degree(self, r: Root) -> int:
        return ht(r, self.xi)

    def roots_of_degree(self, d: int) -> list[Root]:
        return [r for r in self.rs.roots if self.degree_of_root[r] == d]

    @property
    def dimension(self) -> int:
        return sum(self.dims.values())

    def factor_k(self, f: int) -> int:
        """k of a single simple factor (ht_Xi of that factor's highest root)."""
        return self.degree(self.rs.highest_roots[f])


def grade(rs: RootSystem, xi: Xi | Iterable[int]) -> ParabolicGrading:
    if not isinstance(xi, Xi):
        xi = Xi.of(xi)
    for i in xi:
        if i > rs.rank:
            raise GradingError(f"Xi index {i} exceeds rank {rs.rank}")
    deg = {r: ht(r, xi) for r in rs.roots}
    k = max(ht(h, xi) for h in rs.highest_roots)
    dims: dict[int, int] = {d: 0 for d in range(-k, k + 1)}
    for d in deg.values():
        dims[d] += 1
    dims[0] += rs.rank
    return ParabolicGrading(rs, xi, k, deg, dims)


@dataclass(frozen=True)
class BiGrading:
    grading: ParabolicGrading
    xi_minus: tuple
    xi_plus: tuple
    bidegree_of_root: Mapping[Root, tuple] = field(repr=False)

    def bidegree(self, r) -> tuple[int, int]:
        return (ht(r, self.xi_minus), ht(r, self.xi_plus))


def bigrade(g: ParabolicGrading, xi_minus: Iterable[int], xi_plus: Iterable[int]) -> BiGrading:
    lo, hi = tuple(sorted(xi_minus)), tuple(sorted(xi_plus))
    if set(lo) & set(hi) or set(lo) | set(hi) != set(g.xi) or len(lo) + len(hi) != len(g.xi):
        raise GradingError(f"{lo} and {hi} do not partition Xi={g.xi}")
    table = {r: (ht(r, lo), ht(r, hi)) for r in g.rs.roots}
    return BiGrading(g, lo, hi, table)


def filtration_component(g: ParabolicGrading, i: int) -> tuple[frozenset, bool]:
    """Roots of g^i = g_i + ... + g_k, plus whether the Cartan part is included."""
    if not -g.k <= i <= g.k:
        raise GradingError(f"filtration index {i} outside [-{g.k}, {g.k}]")
    roots = frozenset(r for r, d in g.degree_of_root.items() if d >= i)
    return roots, i <= 0


def g_minus(g: ParabolicGrading) -> list[Root]:
    """Roots of negative degree, ordered by degree (closest to zero first)."""
    return sorted((r for r in g.rs.roots if g.degree_of_root[r] < 0), key=lambda r: (-g.degree_of_root[r], r))


def p_plus(g: ParabolicGrading) -> list[Root]:
    return sorted((r for r in g.rs.roots if g.degree_of_root[r] > 0), key=lambda r: (g.degree_of_root[r], r))


def levi_roots(g: ParabolicGrading) -> list[Root]:
    return [r for r in g.rs.roots if g.degree_of_root[r] == 0]


__all__ = [
    "Xi",
    "ParabolicGrading",
    "BiGrading",
    "GradingError",
    "RootSystemError",
    "grade",
    "bigrade",
    "filtration_component",
    "ht",
    "g_minus",
    "p_plus",
    "levi_roots",
]
