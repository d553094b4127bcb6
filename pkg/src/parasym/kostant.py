"""Harmonic curvature components via Kostant's theorem.

Second cohomology H^2(g_-, g) splits into irreducible pieces indexed by
length-two elements w = s_i s_j of the Hasse graph W^p, together with the
simple factor g^(l) of the coefficient module.  For such a pair the lowest
weight vector is

    X^{alpha_i} ^ X^{beta} (x) X^{-nu},   beta = s_i(alpha_j),  nu = s_i s_j(mu_l),

where mu_l is the highest root of g^(l).  Its homogeneity is
ht(alpha_i) + ht(beta) - ht(nu) and the corresponding p-dominant weight is
the affine action w.mu_l.

Membership in W^p is tested on the inversion set {alpha_i, beta}: both roots
must lie outside the Levi subalgebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .parabolic import BiGrading, GradingError, ParabolicGrading, grade, ht
from .rootsys import Root, RootSystem, Weight, affine_action, apply_word, pairing, reflect


def _sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class HarmonicComponent:
    """One isotypical component, labelled by (i, j) and the target factor."""

    i: int
    j: int
    target: int  # 0-based index of the simple factor of the coefficients
    alpha_i: Root
    beta: Root
    nu: Root
    mu_tilde: Weight = field(compare=False)
    homogeneity: int = field(compare=False)

    @property
    def label(self) -> tuple[int, int]:
        return (self.i, self.j)

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.target)

    @property
    def regular(self) -> bool:
        return self.homogeneity >= 1

    @property
    def lwv_triple(self) -> tuple[Root, Root, Root]:
        return (self.alpha_i, self.beta, self.nu)

    @property
    def coefficient_vector(self) -> tuple:
        """Root coordinates of alpha_i + beta - nu (its Xi part is the multidegree)."""
        return tuple(a + b - c for a, b, c in zip(self.alpha_i, self.beta, self.nu))

    def factor_tags(self, rs: RootSystem) -> tuple[int, int, int]:
        return (rs.factor_of_root(self.alpha_i), rs.factor_of_root(self.beta), self.target)

    def __str__(self):
        return f"({self.i},{self.j})"


@dataclass(frozen=True)
class ComponentSet:
    grading: ParabolicGrading
    components: tuple

    def regular(self) -> list[HarmonicComponent]:
        return [c for c in self.components if c.regular]

    def find(self, i: int, j: int, target: int | None = None) -> HarmonicComponent:
        for c in self.components:
            if c.label == (i, j) and (target is None or c.target == target):
                return c
        raise KeyError(f"no component ({i},{j}) for Xi={self.grading.xi}")

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)


def length_two_hasse(rs: RootSystem, g: ParabolicGrading) -> list[tuple[int, int]]:
    """Ordered pairs (i, j) with s_i s_j a length-two element of W^p.

    Commuting pairs give the same element; both orders are returned so the
    caller can choose the label (see ``enumerate_components``).
    """
    out = []
    for i in g.xi:
        for j in range(1, rs.rank + 1):
            if j == i:
                continue
            beta = reflect(rs.simple_root(j), i, rs)
            if ht(beta, g.xi) >= 1:
                out.append((i, j))
    return out


def _make(rs: RootSystem, g: ParabolicGrading, i: int, j: int, l: int) -> HarmonicComponent:
    mu = rs.highest_roots[l]
    ai = rs.simple_root(i)
    beta = reflect(rs.simple_root(j), i, rs)
    nu = apply_word((i, j), mu, rs)
    mt = affine_action((i, j), rs.root_to_weight(mu), rs)
    h = ht(ai, g.xi) + ht(beta, g.xi) - ht(nu, g.xi)
    return HarmonicComponent(i, j, l, ai, beta, nu, mt, h)


def enumerate_components(rs: RootSystem, g: ParabolicGrading) -> ComponentSet:
    """All components, regular or not, in a deterministic order.

    Commuting pairs are labelled with the node of the target factor first
    and otherwise in increasing order.
    """
    if g.rs != rs:
        raise GradingError("grading belongs to a different root system")
    seen: set = set()
    comps = []
    pairs = length_two_hasse(rs, g)
    pair_set = set(pairs)
    for l in range(len(rs.simple_types)):
        for i, j in pairs:
            if (j, i) in pair_set and rs.cartan[i - 1][j - 1] == 0:
                fi, fj = rs.factor_of_node[i - 1], rs.factor_of_node[j - 1]
                if fi == l and fj != l:
                    pass
                elif fj == l and fi != l:
                    continue
                elif i > j:
                    continue
            key = (i, j, l)
            if key in seen:
                continue
            seen.add(key)
            comps.append(_make(rs, g, i, j, l))
    comps.sort(key=lambda c: (c.target, c.i, c.j))
    return ComponentSet(g, tuple(comps))


def homogeneity(c: HarmonicComponent, g: ParabolicGrading) -> int:
    return ht(c.alpha_i, g.xi) + ht(c.beta, g.xi) - ht(c.nu, g.xi)


def bihomogeneity(c: HarmonicComponent, bg: BiGrading) -> tuple[int, int]:
    v = c.coefficient_vector
    return (ht(v, bg.xi_minus), ht(v, bg.xi_plus))


def mu_tilde_from_triple(c: HarmonicComponent, rs: RootSystem) -> Weight:
    """w.mu recomputed from the lowest-weight triple: nu - alpha_i - beta."""
    return rs.root_to_weight(_sub(_sub(c.nu, c.alpha_i), c.beta))


def gamma_roots(c: HarmonicComponent, g: ParabolicGrading) -> frozenset:
    """Simple roots of positive height orthogonal to mu_tilde."""
    return frozenset(k for k in g.xi if pairing(c.mu_tilde, k, g.rs) == 0)


def components_for(rs: RootSystem, xi: Iterable[int]) -> ComponentSet:
    return enumerate_components(rs, grade(rs, xi))


# -- semisimple bookkeeping -----------------------------------------------
@dataclass(frozen=True)
class TypedComponent:
    component: HarmonicComponent
    type: int
    b: int | None
    k_target: int
    c: int | None
    formula: int
    restriction_holds: bool


def component_type(c: HarmonicComponent, g: ParabolicGrading) -> int:
    """Row (1..5) of the semisimple type table that a component belongs to."""
    rs = g.rs
    fi = rs.factor_of_node[c.i - 1]
    fj = rs.factor_of_node[c.j - 1]
    if fi == fj:
        if c.target == fi:
            return 5
        return 3 if c.j in g.xi else 2
    return 4 if c.target in (fi, fj) else 1


def semisimple_component_types(rs: RootSystem, g: ParabolicGrading) -> list[TypedComponent]:
    """Classify every component into the five semisimple types.

    The homogeneity predicted by each row's closed formula is stored next to
    the value computed from root heights; tests compare the two.
    """
    out = []
    for comp in enumerate_components(rs, g):
        fi = rs.factor_of_node[comp.i - 1]
        fj = rs.factor_of_node[comp.j - 1]
        l = comp.target
        k = g.factor_k(l)
        if fi == fj and l == fi:
            out.append(TypedComponent(comp, 5, rs.cartan[comp.j - 1][comp.i - 1], k, None, comp.homogeneity, True))
        elif fi == fj:
            b = rs.cartan[comp.j - 1][comp.i - 1]
            if comp.j in g.xi:
                out.append(TypedComponent(comp, 3, b, k, None, 2 - b - k, k < 2 - b))
            else:
                out.append(TypedComponent(comp, 2, b, k, None, 1 - b - k, b != 0 and k < 1 - b))
        elif l in (fi, fj):
            node = comp.i if fi == l else comp.j
            c = 1 - ht(reflect(rs.highest_roots[l], node, rs), g.xi)
            out.append(TypedComponent(comp, 4, None, k, c, 1 + c, c > -1))
        else:
            out.append(TypedComponent(comp, 1, None, k, None, 2 - k, k == 1))
    return out


__all__ = [
    "ComponentSet",
    "HarmonicComponent",
    "TypedComponent",
    "bihomogeneity",
    "components_for",
    "enumerate_components",
    "gamma_roots",
    "homogeneity",
    "length_two_hasse",
    "mu_tilde_from_triple",
    "semisimple_component_types",
]
