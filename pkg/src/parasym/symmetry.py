"""Central actions J and their effect on harmonic curvature components.

A finite-order central element s_J of G_0 acts on each root space by a power
of the imaginary unit.  We record it as a phase in Z/4 per grading node
(+ -> 0, i -> 1, - -> 2, -i -> 3) and extend linearly over root
coefficients.  The eigenvalue of s_J on the component with lowest weight
vector X^{alpha_i} ^ X^{beta} (x) X^{-nu} is i to the power
phase(alpha_i) + phase(beta) - phase(nu).

Action classes:

* identity: every phase 0
* usual: every phase 2
* para-complex: phases in {0, 2}, constant on conjugation orbits, mixed
* complex: phases in {1, 3}, opposite on the two nodes of each orbit

Only the last three classes are reported by ``classify``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .kostant import ComponentSet, HarmonicComponent, enumerate_components, gamma_roots
from .parabolic import BiGrading, GradingError, ParabolicGrading, Xi, bigrade, grade
from .realform import RealFormDescriptor, admissible_xi, black_involution
from .rootsys import Weight, apply_word, pairing

SYMBOLS = {0: "+", 1: "i", 2: "-", 3: "-i"}
PHASES = {"+": 0, "i": 1, "-": 2, "-i": 3, "−": 2, "−i": 3}

IDENTITY, USUAL, PARA, COMPLEX, OTHER = "identity", "usual", "para_complex", "complex", "other"
CLASSES = (USUAL, PARA, COMPLEX)


class SymmetryError(ValueError):
    pass


@dataclass(frozen=True)
class JAction:
    """A phase map on the (internal) grading nodes."""

    xi: tuple
    phases: tuple
    display: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.xi) != len(self.phases):
            raise SymmetryError("one phase per grading node is required")
        object.__setattr__(self, "phases", tuple(int(p) % 4 for p in self.phases))
        if not self.display:
            object.__setattr__(self, "display", tuple(self.xi))

    @property
    def phase_map(self) -> dict:
        return dict(zip(self.xi, self.phases))

    @property
    def cls(self) -> str:
        ps = set(self.phases)
        if ps == {0}:
            return IDENTITY
        if ps == {2}:
            return USUAL
        if ps <= {0, 2}:
            return PARA
        if ps <= {1, 3}:
            return COMPLEX
        return OTHER

    @property
    def order(self) -> int:
        ps = set(self.phases)
        return 1 if ps == {0} else 2 if ps <= {0, 2} else 4

    def phase_of(self, r: Sequence[int]) -> int:
        return sum(r[k - 1] * p for k, p in zip(self.xi, self.phases)) % 4

    def compose(self, other: "JAction") -> "JAction":
        if self.xi != other.xi:
            raise SymmetryError("cannot compose actions over different grading nodes")
        return JAction(self.xi, tuple(a + b for a, b in zip(self.phases, other.phases)), self.display)

    @property
    def tuple_repr(self) -> str:
        pm = self.phase_map
        return "(" + ",".join(SYMBOLS[pm[k]] for k in self.display) + ")"

    def __str__(self):
        return self.tuple_repr


def node_involution(rf: RealFormDescriptor, predicate: str = "plain") -> tuple:
    """Involution on simple-root indices used to pair grading nodes.

    ``plain`` is the diagram involution of the real form.  ``composed``
    additionally applies the opposition involution -w_0 of each factor.
    """
    if predicate == "plain":
        return rf.sigma
    if predicate != "composed":
        raise SymmetryError(f"unknown involution predicate {predicate!r}")
    rs = rf.root_system
    opp = black_involution(rs, range(1, rs.rank + 1))
    return tuple(opp[rf.sigma[k]] for k in range(rs.rank))


def _orbits(nodes: Sequence[int], inv: Sequence[int]) -> list[tuple]:
    seen, out = set(), []
    for i in sorted(nodes):
        if i in seen:
            continue
        j = inv[i - 1]
        if j not in nodes:
            raise SymmetryError(f"grading nodes are not stable under the involution ({i} -> {j})")
        orb = tuple(sorted({i, j}))
        seen.update(orb)
        out.append(orb)
    return out


def display_nodes(rf: RealFormDescriptor, xi: Xi) -> tuple:
    return tuple(i for i in xi if not rf.is_complex or i <= rf.display_rank)


def admissible_j(rf: RealFormDescriptor, xi: Xi | Iterable, cls: str, predicate: str = "plain") -> list[JAction]:
    """All actions of class ``cls`` compatible with the real form on Ξ."""
    ixi = rf.internal_xi(xi)
    if not admissible_xi(rf, ixi):
        raise SymmetryError(f"Xi={tuple(ixi)} is not admissible for {rf.name}")
    nodes = tuple(ixi)
    disp = display_nodes(rf, nodes)
    inv = node_involution(rf, predicate)
    orbits = _orbits(nodes, inv)
    out: list[JAction] = []
    if cls == IDENTITY:
        return [JAction(nodes, (0,) * len(nodes), disp)]
    if cls == USUAL:
        return [JAction(nodes, (2,) * len(nodes), disp)]
    if cls == PARA:
        for signs in itertools.product((0, 2), repeat=len(orbits)):
            if len(set(signs)) < 2:
                continue
            pm = {k: s for orb, s in zip(orbits, signs) for k in orb}
            out.append(JAction(nodes, tuple(pm[k] for k in nodes), disp))
        return out
    if cls == COMPLEX:
        if any(len(orb) == 1 for orb in orbits):
            return []
        for signs in itertools.product((1, 3), repeat=len(orbits)):
            pm = {}
            for (a, b), s in zip(orbits, signs):
                pm[a], pm[b] = s, (4 - s) % 4
            out.append(JAction(nodes, tuple(pm[k] for k in nodes), disp))
        return out
    raise SymmetryError(f"unknown action class {cls!r}")


def all_actions(rf: RealFormDescriptor, xi, predicate: str = "plain") -> list[JAction]:
    out = []
    for cls in CLASSES:
        out += admissible_j(rf, xi, cls, predicate)
    return out


def eigenphase(j: JAction, c: HarmonicComponent) -> int:
    """Exponent e with s_J acting on the component by i**e."""
    return (j.phase_of(c.alpha_i) + j.phase_of(c.beta) - j.phase_of(c.nu)) % 4


def surviving_components(j: JAction, cs: Iterable[HarmonicComponent]) -> list[HarmonicComponent]:
    """Components on which s_J acts trivially; the others are forced to vanish."""
    return [c for c in cs if eigenphase(j, c) == 0]


def fixed_plus_subalgebra(j: JAction, g: ParabolicGrading) -> frozenset:
    """Roots of p_+ fixed by Ad(s_J)."""
    if tuple(g.xi) != tuple(j.xi):
        raise SymmetryError("action and grading use different Xi")
    return frozenset(r for r in g.rs.roots if g.degree_of_root[r] > 0 and j.phase_of(r) == 0)


def bigrading_of(j: JAction, g: ParabolicGrading) -> BiGrading:
    """Split Ξ into the nodes with phase 2 or 3 and those with phase 0 or 1."""
    minus = [k for k, p in zip(j.xi, j.phases) if p in (2, 3)]
    plus = [k for k, p in zip(j.xi, j.phases) if p in (0, 1)]
    return bigrade(g, minus, plus)


# -- restricted pairings --------------------------------------------------
def _sigma_weight(rf: RealFormDescriptor, w: Weight) -> Weight:
    rs = rf.root_system
    perm = [Fraction(0)] * rs.rank
    for k, c in enumerate(w.coords):
        perm[rf.sigma[k] - 1] = c
    out = Weight(tuple(perm))
    return apply_word(rf.black_word, out, rs)


def restricted_orthogonal(rf: RealFormDescriptor, w: Weight, node: int) -> bool:
    """Whether the restriction of ``w`` to the split part is orthogonal to
    the restricted simple root of ``node``.

    The restriction of a weight is proportional to ``w + sigma*(w)``; the
    pairing is taken with the symmetric form.
    """
    rs = rf.root_system
    wr = w + _sigma_weight(rf, w)
    a = rs.simple_root(node)
    ar = tuple(x + y for x, y in zip(a, rf.sigma_root(a)))
    coords = rs.weight_to_root(wr)
    return sum(coords[p] * rs.gram[p][q] * ar[q] for p in range(rs.rank) for q in range(rs.rank)) == 0


# -- classification -------------------------------------------------------
@dataclass(frozen=True)
class RealComponent:
    """A conjugation orbit of complex components, printed by its representative."""

    label: str
    members: tuple
    homogeneity: int
    gamma: tuple

    @property
    def representative(self) -> HarmonicComponent:
        return self.members[0]


@dataclass
class ClassificationRow:
    real_form: str
    xi: tuple
    components: list
    j_actions: list
    verdicts: dict
    gamma: tuple = ()
    dropped: list = field(default_factory=list)

    def j_strings(self) -> list[str]:
        return [j.tuple_repr for j in self.j_actions]


AT_MOST_ONE = "at most one"
POSSIBLY_MANY = "possibly many"


def component_label(rf: RealFormDescriptor, c: HarmonicComponent) -> str:
    return f"({rf.node_label(c.i)},{rf.node_label(c.j)})"


def _conjugate_component(rf: RealFormDescriptor, c: HarmonicComponent, cs: ComponentSet) -> HarmonicComponent:
    tau = rf.sigma
    mt = [Fraction(0)] * len(c.mu_tilde.coords)
    for k, v in enumerate(c.mu_tilde.coords):
        mt[tau[k] - 1] = v
    target = rf.root_system.factor_of_node[tau[rf.root_system.factor_nodes(c.target)[0] - 1] - 1]
    for d in cs:
        if d.target == target and tuple(d.mu_tilde.coords) == tuple(mt):
            return d
    raise SymmetryError(f"no conjugate found for component {c}")


def real_components(rf: RealFormDescriptor, cs: ComponentSet) -> list[RealComponent]:
    """Group regular components into conjugation orbits.

    The representative is the member whose coefficient factor is the first
    one (for complex forms) or the first member in enumeration order.
    """
    g = cs.grading
    seen, out = set(), []
    for c in cs:
        if not c.regular or c.key in seen:
            continue
        d = _conjugate_component(rf, c, cs)
        members = (c,) if d.key == c.key else (c, d)
        seen.update(m.key for m in members)
        if rf.is_complex and c.target != 0:
            members = tuple(reversed(members))
        out.append(RealComponent(component_label(rf, members[0]), members, c.homogeneity, _gamma(rf, g, members)))
    return out


def _orthogonal_nodes(rf: RealFormDescriptor, g: ParabolicGrading, members: Sequence[HarmonicComponent],
                      mode: str = "complexified") -> set:
    """Grading nodes k such that every member weight is orthogonal to the
    simple roots of the conjugation orbit of k (``complexified``), or to the
    restricted root of k (``restricted``)."""
    nodes = set(g.xi)
    for m in members:
        if mode == "complexified":
            nodes &= {k for k in g.xi if all(pairing(m.mu_tilde, q, g.rs) == 0 for q in {k, rf.sigma[k - 1]})}
        elif mode == "restricted":
            nodes &= {k for k in g.xi if restricted_orthogonal(rf, m.mu_tilde, k)}
        else:
            raise SymmetryError(f"unknown gamma mode {mode!r}")
    return nodes


def _gamma(rf: RealFormDescriptor, g: ParabolicGrading, members: Sequence[HarmonicComponent], mode: str = "complexified") -> tuple:
    return _display_orbits(rf, _orthogonal_nodes(rf, g, members, mode))


def _display_orbits(rf: RealFormDescriptor, nodes: Iterable[int]) -> tuple:
    nodes = set(nodes)
    return tuple(sorted({min(k, rf.sigma[k - 1]) for k in nodes if rf.sigma[k - 1] in nodes}))


def complex_gamma(c: HarmonicComponent, g: ParabolicGrading) -> frozenset:
    """γ computed on the complexification, without restriction."""
    return gamma_roots(c, g)


def _resolve(rf: RealFormDescriptor, label, comps: list[RealComponent]) -> RealComponent:
    if isinstance(label, str):
        body = label.strip().strip("()")
        a, b = (s.strip() for s in body.split(","))
        want = (rf.parse_node(a), rf.parse_node(b))
    else:
        want = tuple(label)
    for rc in comps:
        for m in rc.members:
            if m.label == want or (m.label == want[::-1] and rf.root_system.cartan[want[0] - 1][want[1] - 1] == 0):
                if not rf.is_complex or m.target == 0 or len(rc.members) == 1:
                    return rc
    raise SymmetryError(f"component {label} is not a regular component of {rf.name} for this Xi")


def verdict(j: JAction, gamma_nodes: Iterable[int]) -> str:
    pm = j.phase_map
    return AT_MOST_ONE if all(pm[k] == 0 for k in gamma_nodes) else POSSIBLY_MANY


def classify(
    rf: RealFormDescriptor,
    xi: Xi | Iterable,
    components: Sequence | None = None,
    predicate: str = "plain",
    gamma_mode: str = "complexified",
) -> ClassificationRow:
    """Regular components, γ roots and the central actions preserving them.

    ``components`` restricts attention to a subset of components (labels
    such as ``"(1,2')"`` or internal index pairs); by default every regular
    component is used.
    """
    ixi = rf.internal_xi(xi)
    if not admissible_xi(rf, ixi):
        raise SymmetryError(f"Xi={rf.display_xi(ixi)} is not admissible for {rf.name}")
    rs = rf.root_system
    g = grade(rs, ixi)
    cs = enumerate_components(rs, g)
    comps = real_components(rf, cs)
    if components is not None:
        chosen = []
        for lab in components:
            rc = _resolve(rf, lab, comps)
            if rc not in chosen:
                chosen.append(rc)
        comps = chosen
    gamma_all = set(ixi)
    for rc in comps:
        gamma_all &= _orthogonal_nodes(rf, g, rc.members, gamma_mode)
    gamma = _display_orbits(rf, gamma_all)
    kept = []
    for j in all_actions(rf, ixi, predicate):
        if all(eigenphase(j, m) == 0 for rc in comps for m in rc.members):
            kept.append(j)
    gamma_nodes = [k for k in ixi if min(k, rf.sigma[k - 1]) in gamma]
    verdicts = {j.tuple_repr: verdict(j, gamma_nodes) for j in kept}
    return ClassificationRow(rf.name, rf.display_xi(ixi), comps, kept, verdicts, gamma)


__all__ = [
    "AT_MOST_ONE",
    "POSSIBLY_MANY",
    "ClassificationRow",
    "JAction",
    "RealComponent",
    "SymmetryError",
    "admissible_j",
    "all_actions",
    "bigrading_of",
    "classify",
    "complex_gamma",
    "eigenphase",
    "fixed_plus_subalgebra",
    "node_involution",
    "real_components",
    "restricted_orthogonal",
    "surviving_components",
    "verdict",
]
