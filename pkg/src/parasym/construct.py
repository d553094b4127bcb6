"""Constructions of homogeneous models and their automorphism data.

Two engines live here.

Extension curvature: given a linear map alpha from an abstract Lie algebra k
into g (with a stabiliser h mapping into p and k/h identified with g/p), the
curvature of the induced geometry at the origin is

    kappa(X, Y) = [alpha(X), alpha(Y)] - alpha([X, Y]_k).

Deformation of g_-: the lowest weight vector X^{alpha_i} ^ X^{beta} (x) X^{-nu}
of a harmonic component is a 2-cochain on g_- with values in g_- (whenever
nu has positive Xi-height).  Adding it to the bracket of g_- gives a new Lie
algebra n; the identification n -> g_- is an extension with curvature equal
to minus the inserted cochain.  From the cochain we compute the annihilator
tower a_0, a_1, ..., the central elements of G_0 acting trivially on it, and
(for a chosen central s) a normal form for elements s exp(Z) of P up to
conjugation by exp(p_+).

The inserted cochain is normalised so that it sends the pair
(X^{-alpha_i}, X^{-beta}) to exactly X^{-nu}; nothing downstream depends on
that scale.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from ._exact import I_POWERS, QI, integer_kernel, lattice_hnf, nullspace, rank, simplify
from .chevalley import AlgebraElement, StructureTable, bracket, build_structure_table
from .kostant import HarmonicComponent
from .parabolic import ParabolicGrading, ht
from .realform import RealFormDescriptor
from .rootsys import Root, RootSystem, Weight, reflect
from .symmetry import COMPLEX, PARA, USUAL, JAction, admissible_j, eigenphase


class ConstructionError(ValueError):
    """The requested construction does not exist or failed a consistency check."""


class ImageNotInGMinus(ConstructionError):
    """The lowest weight vector has its image outside g_- (nu is not of positive height)."""


class NonRegularComponent(ConstructionError):
    """Deformation along a component of homogeneity <= 0 is refused."""


def _neg(r: Root) -> Root:
    return tuple(-x for x in r)


# -- cochains -------------------------------------------------------------
@dataclass
class Cochain2:
    """An alternating 2-cochain with values in g, stored on ordered basis pairs.

    ``basis`` fixes an order on the argument labels; ``values`` holds the
    value on each pair (a, b) with a before b.  ``arg_degrees`` optionally
    records the grading degree of each argument so homogeneities can be read
    off.
    """

    basis: tuple
    values: dict
    rank: int
    arg_degrees: Mapping | None = None
    grading: ParabolicGrading | None = None

    def __post_init__(self):
        self._pos = {b: k for k, b in enumerate(self.basis)}
        self.values = {p: v for p, v in self.values.items() if not v.is_zero()}

    def __call__(self, a, b) -> AlgebraElement:
        if a == b:
            return AlgebraElement.zero(self.rank)
        if self._pos[a] < self._pos[b]:
            return self.values.get((a, b), AlgebraElement.zero(self.rank))
        return -self.values.get((b, a), AlgebraElement.zero(self.rank))

    def evaluate(self, x: Mapping, y: Mapping) -> AlgebraElement:
        """Bilinear extension; ``x`` and ``y`` map basis labels to scalars."""
        out = AlgebraElement.zero(self.rank)
        for (a, b), v in self.values.items():
            c = x.get(a, 0) * y.get(b, 0) - x.get(b, 0) * y.get(a, 0)
            if c:
                out = out + v.scale(c)
        return out

    def is_zero(self) -> bool:
        return not self.values

    def scale(self, s) -> "Cochain2":
        return Cochain2(self.basis, {p: v.scale(s) for p, v in self.values.items()}, self.rank, self.arg_degrees, self.grading)

    def __neg__(self) -> "Cochain2":
        return self.scale(-1)

    def support(self) -> list[tuple]:
        return sorted(self.values, key=lambda p: (self._pos[p[0]], self._pos[p[1]]))

    @property
    def homogeneity_profile(self) -> tuple:
        """Sorted multiset of homogeneities deg(value) - deg(a) - deg(b)."""
        if self.arg_degrees is None or self.grading is None:
            raise ConstructionError("homogeneities need argument degrees and a grading")
        out: Counter = Counter()
        for (a, b), v in self.values.items():
            base = self.arg_degrees[a] + self.arg_degrees[b]
            for r in v.roots:
                out[self.grading.degree(r) - base] += 1
            if any(v.cartan):
                out[-base] += 1
        return tuple(sorted(out.elements()))


# -- extensions -----------------------------------------------------------
@dataclass(frozen=True)
class BracketAlgebra:
    """A finite-dimensional Lie algebra given by structure constants.

    ``constants[(a, b)]`` maps basis index c to the coefficient of e_c in
    [e_a, e_b] for a < b.
    """

    dim: int
    constants: Mapping[tuple, Mapping[int, object]]

    def bracket_basis(self, a: int, b: int) -> dict:
        if a == b:
            return {}
        if a < b:
            return dict(self.constants.get((a, b), {}))
        return {c: -v for c, v in self.constants.get((b, a), {}).items()}

    @classmethod
    def from_matrices(cls, mats: Sequence[Sequence[Sequence]]) -> "BracketAlgebra":
        """Structure constants of a matrix Lie algebra from a basis of matrices."""
        flat = [[simplify(x) for row in m for x in row] for m in mats]
        consts = {}
        for a, b in itertools.combinations(range(len(mats)), 2):
            comm = _matmul(mats[a], mats[b])
            other = _matmul(mats[b], mats[a])
            target = [simplify(x - y) for r1, r2 in zip(comm, other) for x, y in zip(r1, r2)]
            coeffs = _solve_in_span(flat, target)
            consts[(a, b)] = {c: v for c, v in enumerate(coeffs) if v != 0}
        return cls(len(mats), consts)


def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[simplify(sum((a[i][k] * b[k][j] for k in range(m)), Fraction(0))) for j in range(p)] for i in range(n)]


def _solve_in_span(vectors: Sequence[Sequence], target: Sequence) -> list:
    """Coefficients expressing ``target`` in the span of ``vectors``."""
    m = len(vectors)
    rows = [[vectors[c][r] for c in range(m)] + [-target[r]] for r in range(len(target))]
    sols = nullspace(rows, m + 1)
    for v in sols:
        if v[m] != 0:
            return [simplify(x / v[m]) for x in v[:m]]
    raise ConstructionError("vector is not in the span")


def matrix_realization(t: StructureTable) -> dict:
    """Chevalley basis of sl(n+1) as matrices, consistent with ``t``'s signs.

    Returns a map from each root to (row, column, sign) with
    X^r = sign * E_{row,col}.  Only type A is supported.
    """
    rs = t.rs
    if len(rs.simple_types) != 1 or rs.simple_types[0].family != "A":
        raise ConstructionError("matrix realisations are only provided for type A")
    n = rs.rank
    out: dict[Root, tuple] = {}
    for r in sorted(rs.positive_roots, key=sum):
        support = [k for k, c in enumerate(r) if c]
        a, b = support[0], support[-1] + 1  # X^r is a multiple of E_{a,b} (0-based)
        if len(support) == 1:
            out[r] = (a, b, 1)
            out[_neg(r)] = (b, a, 1)
            continue
        # X^r = [X^{alpha_a}, X^{r - alpha_a}] / N
        first = tuple(int(k == a) for k in range(n))
        rest = tuple(x - y for x, y in zip(r, first))
        nconst = t.n_constants[(first, rest)]
        _, _, s_rest = out[rest]
        out[r] = (a, b, Fraction(s_rest, nconst))
        # X^{-r} = [X^{-alpha_a}, X^{-rest}] / N and [E_{a+1,a}, E_{b,a+1}] = -E_{b,a}
        nneg = t.n_constants[(_neg(first), _neg(rest))]
        _, _, s_nrest = out[_neg(rest)]
        out[_neg(r)] = (b, a, Fraction(-s_nrest, nneg))
    return out


def to_matrix(x: AlgebraElement, real: Mapping[Root, tuple]) -> list[list]:
    n = x.rank + 1
    m = [[Fraction(0)] * n for _ in range(n)]
    for r, c in x.roots.items():
        a, b, s = real[r]
        m[a][b] = simplify(m[a][b] + c * s)
    for k, h in enumerate(x.cartan):
        m[k][k] = simplify(m[k][k] + h)
        m[k + 1][k + 1] = simplify(m[k + 1][k + 1] - h)
    return m


def from_matrix(m: Sequence[Sequence], real: Mapping[Root, tuple]) -> AlgebraElement:
    """Inverse of ``to_matrix`` on traceless matrices."""
    n = len(m) - 1
    trace = simplify(sum((m[k][k] for k in range(n + 1)), Fraction(0)))
    if trace != 0:
        raise ConstructionError("matrix is not traceless")
    roots = {}
    for r, (a, b, s) in real.items():
        if m[a][b] != 0:
            roots[r] = simplify(m[a][b] / s)
    h, acc = [], Fraction(0)
    for k in range(n):
        acc = simplify(acc + m[k][k])
        h.append(acc)
    return AlgebraElement(roots, h)


def extension_curvature(
    alpha: Sequence[AlgebraElement],
    k: BracketAlgebra,
    t: StructureTable,
    g: ParabolicGrading,
    stabilizer: Iterable[int] = (),
) -> Cochain2:
    """Curvature at the origin of the geometry induced by ``alpha``.

    ``alpha[a]`` is the image of the a-th basis vector of ``k``; the basis
    vectors listed in ``stabilizer`` span h.  The result is a cochain on the
    remaining basis vectors of k, which represent g/p through alpha.
    """
    if len(alpha) != k.dim:
        raise ConstructionError("one image per basis vector of k is required")
    stab = sorted(set(stabilizer))
    rest = [a for a in range(k.dim) if a not in stab]
    gm = [r for r in t.rs.roots if g.degree(r) < 0]
    for a in stab:
        if any(g.degree(r) < 0 for r in alpha[a].roots):
            raise ConstructionError(f"alpha maps stabiliser vector {a} outside p")
    proj = [[alpha[a].coefficient(r) for a in rest] for r in gm]
    if len(rest) != len(gm) or rank(proj, len(rest)) != len(gm):
        raise ConstructionError("alpha does not induce a bijection k/h -> g/p")
    values = {}
    for a, b in itertools.combinations(rest, 2):
        v = bracket(alpha[a], alpha[b], t)
        for c, coef in k.bracket_basis(a, b).items():
            v = v - alpha[c].scale(coef)
        values[(a, b)] = v
    return Cochain2(tuple(rest), values, t.rs.rank)


# -- deformation ----------------------------------------------------------
@dataclass
class DeformedAlgebra:
    """g_- with the bracket [ , ] + phi, phi the inserted lowest weight vectors."""

    base: ParabolicGrading
    table: StructureTable
    components: tuple
    insertion: Cochain2
    real_form: RealFormDescriptor | None = None
    jacobi_ok: bool = True

    @property
    def deform_component(self) -> HarmonicComponent:
        return self.components[0]

    @property
    def curvature(self) -> Cochain2:
        return -self.insertion

    @property
    def basis(self) -> tuple:
        return self.insertion.basis

    def bracket(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        return bracket(x, y, self.table) + self.insertion.evaluate(x.roots, y.roots)

    @property
    def bracket_table(self) -> dict:
        """Deformed bracket on ordered basis pairs (zero entries omitted)."""
        out = {}
        for a, b in itertools.combinations(self.basis, 2):
            v = self.bracket(AlgebraElement.root_vector(a), AlgebraElement.root_vector(b))
            if not v.is_zero():
                out[(a, b)] = v
        return out


def lowest_weight_cochain(c: HarmonicComponent, g: ParabolicGrading) -> Cochain2:
    """X^{-mu} as a cochain on g_-: (X^{-alpha_i}, X^{-beta}) -> X^{-nu}."""
    rs = g.rs
    basis = tuple(sorted(r for r in rs.roots if g.degree(r) < 0))
    a, b = _neg(c.alpha_i), _neg(c.beta)
    pair = (a, b) if basis.index(a) < basis.index(b) else (b, a)
    sign = 1 if pair == (a, b) else -1
    val = AlgebraElement.root_vector(_neg(c.nu), sign)
    degrees = {r: g.degree(r) for r in basis}
    return Cochain2(basis, {pair: val}, rs.rank, degrees, g)


def deform(
    t: StructureTable,
    g: ParabolicGrading,
    c: HarmonicComponent | Sequence[HarmonicComponent],
    real_form: RealFormDescriptor | None = None,
) -> DeformedAlgebra:
    """Deform the bracket of g_- by the lowest weight vectors of ``c``.

    Raises ``NonRegularComponent`` for components of homogeneity <= 0 and
    ``ImageNotInGMinus`` when X^{-nu} is not in g_-.  The Jacobi identity of
    the result is checked on every basis triple.
    """
    comps = (c,) if isinstance(c, HarmonicComponent) else tuple(c)
    if not comps:
        raise ConstructionError("at least one component is required")
    values: dict = {}
    basis = None
    for comp in comps:
        if comp.homogeneity < 1:
            raise NonRegularComponent(f"component {comp} has homogeneity {comp.homogeneity}")
        if ht(comp.nu, g.xi) < 1:
            raise ImageNotInGMinus(f"component {comp}: the image X^-nu lies outside g_-")
        lw = lowest_weight_cochain(comp, g)
        basis = lw.basis
        for p, v in lw.values.items():
            values[p] = values[p] + v if p in values else v
    degrees = {r: g.degree(r) for r in basis}
    phi = Cochain2(basis, values, g.rs.rank, degrees, g)
    d = DeformedAlgebra(g, t, comps, phi, real_form)
    bad = jacobi_failures(d)
    if bad:
        raise ConstructionError(f"deformed bracket violates the Jacobi identity on {len(bad)} triples")
    return d


def jacobi_failures(d: DeformedAlgebra) -> list[tuple]:
    out = []
    vec = {r: AlgebraElement.root_vector(r) for r in d.basis}
    for a, b, c in itertools.combinations(d.basis, 3):
        x, y, z = vec[a], vec[b], vec[c]
        j = d.bracket(d.bracket(x, y), z) + d.bracket(d.bracket(y, z), x) + d.bracket(d.bracket(z, x), y)
        if not j.is_zero():
            out.append((a, b, c))
    return out


# -- annihilators ---------------------------------------------------------
def act_on_cochain(x: AlgebraElement, phi: Cochain2, t: StructureTable) -> Cochain2:
    """(X.phi)(u, v) = [X, phi(u, v)] - phi([X, u], v) - phi(u, [X, v])."""
    basis = phi.basis
    vec = {r: AlgebraElement.root_vector(r) for r in basis}
    moved = {r: bracket(x, vec[r], t) for r in basis}
    values = {}
    for a, b in itertools.combinations(basis, 2):
        v = bracket(x, phi(a, b), t)
        v = v - phi.evaluate(moved[a].roots, {b: 1}) - phi.evaluate({a: 1}, moved[b].roots)
        values[(a, b)] = v
    return Cochain2(basis, values, phi.rank, phi.arg_degrees, phi.grading)


def _coords(x: AlgebraElement, roots: Sequence[Root], with_cartan: bool) -> list:
    out = [x.coefficient(r) for r in roots]
    if with_cartan:
        out += list(x.cartan)
    return out


def _graded_basis(g: ParabolicGrading, i: int) -> list[AlgebraElement]:
    roots = sorted(r for r in g.rs.roots if g.degree(r) == i)
    out = [AlgebraElement.root_vector(r) for r in roots]
    if i == 0:
        out = [AlgebraElement.coroot(k, g.rs.rank) for k in range(1, g.rs.rank + 1)] + out
    return out


def _combine(basis: Sequence[AlgebraElement], coeffs: Sequence) -> AlgebraElement:
    out = AlgebraElement.zero(basis[0].rank)
    for b, c in zip(basis, coeffs):
        if c != 0:
            out = out + b.scale(c)
    return out


@dataclass
class AnnihilatorTower:
    a0: list
    a_plus: list  # a_plus[i-1] is a basis of a_i
    dims: list

    @property
    def dim_a0(self) -> int:
        return self.dims[0]

    @property
    def dim_a_plus(self) -> int:
        return sum(self.dims[1:])


def annihilator_tower(d: DeformedAlgebra | Cochain2, t: StructureTable | None = None) -> AnnihilatorTower:
    """a_0 = {X in g_0 : X.phi = 0} and a_i = {X in g_i : [X, g_-1] in a_{i-1}}."""
    phi = d.insertion if isinstance(d, DeformedAlgebra) else d
    t = t or (d.table if isinstance(d, DeformedAlgebra) else None)
    g = phi.grading
    if t is None or g is None:
        raise ConstructionError("annihilator tower needs a structure table and a grading")
    rs = g.rs
    all_roots = sorted(rs.roots)
    g0 = _graded_basis(g, 0)
    rows: list[list] = []
    columns = [act_on_cochain(x, phi, t) for x in g0]
    pairs = list(itertools.combinations(phi.basis, 2))
    for a, b in pairs:
        vecs = [_coords(col(a, b), all_roots, True) for col in columns]
        for coord in range(len(all_roots) + rs.rank):
            row = [v[coord] for v in vecs]
            if any(x != 0 for x in row):
                rows.append(row)
    kernel = nullspace(rows, len(g0)) if rows else [[Fraction(int(i == j)) for j in range(len(g0))] for i in range(len(g0))]
    a_prev = [_combine(g0, v) for v in kernel]
    prev_basis_roots = sorted(r for r in rs.roots if g.degree(r) == 0)
    tower_a0 = a_prev
    dims = [len(a_prev)]
    a_plus = []
    g_m1 = _graded_basis(g, -1)
    prev_with_cartan = True
    for i in range(1, g.k + 1):
        gi = _graded_basis(g, i)
        # functionals vanishing on a_{i-1}
        prev_dim = len(prev_basis_roots) + (rs.rank if prev_with_cartan else 0)
        if a_prev:
            spanning = [_coords(x, prev_basis_roots, prev_with_cartan) for x in a_prev]
            funcs = nullspace(spanning, prev_dim)
        else:
            funcs = [[Fraction(int(p == q)) for q in range(prev_dim)] for p in range(prev_dim)]
        rows = []
        brackets = {id(y): [_coords(bracket(x, y, t), prev_basis_roots, prev_with_cartan) for x in gi] for y in g_m1}
        for y in g_m1:
            bx = brackets[id(y)]
            for f in funcs:
                row = [simplify(sum((fc * v for fc, v in zip(f, col)), Fraction(0))) for col in bx]
                if any(x != 0 for x in row):
                    rows.append(row)
        kernel = nullspace(rows, len(gi)) if rows else [[Fraction(int(p == q)) for q in range(len(gi))] for p in range(len(gi))]
        a_i = [_combine(gi, v) for v in kernel] if gi else []
        a_plus.append(a_i)
        dims.append(len(a_i))
        a_prev = a_i
        prev_basis_roots = sorted(r for r in rs.roots if g.degree(r) == i)
        prev_with_cartan = False
    return AnnihilatorTower(tower_a0, a_plus, dims)


def tower_consistent(tower: AnnihilatorTower, phi: Cochain2, t: StructureTable) -> bool:
    """Re-substitute the computed bases into the defining conditions."""
    g = phi.grading
    if any(not act_on_cochain(x, phi, t).is_zero() for x in tower.a0):
        return False
    levels = [tower.a0] + tower.a_plus
    g_m1 = _graded_basis(g, -1)
    for i in range(1, len(levels)):
        prev = levels[i - 1]
        roots = sorted(r for r in g.rs.roots if g.degree(r) == i - 1)
        cart = i == 1
        span = [_coords(x, roots, cart) for x in prev]
        ncols = len(roots) + (g.rs.rank if cart else 0)
        base_rank = rank(span, ncols) if span else 0
        for x in levels[i]:
            if g.degree(next(iter(x.roots))) != i:
                return False
            for y in g_m1:
                v = _coords(bracket(x, y, t), roots, cart)
                if rank(span + [v], ncols) != base_rank:
                    return False
    return True


# -- central symmetries ---------------------------------------------------
def _weight_orbit(w: Weight, rs: RootSystem) -> list[Weight]:
    seen = {tuple(w.coords)}
    todo = [w]
    while todo:
        x = todo.pop()
        for i in range(1, rs.rank + 1):
            y = reflect(x, i, rs)
            key = tuple(y.coords)
            if key not in seen:
                seen.add(key)
                todo.append(y)
    return [Weight(k) for k in sorted(seen)]


@lru_cache(maxsize=None)
def _character_lattice(rs: RootSystem) -> tuple:
    """Z-basis (fundamental-weight coordinates) of the character lattice of
    the matrix group used for split real forms: the span of the weights of
    the defining representation for classical types, all weights otherwise."""
    st = rs.simple_types[0]
    n = rs.rank
    if st.family in "ABCD":
        omega1 = Weight(tuple(Fraction(int(k == 0)) for k in range(n)))
        gens = [tuple(int(c) for c in w.coords) for w in _weight_orbit(omega1, rs)]
    else:
        gens = [tuple(int(k == j) for k in range(n)) for j in range(n)]
    return tuple(lattice_hnf(gens))


def inner_realizable(rf: RealFormDescriptor | None, j: JAction, rs: RootSystem) -> bool:
    """Whether s_J is realised by a real element of the maximal split torus.

    Only split real forms are constrained: the phases (all in {0, 2}) must
    come from a sign character of the group's character lattice.  Complex
    forms and non-split real forms are accepted as they are.
    """
    if rf is not None and (rf.is_complex or not rf.is_split):
        return True
    if len(rs.simple_types) != 1:
        return True
    if j.order == 4:
        return False
    basis = _character_lattice(rs)
    n = rs.rank
    # coordinates of each simple root in the lattice basis
    cols = [list(b) for b in basis]
    coords = []
    for jdx in range(n):
        target = [Fraction(rs.cartan[jdx][k]) for k in range(n)]
        coords.append([int(c) for c in _solve_in_span(cols, target)])
    pm = j.phase_map
    want = [pm.get(k + 1, 0) // 2 for k in range(n)]
    for chi in itertools.product((0, 1), repeat=len(basis)):
        if all(sum(m * c for m, c in zip(coords[r], chi)) % 2 == want[r] for r in range(n)):
            return True
    return False


@dataclass
class CentralSolutions:
    xi: tuple
    order2: list
    order4: list
    parametric: list  # HNF basis of exponent tuples, one entry per orbit representative
    orbit_nodes: tuple

    @property
    def finite(self) -> list:
        return self.order2 + self.order4

    def generators(self) -> list[JAction]:
        """A small generating set of the finite solution group."""
        if not self.finite:
            return []
        ident = JAction(self.xi, (0,) * len(self.xi), self.finite[0].display)
        group = {ident}
        gens = []
        for j in sorted(self.finite, key=lambda a: (a.order, a.phases)):
            if j in group:
                continue
            gens.append(j)
            frontier = list(group)
            while frontier:
                nxt = []
                for a in frontier:
                    for b in gens:
                        c = a.compose(b)
                        if c not in group:
                            group.add(c)
                            nxt.append(c)
                frontier = nxt
        return gens

    def parametric_strings(self) -> list[str]:
        return ["(" + ",".join(f"a^{e}" for e in v) + ")" for v in self.parametric]


def central_symmetry_solutions(d: DeformedAlgebra, allow_outer: bool = False) -> CentralSolutions:
    """Central elements of G_0 acting trivially on the inserted cochain.

    Finite-order solutions are the admissible actions J of the real form
    with eigenphase 0 on every inserted component, restricted to those
    realised inside the group unless ``allow_outer`` is set.  The
    parametric family is the integer kernel of the Xi-coefficient vectors,
    with one parameter per conjugation orbit of Xi.
    """
    g = d.base
    rs = g.rs
    rf = d.real_form
    xi = tuple(g.xi)
    sigma = rf.sigma if rf is not None else tuple(range(1, rs.rank + 1))
    reps = tuple(sorted({min(k, sigma[k - 1]) for k in xi}))
    rows = []
    for comp in d.components:
        v = comp.coefficient_vector
        row = [0] * len(reps)
        for k in xi:
            row[reps.index(min(k, sigma[k - 1]))] += v[k - 1]
        rows.append(row)
    kern = integer_kernel(rows, len(reps))
    param = lattice_hnf(kern) if kern else []
    if rf is not None:
        cands = admissible_j(rf, xi, USUAL) + admissible_j(rf, xi, PARA) + admissible_j(rf, xi, COMPLEX)
    else:
        cands = [JAction(xi, p) for p in itertools.product((0, 2), repeat=len(xi)) if any(p)]
    ok = []
    for j in cands:
        if all(eigenphase(j, comp) == 0 for comp in d.components):
            if allow_outer or inner_realizable(rf, j, rs):
                ok.append(j)
    order2 = [j for j in ok if j.order == 2]
    order4 = [j for j in ok if j.order == 4]
    return CentralSolutions(xi, order2, order4, param, reps)


# -- Baker-Campbell-Hausdorff ---------------------------------------------
@lru_cache(maxsize=None)
def dynkin_coefficients(n: int) -> dict:
    """Coefficient of each right-nested letter word of length <= n in Dynkin's BCH series."""
    coeffs: dict = defaultdict(Fraction)

    def blocks(remaining: int):
        if remaining == 0:
            yield ()
            return
        for r in range(remaining + 1):
            for s in range(remaining - r + 1):
                if r + s == 0:
                    continue
                for tail in blocks(remaining - r - s):
                    yield ((r, s),) + tail

    for total in range(1, n + 1):
        for bl in blocks(total):
            m = len(bl)
            word = "".join("x" * r + "y" * s for r, s in bl)
            denom = m * total
            for r, s in bl:
                denom *= math.factorial(r) * math.factorial(s)
            coeffs[word] += Fraction((-1) ** (m - 1), denom)
    return {w: c for w, c in coeffs.items() if c != 0}


def _in_p_plus(x: AlgebraElement, g: ParabolicGrading) -> bool:
    return not any(x.cartan) and all(g.degree(r) >= 1 for r in x.roots)


def bch(y1: AlgebraElement, y2: AlgebraElement, g: ParabolicGrading, t: StructureTable) -> AlgebraElement:
    """log(exp(y1) exp(y2)) for y1, y2 in p_+ (the series stops at depth k)."""
    if not (_in_p_plus(y1, g) and _in_p_plus(y2, g)):
        raise ConstructionError("bch is only defined on p_+")
    letters = {"x": y1, "y": y2}
    out = AlgebraElement.zero(g.rs.rank)
    cache: dict = {}

    def nested(word: str) -> AlgebraElement:
        if word in cache:
            return cache[word]
        if len(word) == 1:
            v = letters[word]
        else:
            v = bracket(letters[word[0]], nested(word[1:]), t)
        cache[word] = v
        return v

    for word, c in sorted(dynkin_coefficients(g.k).items()):
        v = nested(word)
        if not v.is_zero():
            out = out + v.scale(c)
    return out


# -- normal forms in P ----------------------------------------------------
def adjoint_phase(s: JAction, x: AlgebraElement, power: int = 1) -> AlgebraElement:
    """Ad(s)^power applied to x (root vectors scale by i^(power*phase))."""
    roots = {r: c * I_POWERS[(power * s.phase_of(r)) % 4] for r, c in x.roots.items()}
    return AlgebraElement(roots, x.cartan)


def conjugate(s: JAction, z: AlgebraElement, y: AlgebraElement, g: ParabolicGrading, t: StructureTable) -> AlgebraElement:
    """W with exp(-y) s exp(z) exp(y) = s exp(W)."""
    left = -adjoint_phase(s, y, -1)
    return bch(bch(left, z, g, t), y, g, t)


def reduce_with_word(s: JAction, z: AlgebraElement, g: ParabolicGrading, t: StructureTable) -> tuple[AlgebraElement, list]:
    """Reduce s exp(z) to s exp(z_f) with z_f fixed by Ad(s).

    Works degree by degree: the part of z of degree d not fixed by Ad(s) is
    removed by conjugating with exp(Y), Y = -(1 - Ad(s)^-1)^-1 of that part.
    Returns z_f and the list of Y used, in order.
    """
    if not _in_p_plus(z, g):
        raise ConstructionError("reduce_representative needs z in p_+")
    word = []
    cur = z
    for d in range(1, g.k + 1):
        moving = {r: c for r, c in cur.roots.items() if g.degree(r) == d and s.phase_of(r) != 0}
        if not moving:
            continue
        y = AlgebraElement(
            {r: -c / (QI(1) - I_POWERS[(-s.phase_of(r)) % 4]) for r, c in moving.items()},
            rank=g.rs.rank,
        )
        word.append(y)
        cur = conjugate(s, cur, y, g, t)
    return cur, word


def reduce_representative(s: JAction, z: AlgebraElement, g: ParabolicGrading, t: StructureTable) -> AlgebraElement:
    return reduce_with_word(s, z, g, t)[0]


def symmetry_membership_order2(s: JAction, z: AlgebraElement, g: ParabolicGrading) -> bool:
    """Whether s exp(z) lies in the order-two family of s: z must live on the
    -1 eigenspace of Ad(s) inside p_+."""
    if s.order != 2:
        raise ConstructionError(f"{s} is not of order two")
    if not _in_p_plus(z, g):
        return False
    return all(s.phase_of(r) == 2 for r in z.roots)


__all__ = [
    "AnnihilatorTower",
    "BracketAlgebra",
    "CentralSolutions",
    "Cochain2",
    "ConstructionError",
    "DeformedAlgebra",
    "ImageNotInGMinus",
    "NonRegularComponent",
    "act_on_cochain",
    "annihilator_tower",
    "bch",
    "central_symmetry_solutions",
    "conjugate",
    "deform",
    "dynkin_coefficients",
    "extension_curvature",
    "from_matrix",
    "inner_realizable",
    "jacobi_failures",
    "lowest_weight_cochain",
    "matrix_realization",
    "reduce_representative",
    "reduce_with_word",
    "symmetry_membership_order2",
    "to_matrix",
    "tower_consistent",
]
