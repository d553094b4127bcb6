import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import nil_exp, smatrix, unipotent_log
from parasym._exact import QI
from parasym.chevalley import AlgebraElement, build_structure_table
from parasym.construct import (
    BracketAlgebra,
    ConstructionError,
    ImageNotInGMinus,
    NonRegularComponent,
    act_on_cochain,
    annihilator_tower,
    bch,
    central_symmetry_solutions,
    conjugate,
    deform,
    dynkin_coefficients,
    extension_curvature,
    inner_realizable,
    lowest_weight_cochain,
    matrix_realization,
    reduce_with_word,
    symmetry_membership_order2,
    to_matrix,
    tower_consistent,
)
from parasym.golden import extension_data
from parasym.kostant import enumerate_components
from parasym.parabolic import grade
from parasym.realform import parse_form
from parasym.rootsys import build_root_system
from parasym.symmetry import JAction


def setting(name, xi):
    rs = build_root_system([name])
    return rs, grade(rs, xi), build_structure_table(rs)


def random_plus(rng, g, rs, gaussian=False):
    roots = {}
    for r in rs.roots:
        if g.degree(r) > 0 and rng.random() < 0.7:
            c = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
            roots[r] = QI(c, Fraction(rng.randint(-3, 3), 2)) if gaussian else c
    return AlgebraElement(roots, rank=rs.rank)


def test_dynkin_series_low_order():
    c = dynkin_coefficients(3)
    assert c["x"] == c["y"] == 1
    # [x,y] and [y,x] together give the familiar 1/2 [x,y]
    assert c["xy"] - c["yx"] == Fraction(1, 2)
    assert "xx" not in c


@pytest.mark.parametrize("name, xi", [("A3", (1, 2, 3)), ("A4", (2, 3)), ("A4", (1, 2, 3, 4))])
def test_bch_matches_matrix_logarithm(name, xi):
    rs, g, t = setting(name, xi)
    real = matrix_realization(t)
    rng = random.Random(7)
    for _ in range(15):
        x, y = random_plus(rng, g, rs), random_plus(rng, g, rs)
        want = unipotent_log(nil_exp(smatrix(to_matrix(x, real))) * nil_exp(smatrix(to_matrix(y, real))))
        assert smatrix(to_matrix(bch(x, y, g, t), real)) == want


def test_bch_rejects_non_nilpotent_input():
    rs, g, t = setting("A2", (1, 2))
    with pytest.raises(ConstructionError):
        bch(AlgebraElement.coroot(1, 2), AlgebraElement.zero(2), g, t)


def _phase_matrix(s, n):
    # diagonal d with d_a / d_b = i^(phase of e_a - e_b)
    entries, acc = [sympy.Integer(1)], 0
    for k in range(1, n + 1):
        acc += s.phase_map.get(k, 0)
        entries.append(sympy.I ** (-acc))
    return sympy.diag(*entries)


@pytest.mark.parametrize("phases", [(2, 0, 2), (1, 3, 1), (2, 2, 2), (0, 1, 0)])
def test_conjugation_formula_against_matrices(phases):
    rs, g, t = setting("A3", (1, 2, 3))
    real = matrix_realization(t)
    s = JAction((1, 2, 3), phases)
    smat = _phase_matrix(s, 3)
    rng = random.Random(sum(phases))
    for _ in range(5):
        z, y = random_plus(rng, g, rs, True), random_plus(rng, g, rs, True)
        w = conjugate(s, z, y, g, t)
        ey = nil_exp(smatrix(to_matrix(y, real)))
        lhs = ey.inv() * smat * nil_exp(smatrix(to_matrix(z, real))) * ey
        rhs = smat * nil_exp(smatrix(to_matrix(w, real)))
        assert (lhs - rhs).applyfunc(sympy.expand).is_zero_matrix


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([(2, 0, 2), (0, 2, 0), (1, 3, 1), (3, 3, 3)]))
def test_reduction_lands_in_the_fixed_subalgebra(seed, phases):
    rs, g, t = setting("A3", (1, 2, 3))
    s = JAction((1, 2, 3), phases)
    z = random_plus(random.Random(seed), g, rs, True)
    zf, _ = reduce_with_word(s, z, g, t)
    assert all(s.phase_of(r) == 0 and g.degree(r) > 0 for r in zf.roots)


def test_order_two_membership():
    rs, g, t = setting("A3", (1, 2, 3))
    s = JAction((1, 2, 3), (2, 2, 2))
    odd = AlgebraElement({(1, 0, 0): 1, (1, 1, 1): 2}, rank=3)
    assert symmetry_membership_order2(s, odd, g)
    assert not symmetry_membership_order2(s, AlgebraElement({(1, 1, 0): 1}, rank=3), g)
    with pytest.raises(ConstructionError):
        symmetry_membership_order2(JAction((1, 2, 3), (1, 1, 1)), odd, g)


def test_lowest_weight_cochain_has_component_homogeneity():
    rs, g, t = setting("A3", (1, 2, 3))
    for c in enumerate_components(rs, g):
        if c.homogeneity >= 1 and g.degree(c.nu) >= 1:
            phi = lowest_weight_cochain(c, g)
            assert phi.homogeneity_profile == (c.homogeneity,)
            a, b = phi.support()[0]
            assert phi(a, b) == -phi(b, a)


def test_cartan_acts_on_lowest_weight_cochain_by_its_weight():
    rs, g, t = setting("A3", (1, 2, 3))
    c = enumerate_components(rs, g).find(2, 1)
    phi = lowest_weight_cochain(c, g)
    for i in range(1, 4):
        h = AlgebraElement.coroot(i, 3)
        acted = act_on_cochain(h, phi, t)
        weight = c.mu_tilde.coords[i - 1]
        assert acted.values == phi.scale(weight).values or acted.values == phi.scale(-weight).values


def test_refusals():
    rs, g, t = setting("A3", (1,))
    c = enumerate_components(rs, g).find(1, 2)
    with pytest.raises(ImageNotInGMinus):
        deform(t, g, c)
    rs, g, t = setting("G2", (1, 2))
    bad = enumerate_components(rs, g).find(2, 1)
    with pytest.raises(NonRegularComponent):
        deform(t, g, bad)
    with pytest.raises(ConstructionError):
        deform(t, g, [])


def test_tower_is_self_consistent_for_every_deformable_component_of_a4():
    rs, g, t = setting("A4", (1, 2, 3, 4))
    rf = parse_form("sl(5,R)")
    count = 0
    for c in enumerate_components(rs, g):
        try:
            d = deform(t, g, c, rf)
        except (ImageNotInGMinus, NonRegularComponent):
            continue
        tower = annihilator_tower(d)
        assert tower_consistent(tower, d.insertion, t)
        count += 1
    assert count > 0


def test_inner_realizability_on_sp8():
    rf = parse_form("sp(8,R)")
    rs = rf.root_system
    assert inner_realizable(rf, JAction((1, 2, 4), (0, 2, 0)), rs)
    assert not inner_realizable(rf, JAction((1, 2, 4), (2, 2, 2)), rs)
    assert inner_realizable(parse_form("su(2,2)"), JAction((1, 3), (2, 2)), parse_form("su(2,2)").root_system)


def test_sl5_generators():
    rf = parse_form("sl(5,R)")
    rs = rf.root_system
    g = grade(rs, (2, 3))
    cs = enumerate_components(rs, g)
    d = deform(build_structure_table(rs), g, [cs.find(2, 1), cs.find(3, 2)], rf)
    sol = central_symmetry_solutions(d)
    assert [str(j) for j in sol.generators()] == ["(-,+)"]
    assert sol.parametric == []


def test_extension_requires_bijective_projection():
    k, alpha, table, g = extension_data(2)
    with pytest.raises(ConstructionError):
        extension_curvature(alpha[:2], k, table, g)
    with pytest.raises(ConstructionError):
        extension_curvature([alpha[0], alpha[0], alpha[2]], k, table, g)


def test_bracket_algebra_from_matrices_so3():
    e1 = [[0, 0, 0], [0, 0, -1], [0, 1, 0]]
    e2 = [[0, 0, 1], [0, 0, 0], [-1, 0, 0]]
    e3 = [[0, -1, 0], [1, 0, 0], [0, 0, 0]]
    k = BracketAlgebra.from_matrices([e1, e2, e3])
    assert k.bracket_basis(0, 1) == {2: 1}
    assert k.bracket_basis(2, 1) == {0: -1}
