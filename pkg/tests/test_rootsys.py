from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import count_positive_roots
from parasym.rootsys import (
    RootSystemError,
    SimpleType,
    Weight,
    affine_action,
    apply_word,
    build_root_system,
    dumps,
    loads,
    pairing,
    parse_types,
    reflect,
)

TYPES = ["A1", "A2", "A5", "B2", "B4", "C3", "C5", "D4", "D6", "E6", "E7", "E8", "F4", "G2"]


@pytest.mark.parametrize("name", TYPES)
def test_positive_root_count(name):
    t = SimpleType.parse(name)
    rs = build_root_system([t])
    assert len(rs.positive_roots) == count_positive_roots(t.family, t.rank)
    assert len(rs.roots) == 2 * len(rs.positive_roots)


@pytest.mark.parametrize(
    "name, highest",
    [
        ("B3", (1, 2, 2)),
        ("C3", (2, 2, 1)),
        ("D5", (1, 2, 2, 1, 1)),
        ("G2", (3, 2)),
        ("F4", (2, 3, 4, 2)),
        ("E6", (1, 2, 2, 3, 2, 1)),
        ("E8", (2, 3, 4, 6, 5, 4, 3, 2)),
    ],
)
def test_highest_root_in_bourbaki_numbering(name, highest):
    assert build_root_system([name]).highest_roots == (highest,)


def test_cartan_convention_b2():
    # cartan[i][j] = <alpha_i, alpha_j^vee>; alpha_1 is long in B2
    rs = build_root_system(["B2"])
    assert rs.cartan == ((2, -2), (-1, 2))


def test_g2_short_root_is_first():
    rs = build_root_system(["G2"])
    assert rs.cartan[1][0] == -3


def test_semisimple_sum():
    rs = build_root_system(parse_types("A2+A2"))
    assert rs.rank == 4
    assert len(rs.highest_roots) == 2
    assert rs.factor_of_node == (0, 0, 1, 1)


def test_bad_type_rejected():
    with pytest.raises(RootSystemError):
        SimpleType.parse("D2")
    with pytest.raises(RootSystemError):
        build_root_system([])


def test_serialization_round_trip():
    rs = build_root_system(["F4"])
    assert loads(dumps(rs)) == rs


def test_apply_word_acts_rightmost_first():
    rs = build_root_system(["A3"])
    x = rs.simple_root(2)
    assert apply_word((1, 2), x, rs) == reflect(reflect(x, 2, rs), 1, rs)


def test_affine_action_of_identity_and_simple():
    rs = build_root_system(["A2"])
    lam = Weight((Fraction(1), Fraction(1)))
    assert affine_action((), lam, rs) == lam
    # s_1 . lambda = s_1(lambda + rho) - rho
    assert affine_action((1,), lam, rs) == Weight((Fraction(-3), Fraction(3)))


@st.composite
def root_and_node(draw):
    name = draw(st.sampled_from(TYPES))
    rs = build_root_system([name])
    r = draw(st.sampled_from(rs.roots))
    i = draw(st.integers(1, rs.rank))
    return rs, r, i


@settings(max_examples=200, deadline=None)
@given(root_and_node())
def test_reflection_is_an_involution_preserving_roots(data):
    rs, r, i = data
    s = reflect(r, i, rs)
    assert rs.is_root(s)
    assert reflect(s, i, rs) == r


@settings(max_examples=200, deadline=None)
@given(root_and_node(), st.data())
def test_reflections_preserve_the_inner_product(data, more):
    rs, r, i = data
    q = more.draw(st.sampled_from(rs.roots))
    assert rs.inner(reflect(r, i, rs), reflect(q, i, rs)) == rs.inner(r, q)


@settings(max_examples=100, deadline=None)
@given(root_and_node())
def test_pairing_matches_cartan_on_simple_roots(data):
    rs, _, i = data
    for j in range(1, rs.rank + 1):
        assert pairing(rs.simple_root(j), i, rs) == rs.cartan[j - 1][i - 1]
