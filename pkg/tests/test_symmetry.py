import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parasym.kostant import enumerate_components
from parasym.parabolic import grade
from parasym.realform import parse_form
from parasym.symmetry import (
    AT_MOST_ONE,
    COMPLEX,
    PARA,
    POSSIBLY_MANY,
    USUAL,
    JAction,
    SymmetryError,
    admissible_j,
    all_actions,
    classify,
    eigenphase,
    fixed_plus_subalgebra,
    node_involution,
    surviving_components,
    verdict,
)


def labels(row):
    return [rc.label for rc in row.components]


def test_g2_row():
    row = classify(parse_form("g2(2)"), [1])
    assert labels(row) == ["(1,2)"]
    assert row.gamma == ()
    assert row.j_strings() == ["(-)"]


def test_sl4_middle_node():
    row = classify(parse_form("sl(4,R)"), [2])
    assert sorted(labels(row)) == ["(2,1)", "(2,3)"]
    assert row.j_strings() == ["(-)"]


def test_su12_full_flag():
    row = classify(parse_form("su(1,2)"), [1, 2])
    assert labels(row) == ["(1,2)"]
    assert row.j_strings() == ["(-,-)"]


def test_complex_form_labels_use_primes():
    row = classify(parse_form("sl(3,C)"), [1, 2])
    assert any("'" in lab for lab in labels(row))


def test_inadmissible_xi_is_refused():
    with pytest.raises(SymmetryError):
        classify(parse_form("su(1,2)"), [1])


def test_component_restriction():
    row = classify(parse_form("sl(4,R)"), [2], ["(2,1)"])
    assert labels(row) == ["(2,1)"]
    with pytest.raises(SymmetryError):
        classify(parse_form("sl(4,R)"), [2], ["(1,3)"])


def test_action_classes_on_a_split_form():
    rf = parse_form("sl(4,R)")
    assert len(admissible_j(rf, [1, 2, 3], USUAL)) == 1
    # para-complex: every non-constant sign pattern
    assert len(admissible_j(rf, [1, 2, 3], PARA)) == 2 ** 3 - 2
    # complex actions need sigma-paired nodes
    assert admissible_j(rf, [1, 2, 3], COMPLEX) == []


def test_complex_actions_on_a_complex_form_pair_conjugate_nodes():
    rf = parse_form("sl(3,C)")
    js = admissible_j(rf, [1], COMPLEX)
    assert sorted(j.phases for j in js) == [(1, 3), (3, 1)]


def test_unknown_options():
    rf = parse_form("sl(4,R)")
    with pytest.raises(SymmetryError):
        admissible_j(rf, [1], "sideways")
    with pytest.raises(SymmetryError):
        node_involution(rf, "nope")
    with pytest.raises(SymmetryError):
        classify(rf, [1], gamma_mode="nope")
    with pytest.raises(SymmetryError):
        JAction((1, 2), (2,))


def test_verdict_reads_gamma():
    j = JAction((1, 2), (2, 0))
    assert verdict(j, [2]) == AT_MOST_ONE
    assert verdict(j, [1]) == POSSIBLY_MANY


def test_fixed_subalgebra_of_usual_action_is_even_part():
    rf = parse_form("sl(4,R)")
    g = grade(rf.root_system, [1, 2, 3])
    j = JAction((1, 2, 3), (2, 2, 2))
    fixed = fixed_plus_subalgebra(j, g)
    assert fixed == {r for r in rf.root_system.positive_roots if g.degree(r) % 2 == 0}


FORMS = ["sl(4,R)", "sl(5,R)", "su(2,2)", "so(3,4)", "sp(6,R)", "sl(3,C)", "g2(2)"]


@st.composite
def form_and_xi(draw):
    rf = parse_form(draw(st.sampled_from(FORMS)))
    choices = []
    for k in range(1, rf.display_rank + 1):
        for s in itertools.combinations(range(1, rf.display_rank + 1), k):
            try:
                all_actions(rf, s)
            except SymmetryError:
                continue
            choices.append(s)
    return rf, draw(st.sampled_from(choices))


@settings(max_examples=60, deadline=None)
@given(form_and_xi())
def test_eigenphase_is_a_character(data):
    rf, xi = data
    ixi = rf.internal_xi(xi)
    cs = enumerate_components(rf.root_system, grade(rf.root_system, ixi))
    acts = all_actions(rf, xi)
    for a, b in itertools.product(acts, repeat=2):
        ab = a.compose(b)
        for c in cs:
            assert eigenphase(ab, c) == (eigenphase(a, c) + eigenphase(b, c)) % 4


@settings(max_examples=60, deadline=None)
@given(form_and_xi())
def test_classification_keeps_exactly_the_trivially_acting_actions(data):
    rf, xi = data
    row = classify(rf, xi)
    members = [m for rc in row.components for m in rc.members]
    for j in all_actions(rf, xi):
        assert (j in row.j_actions) == (surviving_components(j, members) == members)


@settings(max_examples=40, deadline=None)
@given(form_and_xi())
def test_gamma_modes_and_predicates_run(data):
    rf, xi = data
    a = classify(rf, xi, gamma_mode="restricted")
    assert labels(a) == labels(classify(rf, xi))
    inv = node_involution(rf, "composed")
    ixi = set(rf.internal_xi(xi))
    if {inv[k - 1] for k in ixi} == ixi:
        assert labels(classify(rf, xi, predicate="composed")) == labels(a)
    else:
        with pytest.raises(SymmetryError):
            classify(rf, xi, predicate="composed")
