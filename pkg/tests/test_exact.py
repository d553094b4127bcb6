import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from parasym._exact import QI, integer_kernel, lattice_hnf, nullspace, rank, simplify
from parasym._expr import ExprError, evaluate, format_template

small = st.integers(-4, 4)
matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_and_nullspace_agree_with_sympy(rows):
    ncols = len(rows[0])
    m = sympy.Matrix(rows)
    assert rank(rows, ncols) == m.rank()
    ns = nullspace(rows, ncols)
    assert len(ns) == ncols - m.rank()
    for v in ns:
        assert m * sympy.Matrix([sympy.Rational(x.numerator, x.denominator) for x in map(Fraction, v)]) == sympy.zeros(len(rows), 1)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_integer_kernel_is_a_saturated_basis(rows):
    ncols = len(rows[0])
    ker = integer_kernel(rows, ncols)
    assert len(ker) == ncols - sympy.Matrix(rows).rank()
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    if ker:
        # saturated: the gcd of the maximal minors is one
        km = sympy.Matrix(ker)
        minors = [km.extract(list(range(len(ker))), list(cols)).det() for cols in _subsets(ncols, len(ker))]
        assert sympy.gcd_list([abs(x) for x in minors]) == 1


def _subsets(n, k):
    return itertools.combinations(range(n), k)


def test_lattice_hnf_canonical():
    assert lattice_hnf([(2, 4), (1, 3)]) == lattice_hnf([(1, 3), (1, 1)])
    assert lattice_hnf([(-5, -10)]) == [(5, 10)]


def test_gaussian_rationals():
    i = QI(0, 1)
    assert i * i == -1
    assert simplify(QI(3, 0)) == 3 and isinstance(simplify(QI(3, 0)), Fraction)
    assert (QI(1, 1) / QI(1, -1)) == i
    assert QI(2, 3).conjugate() == QI(2, -3)


def test_expressions():
    assert evaluate("n + 1 > 3 and n % 2 == 1", {"n": 3})
    assert evaluate("list(range(1, n, 2))", {"n": 6}) == [1, 3, 5]
    assert format_template("su({p},{q})", {"p": 1, "q": 2}) == "su(1,2)"
    with pytest.raises(ExprError):
        evaluate("__import__('os')", {})
