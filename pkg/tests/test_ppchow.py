from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oscplanes.ppchow import PPClass, geom_series_inverse, homogeneous_part, pp_mul

A = lambda n, i=1: PPClass.monomial(n, i, 0)  # noqa: E731
B = lambda n, j=1: PPClass.monomial(n, 0, j)  # noqa: E731


def test_unit():
    x = PPClass(3, {(1, 2): 4, (0, 0): Fraction(1, 2)})
    assert pp_mul(x, PPClass.one(3)) == x


def test_truncation():
    assert pp_mul(A(1), A(1)) == PPClass(1)


def test_telescoping():
    left = PPClass.one(2) + A(2)
    right = PPClass.one(2) - A(2) + A(2, 2)
    assert pp_mul(left, right) == PPClass.one(2)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        pp_mul(PPClass.one(2), PPClass.one(3))
    with pytest.raises(ValueError):
        PPClass(2, {(3, 0): 1})


def test_series_small():
    inv = geom_series_inverse(1, 1)
    assert inv == PPClass(1, {(0, 0): 1, (1, 0): -1, (0, 1): -1, (1, 1): 1})
    inv3 = geom_series_inverse(3, 2)
    assert inv3.coefficient(1, 0) == -3 and inv3.coefficient(2, 0) == 9


@pytest.mark.parametrize("d", range(1, 6))
@pytest.mark.parametrize("n", range(1, 7))
def test_series_inverts(d, n):
    factor = pp_mul(PPClass.one(n) + A(n).scale(d), PPClass.one(n) + B(n).scale(d))
    assert pp_mul(geom_series_inverse(d, n), factor) == PPClass.one(n)


@pytest.mark.parametrize("d", range(1, 6))
@pytest.mark.parametrize("n", range(1, 9))
def test_series_closed_form(d, n):
    inv = geom_series_inverse(d, n)
    closed = PPClass(n, {(i, j): (-d) ** (i + j) for i in range(n + 1) for j in range(n + 1)})
    assert inv == closed
    assert inv.swap() == inv


def test_homogeneous_part():
    x = PPClass(3, {(0, 0): 1, (1, 1): 5, (2, 0): 1})
    assert homogeneous_part(PPClass(3, {(0, 0): 1, (1, 1): 1}), 0) == PPClass.one(3)
    assert homogeneous_part(x, 2) == PPClass(3, {(1, 1): 5, (2, 0): 1})
    assert homogeneous_part(x, 3) == PPClass(3)


terms_st = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-6, 6), max_size=6
)


@settings(max_examples=60, deadline=None)
@given(terms_st, terms_st)
def test_swap_commutes_with_mul(x, y):
    x, y = PPClass(3, x), PPClass(3, y)
    assert pp_mul(x, y).swap() == pp_mul(x.swap(), y.swap())
    assert pp_mul(x, y) == pp_mul(y, x)
