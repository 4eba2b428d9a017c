from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given

from ineqforge import upoly
from ineqforge.errors import DegeneratePolynomialError
from ineqforge.roots import (count_positive_roots, exact_root_or_none, isolate_positive_roots,
                             isolate_real_roots)

W = Fraction(1, 10**12)


def test_stationarity_sextic_has_one_root_at_one():
    ivs = isolate_positive_roots([2, -3, 0, 0, 3, 0, -2], W)
    assert len(ivs) == 1
    iv = ivs[0]
    assert iv.low <= 1 <= iv.high and iv.width <= W
    assert iv.check()
    assert upoly.evaluate((2, -3, 0, 0, 3, 0, -2), Fraction(1)) == 0


@pytest.mark.parametrize("coeffs", [[2, -3, 0, 2], [2, 0, -1, 2]])
def test_cubics_without_positive_roots(coeffs):
    assert isolate_positive_roots(coeffs, W) == []


def test_double_root_multiplicity():
    # (t - 2)^2 (t - 1/4) = t^3 - 17/4 t^2 + 5 t - 1
    ivs = isolate_positive_roots([1, Fraction(-17, 4), 5, -1], W)
    assert [(iv.exact, iv.multiplicity) for iv in ivs] == [(Fraction(1, 4), 1), (2, 2)]
    assert count_positive_roots([1, Fraction(-17, 4), 5, -1], with_multiplicity=True) == 3


def test_zero_polynomial_rejected():
    with pytest.raises(DegeneratePolynomialError):
        isolate_positive_roots([0, 0], W)


def test_real_roots_include_negative_and_zero():
    # t (t + 1)(t - 3)
    p = upoly.mul(upoly.mul((1, 0), (1, 1)), (1, -3))
    ivs = isolate_real_roots(p, W)
    assert [exact_root_or_none(p, iv) for iv in ivs] == [-1, 0, 3]


def test_irrational_root_bracket():
    ivs = isolate_positive_roots([1, 0, -2], Fraction(1, 10**9))
    (iv,) = ivs
    assert iv.low < Fraction(14142135624, 10**10) and iv.high > Fraction(14142135623, 10**10)
    assert iv.sign_low == -1 and iv.sign_high == 1
    assert exact_root_or_none((1, 0, -2), iv) is None


roots_strategy = st.lists(st.builds(Fraction, st.integers(1, 40), st.integers(1, 9)),
                          min_size=1, max_size=5)


@given(roots_strategy)
def test_count_is_exact_for_products_of_linear_factors(roots):
    p = (Fraction(1),)
    for r in roots:
        p = upoly.mul(p, (1, -r))
    ivs = isolate_positive_roots(p, Fraction(1, 10**6))
    assert len(ivs) == len(set(roots))
    assert sum(iv.multiplicity for iv in ivs) == len(roots)
    for iv in ivs:
        assert iv.width <= Fraction(1, 10**6)
        assert iv.exact is not None or iv.check()
    # brackets are disjoint and sorted
    for a, b in zip(ivs, ivs[1:]):
        assert a.high < b.low or (a.high <= b.low and a.exact != b.exact)
