from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given

from ineqforge import upoly

small = st.integers(-9, 9)
polys = st.lists(small, min_size=1, max_size=6).map(upoly.as_poly)
points = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 7))


def test_as_poly_strips_leading_zeros():
    assert upoly.as_poly([0, 0, 1, 2]) == (1, 2)
    assert upoly.degree(upoly.as_poly([0, 0])) == -1


def test_evaluate_keeps_fraction_type():
    v = upoly.evaluate((2, -3, 0, 2), Fraction(1, 2))
    assert v == Fraction(3, 2) and isinstance(v, Fraction)


@given(polys, polys, points)
def test_mul_is_evaluation_homomorphism(p, q, x):
    assert upoly.evaluate(upoly.mul(p, q), x) == upoly.evaluate(p, x) * upoly.evaluate(q, x)


@given(polys, polys.filter(bool))
def test_divmod_reconstructs(p, q):
    quo, rem = upoly.divmod_poly(p, q)
    assert upoly.add(upoly.mul(quo, q), rem) == p
    assert upoly.degree(rem) < upoly.degree(q)


def test_gcd_of_shared_factor():
    p = upoly.mul((1, -1), (1, 2))
    q = upoly.mul((1, -1), (1, 5))
    assert upoly.gcd(p, q) == (1, -1)


def test_squarefree_decomposition_multiplicities():
    # (t - 2)^2 (t - 1/4)
    p = upoly.mul(upoly.power((1, -2), 2), (1, Fraction(-1, 4)))
    parts = dict((m, q) for q, m in upoly.squarefree_decomposition(p))
    assert parts[1] == (1, Fraction(-1, 4))
    assert parts[2] == (1, -2)


@given(polys.filter(lambda p: upoly.degree(p) >= 1), points)
def test_derivative_matches_difference_quotient_limit(p, x):
    # exact: p(x + h) - p(x) = h p'(x) + O(h^2); compare via polynomial identity
    h = Fraction(1, 10**12)
    approx = (upoly.evaluate(p, x + h) - upoly.evaluate(p, x)) / h
    assert abs(approx - upoly.evaluate(upoly.derivative(p), x)) < Fraction(1, 10**6)


def test_mobius_maps_interval_to_positive_axis():
    # roots of p in (a, b) correspond to positive roots of the transform
    p = upoly.mul((1, -3), (1, -10))
    assert upoly.sign_variations(upoly.mobius(p, 0, 5)) == 1
    assert upoly.sign_variations(upoly.mobius(p, 4, 9)) == 0


def test_to_string():
    assert upoly.to_string((2, -3, 0, 2)) == "2*x^3 + -3*x^2 + 2"


def test_exact_div_rejects_remainder():
    with pytest.raises(ArithmeticError):
        upoly.exact_div((1, 0, 1), (1, 1))
