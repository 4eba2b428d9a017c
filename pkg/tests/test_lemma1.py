from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from conftest import product_one_triples
from ineqforge.lemma1 import (SECTION_HIGH, SECTION_LOW, lagrange_stationarity_check,
                              lemma1_minimize, lemma1_value, section_g, section_h,
                              sphere_section_check)
from ineqforge.reduction import LEMMA1_POLY


def test_values():
    assert lemma1_value(1, 1, 1) == 0
    assert lemma1_value(Fraction(2), Fraction(3), Fraction(1, 6)) == Fraction(7, 2) + Fraction(1, 36)
    assert lemma1_value(Fraction(2), Fraction(2), Fraction(1, 4)) == Fraction(21, 16)


@given(product_one_triples())
def test_nonnegative_on_surface(pt):
    v = lemma1_value(*pt)
    assert v >= 0
    assert v == LEMMA1_POLY.evaluate(pt)


def test_minimize():
    rep = lemma1_minimize(starts=50)
    assert abs(rep.extremum) <= 1e-8
    assert max(abs(v - 1) for v in rep.argpoint) <= 1e-4
    assert lemma1_value(*rep.argpoint) == pytest.approx(rep.extremum, abs=1e-14)


def test_stationarity_certificate():
    c = lagrange_stationarity_check()
    assert c.ok
    assert c.g_prime_root == Fraction(15, 16)
    assert c.g_min == Fraction(15893, 16384)
    # the multiplier as literally printed gives a different polynomial
    assert c.printed_multiplier_poly != c.expected


def test_sphere_section():
    s = sphere_section_check(10_000)
    assert s.ok
    assert s.g_at_1 == s.h_at_1 == Fraction(1, 2)
    assert s.h_at_ends == 0 and s.g_at_high > 0
    assert s.g_increasing_above_1
    # h peaks at k = 3/2, so it is not decreasing on all of k > 1
    assert not s.h_decreasing_above_1 and s.h_decreasing_above_3_2


def test_section_functions_at_endpoints():
    assert section_h(np.array([SECTION_LOW, SECTION_HIGH])) == pytest.approx([0, 0], abs=1e-12)
    assert section_g(1.0) == 0.5
