from fractions import Fraction

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given

from conftest import positive_rationals, product_one_triples
from ineqforge.errors import DomainError, RegimeError, UnsupportedMemberError
from ineqforge.scalar import (CYCLIC_IDS, D_IDS, MEMBERS, Relation, eval_derivative, eval_sum,
                              eval_sum_float, eval_term, eval_term_float, functional_eq_residual,
                              get_member, pair_sum_closed_form, power_member, unconditional_max)


def test_registry_contents():
    assert set(D_IDS) | set(CYCLIC_IDS) <= set(MEMBERS)
    assert get_member("D5").relation is Relation.GE
    with pytest.raises(UnsupportedMemberError):
        get_member("D8")


@pytest.mark.parametrize("mid, bound", [("D1", 0), ("D2", 3), ("D3", 3), ("D4", 0),
                                        ("D5", 1), ("D6", 1), ("D7", 2)])
def test_equality_at_all_ones(mid, bound):
    assert eval_sum(mid, (1, 1, 1)) == bound


def test_known_values():
    assert eval_term("D1", 2) == Fraction(1, 3)
    assert eval_term("D1", 0) == -1
    assert eval_sum("D1", (2, 2, Fraction(1, 4))) == Fraction(2, 3) + Fraction(-3, 4) / Fraction(13, 16)


def test_printed_m1_pole():
    with pytest.raises(DomainError):
        eval_term("M1", 1)


@given(positive_rationals(1000, 1000))
def test_functional_equation(x):
    assert functional_eq_residual(x) == 0


@given(positive_rationals(1000, 1000))
def test_pair_closed_form_nonpositive(x):
    assert pair_sum_closed_form(x) <= 0


@pytest.mark.parametrize("mid", D_IDS)
@given(pt=product_one_triples())
def test_family_members_hold_exactly(mid, pt):
    m = get_member(mid)
    s = eval_sum(m, pt)
    assert (s <= m.bound) if m.relation is Relation.LE else (s >= m.bound)


@pytest.mark.parametrize("mid", D_IDS + ("M2", "M3"))
@given(x=st.floats(0.01, 50))
def test_float_path_matches_exact(mid, x):
    assert eval_term_float(mid, x) == pytest.approx(float(eval_term(mid, Fraction(x))), rel=1e-13, abs=1e-15)


@pytest.mark.parametrize("mid", D_IDS)
@given(x=st.floats(0.05, 20))
def test_derivative_matches_central_difference(mid, x):
    h = 1e-6 * max(1.0, x)
    fd = (eval_term_float(mid, x + h) - eval_term_float(mid, x - h)) / (2 * h)
    assert eval_derivative(mid, x) == pytest.approx(fd, rel=1e-6, abs=1e-8)


def test_vectorized_eval():
    pts = np.array([[1.0, 1.0, 1.0], [2.0, 2.0, 0.25]])
    vals = eval_term_float("D1", pts).sum(axis=1)
    assert vals[0] == 0 and vals[1] == pytest.approx(float(eval_sum("D1", (2, 2, Fraction(1, 4)))))


def test_cyclic_members_use_ratios():
    assert eval_sum_float("C16", (2, 1, 1)) == pytest.approx(eval_sum_float("D2", (2, 1, 0.5)))


def test_unconditional_max():
    assert unconditional_max("D1") == (2, Fraction(1, 3))
    assert unconditional_max("D6") == (1, Fraction(1, 3))
    assert unconditional_max("D1", (0, 1)) == (1, 0)
    with pytest.raises(UnsupportedMemberError):
        unconditional_max("D2")


def test_power_member_regimes():
    assert power_member("D6", 0.5).bound == 2
    assert power_member("D7", 0.25).bound == Fraction(11, 4)
    assert power_member("D5", 2).relation is Relation.GE
    with pytest.raises(RegimeError):
        power_member("D2", 1.5)
    with pytest.raises(RegimeError):
        power_member("D5", 0.5)
    with pytest.raises(UnsupportedMemberError):
        power_member("D1", 0.5)


def test_power_terms_are_float_only():
    with pytest.raises(UnsupportedMemberError):
        eval_term(power_member("D2", 0.5), 1)
    assert eval_sum_float(power_member("D2", 0.5), (1, 1, 1)) == 3.0
