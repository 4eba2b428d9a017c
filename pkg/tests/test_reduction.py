from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import GOLDEN, product_one_triples
from ineqforge.errors import NotSymmetricError
from ineqforge.poly import MultiPoly, SymPoly
from ineqforge.reduction import (K1, LEMMA1_POLY, Equivalence, clear_denominators,
                                 equivalence_check, k1_decompose, lemma3_numeric,
                                 lemma3_transform, proposition_identity, reduce_member,
                                 slack_polynomial, substitute_product_one, symmetric_reduce)
from ineqforge.scalar import D_IDS, eval_sum, get_member

x, y, z = MultiPoly.gens()


def _golden(name):
    return (GOLDEN / name).read_text().strip()


# The expansion of the cleared D1 form as printed in the source material,
# transcribed term by term: (coefficient, (deg x, deg y, deg z)).
PRINTED_D1 = [
    (-3, (0, 0, 0)), (3, (1, 0, 0)), (-2, (2, 0, 0)), (3, (0, 1, 0)), (-3, (1, 1, 0)),
    (2, (2, 1, 0)), (-2, (0, 2, 0)), (2, (1, 2, 0)), (-1, (2, 2, 0)), (3, (0, 0, 1)),
    (-3, (1, 0, 1)), (2, (2, 0, 1)), (-3, (0, 1, 1)), (3, (1, 1, 1)), (-2, (2, 1, 1)),
    (2, (0, 2, 1)), (-2, (1, 2, 1)), (1, (2, 2, 1)), (-2, (0, 0, 2)), (2, (1, 0, 2)),
    (-1, (2, 0, 2)), (2, (0, 1, 2)), (-2, (1, 1, 2)), (1, (2, 1, 2)), (-1, (0, 2, 2)),
    (1, (1, 2, 2)),
]


def test_d1_cleared_matches_printed_expansion():
    p = clear_denominators("D1")
    assert p == MultiPoly({e: c for c, e in PRINTED_D1})
    assert len(p.terms) == 26
    assert p.coefficient((0, 0, 0)) == -3 and p.coefficient((1, 2, 2)) == 1


def test_goldens():
    tr = reduce_member("D1")
    assert str(tr.cleared) == _golden("d1_cleared.txt")
    assert str(tr.reduced) == _golden("d1_symmetric.txt")
    assert str(tr.slack) == _golden("k1.txt")
    assert tr.slack == K1


@pytest.mark.parametrize("mid", D_IDS)
@given(pt=product_one_triples())
def test_cleared_form_sign_agrees_with_sum(mid, pt):
    m = get_member(mid)
    # denominators are positive, so the cleared value has the sign of sum - bound
    v = clear_denominators(m).evaluate(pt)
    d = eval_sum(m, pt) - m.bound
    assert (v > 0) == (d > 0) and (v == 0) == (d == 0)


@pytest.mark.parametrize("mid", D_IDS)
def test_reduction_roundtrip(mid):
    tr = reduce_member(mid)
    assert tr.reduced.expand() == tr.cleared


@given(st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3), st.integers(-4, 4), max_size=4))
def test_symmetrized_polynomials_reduce(terms):
    p = MultiPoly(terms)
    sym = sum((p.permute(s) for s in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]),
              MultiPoly.constant(0))
    assert symmetric_reduce(sym).expand() == sym


def test_not_symmetric_has_witness():
    with pytest.raises(NotSymmetricError) as ei:
        symmetric_reduce(x + 2 * y)
    assert ei.value.permutation is not None and ei.value.point is not None


def test_constant_reduces_to_itself():
    assert substitute_product_one(5 * SymPoly.var(2) ** 2) == SymPoly.constant(5)


def test_k1_decomposition():
    cert = k1_decompose()
    assert cert.ok
    assert cert.expanded_remainder == LEMMA1_POLY
    assert LEMMA1_POLY.evaluate((2, 3, Fraction(1, 6))) == Fraction(7, 2) + Fraction(1, 36)


@pytest.mark.parametrize("k", [Fraction(1), Fraction(2), Fraction(-7, 3), Fraction(5, 2)])
@pytest.mark.parametrize("variant", ["P1", "P2"])
def test_proposition_identities(k, variant):
    assert proposition_identity(k, variant).is_zero()


@pytest.mark.parametrize("variant", ["SWAP", "SQUARE"])
def test_lemma3_certificates(variant):
    assert lemma3_transform(variant).ok


@pytest.mark.parametrize("variant", ["SWAP", "SQUARE"])
@given(pt=product_one_triples())
def test_lemma3_exact_points(variant, pt):
    p2, q2, tp, tq = lemma3_numeric(variant, pt)
    assert (p2, q2) == (tp, tq)


def test_equivalences():
    assert equivalence_check("D1", "M2").status is Equivalence.EQUIVALENT
    assert equivalence_check("D1", "M3").transform == "reciprocal"
    assert equivalence_check("D1", "M1C").status is Equivalence.EQUIVALENT
    assert equivalence_check("D1", "M4")
    assert equivalence_check("D1", "M5")
    assert not equivalence_check("D1", "D4")


def test_printed_m1_not_equivalent():
    res = equivalence_check("D1", "M1")
    assert res.status is Equivalence.NOT_EQUIVALENT
    assert res.witness == (2, 2, Fraction(1, 4))
    assert res.values[1] == Fraction(38, 21)


def test_slack_orientation():
    # LE members: slack = -(cleared form)
    assert slack_polynomial("D1", reduce_terms=False) == -clear_denominators("D1")
    assert slack_polynomial("D5", reduce_terms=False) == clear_denominators("D5")
