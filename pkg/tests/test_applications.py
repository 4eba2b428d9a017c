import math
from fractions import Fraction

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given

from ineqforge.applications import (TANGENT_RATIO_INDEX, CubicSpec, TriangleData, bernoulli_residual,
                                    bernoulli_sign, cyclic_eval, power_sum, random_triangle,
                                    run_family_on_triples, triangle_records, triangle_triples,
                                    vieta_roots)
from ineqforge.errors import DegenerateTriangleError, RegimeError, UnsupportedMemberError
from ineqforge.scalar import CYCLIC_IDS, eval_sum_float


def test_equilateral_first_triple():
    t = TriangleData.from_sides(1, 1, 1)
    tr = triangle_triples(t)
    x, y, z = tr[0].values
    assert (x, y, z) == pytest.approx((1 / 6, math.sqrt(3), 2 * math.sqrt(3)), rel=1e-14)
    assert tr[0].accepted
    tan = tr[TANGENT_RATIO_INDEX]
    assert tan.values == pytest.approx((1 / 3,) * 3)
    assert tan.product == pytest.approx(1 / 27)
    assert not tan.accepted and tan.flag == "product_deviation"


def test_right_triangle():
    t = TriangleData.from_sides(3, 4, 5)
    assert max(t.check().values()) < 1e-12
    assert t.r == pytest.approx(1.0) and t.R == pytest.approx(2.5)
    for tr in triangle_triples(t):
        if tr.accepted:
            assert tr.product_residual <= 1e-10
    verdicts = run_family_on_triples(t, "D5")
    assert all(v for v in verdicts if v is not None)


def test_degenerate_triangle():
    with pytest.raises(DegenerateTriangleError):
        TriangleData.from_sides(1, 2, 3)


def test_random_triangles_identities():
    rng = np.random.default_rng(5)
    for _ in range(300):
        t = random_triangle(rng)
        assert max(t.check().values()) < 1e-12
        for tr in triangle_triples(t):
            if tr.index != TANGENT_RATIO_INDEX and tr.flag == "product_deviation":
                pytest.fail(f"triple {tr.index} product {tr.product} for sides {(t.a, t.b, t.c)}")
            if tr.accepted:
                assert eval_sum_float("D1", tr.values) <= 1e-9


def test_records_shape():
    recs = list(triangle_records([(3, 4, 5)], members=("D1",)))
    assert len(recs) == 10
    assert {r["verdict"] for r in recs} <= {"SATISFIED", "REJECTED"}


def test_cyclic_examples():
    r = cyclic_eval(1, 1, 1, "C15")
    assert r.lhs == 0 and r.satisfied
    r = cyclic_eval(2, 1, 1, "C16")
    assert r.lhs == pytest.approx(eval_sum_float("D2", (2, 1, 0.5)), rel=1e-12)
    r = cyclic_eval(1, 2, 4, "C21")
    assert r.lhs <= 2 and r.satisfied
    with pytest.raises(UnsupportedMemberError):
        cyclic_eval(1, 2, 3, "D1")


pos = st.floats(0.01, 100)


@pytest.mark.parametrize("mid", CYCLIC_IDS)
@given(a=pos, b=pos, c=pos)
def test_cyclic_cross_check(mid, a, b, c):
    r = cyclic_eval(a, b, c, mid)
    assert r.mismatch <= 1e-12
    assert r.satisfied


def test_vieta_examples():
    res = vieta_roots(CubicSpec(-3, 3))
    assert res.accepted and res.roots == (1.0, 1.0, 1.0)
    res = vieta_roots(CubicSpec(Fraction(-17, 4), 5))
    assert res.accepted and res.roots == (0.25, 2.0, 2.0)
    res = vieta_roots(CubicSpec(0, 0))
    assert not res.accepted and res.real_roots == 1 and "3 positive required" in res.reason


@given(st.floats(0.05, 20), st.floats(0.05, 20))
def test_vieta_round_trip(x, y):
    z = 1 / (Fraction(x) * Fraction(y))
    res = vieta_roots(CubicSpec.from_roots(x, y, z))
    assert res.accepted
    expect = sorted([x, y, float(z)])
    assert max(abs(a - b) for a, b in zip(res.roots, expect)) <= 1e-8 * max(1.0, max(expect))


def test_bernoulli_examples():
    assert bernoulli_residual(1, 0.3) == 0
    assert bernoulli_residual(4, 0.5) == -0.5
    assert bernoulli_residual(4, 2) == 9


@pytest.mark.parametrize("alpha", [-1, -0.5, 0.25, 0.5, 0.75, 2, 3])
def test_bernoulli_signs_on_log_grid(alpha):
    u = np.logspace(-3, 3, 601)
    r = bernoulli_residual(u, alpha)
    assert np.all(bernoulli_sign(alpha) * r >= -1e-12)


def test_power_sums():
    r = power_sum("D2", 0.5, (1, 1, 1))
    assert r.value == 3 and r.satisfied
    r = power_sum("D2", 0.5, (2, 2, 0.25))
    assert r.value == pytest.approx(2 * (1 / 3) ** 0.5 + (16 / 13) ** 0.5)
    r = power_sum("D5", 2, (1, 1, 1))
    assert r.value == pytest.approx(1 / 3) and r.bound == -1 and r.satisfied
    with pytest.raises(RegimeError):
        power_sum("D6", 1.5, (1, 1, 1))
