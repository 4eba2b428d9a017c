from fractions import Fraction
from itertools import permutations
import math

import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import positive_rationals
from ineqforge.errors import DomainError, GridTooLargeError, NoSignChangeError
from ineqforge.region import (CellClass, classify, scan_grid, summarize, sum_value,
                              trace_boundary)
from ineqforge.scalar import eval_sum, pair_sum_closed_form

L2 = math.log(2)


def test_classify_examples():
    assert classify(1, 1, 1).cls is CellClass.EQUALITY
    c = classify(2, 2, 2)
    assert c.value == Fraction(1, 57) and c.cls is CellClass.VIOLATED
    assert c.implied_x4 == Fraction(1, 8)
    c = classify(2, Fraction(1, 2), 1)
    assert c.value == Fraction(-1, 3) == pair_sum_closed_form(2)


def test_zero_coordinate_rejected():
    with pytest.raises(DomainError):
        classify(0, 1, 1)


r = positive_rationals(30, 30)


@given(r, r, r)
def test_matches_generic_exact_path_and_is_permutation_invariant(a, b, c):
    cell = classify(a, b, c)
    assert cell.value == eval_sum("D1", cell.point)
    assert a * b * c * cell.implied_x4 == 1
    for p in permutations(cell.point):
        assert sum_value(p) == cell.value
    assert (cell.value > 0) == (cell.cls is CellClass.VIOLATED)


def test_symmetric_slice_flips_sign():
    cells = list(scan_grid((0, 1), 11, "symmetric"))
    assert len(cells) == 11
    assert cells[0].cls is CellClass.EQUALITY
    s = [float(c.free_coords[0]) for c in cells]
    classes = [c.cls for c in cells]
    assert all(k is CellClass.SATISFIED for v, k in zip(s, classes) if 1 < v < 1.6)
    assert all(k is CellClass.VIOLATED for v, k in zip(s, classes) if v >= 1.7)


def test_pair_slice_never_violated():
    summary = summarize(scan_grid((-3, 3), 25, "pair"))
    assert summary.counts["VIOLATED"] == 0 and summary.counts["EQUALITY"] == 1


def test_degenerate_window():
    cells = list(scan_grid((0, 0), 2))
    assert len(cells) == 1 and cells[0].point == (1, 1, 1, 1)


def test_grid_contains_counterexample_and_order():
    cells = list(scan_grid((-3, 3), 7))
    assert len(cells) == 343
    assert any(c.free_coords == (2, 2, 2) and c.cls is CellClass.VIOLATED for c in cells)
    # row-major: last coordinate varies fastest
    assert cells[0].free_coords == (Fraction(1, 8),) * 3
    assert cells[1].free_coords[2] > cells[0].free_coords[2]


def test_grid_guard():
    with pytest.raises(GridTooLargeError):
        next(scan_grid((-3, 3), 216))


def test_csv_row():
    row = classify(2, 2, 2).csv_row()
    assert row == ["2", "2", "2", "1/8", "1", "57", "VIOLATED"]


def test_trace_symmetric_ray():
    t = trace_boundary((1, 1, 1, 1), (L2, L2, L2, -3 * L2))
    assert 1.5 < t.point[0] < 1.8
    assert t.residual <= 1e-10
    assert t.signs[0] * t.signs[1] < 0
    back = trace_boundary((2, 2, 2, 0.125), (-L2, -L2, -L2, 3 * L2))
    assert max(abs(a - b) for a, b in zip(t.point, back.point)) <= 1e-9


def test_trace_without_sign_change():
    with pytest.raises(NoSignChangeError) as ei:
        trace_boundary((1, 1, 1, 1), (1, -1, 0, 0))
    assert len(ei.value.samples) > 1
    assert all(v <= 0 for _, v in ei.value.samples)


def test_trace_validates_inputs():
    with pytest.raises(ValueError):
        trace_boundary((1, 1, 1, 1), (1, 1, 0, 0))
    with pytest.raises(DomainError):
        trace_boundary((1, 1, 1, 2), (1, -1, 0, 0))
