"""Where does the four-variable sum stay nonpositive?

For positive x1..x4 with x1*x2*x3*x4 = 1 the sum of f(x) = (x-1)/(x^2-x+1)
is not always <= 0 (it is 1/57 at (2, 2, 2, 1/8)). This module maps the
sign of that sum: exact classification of single points, streaming scans of
log-spaced grids, and bisection along rays for boundary crossings.

Classification uses rationals only. Grid coordinates are rational
approximations of powers of two (exact at integer exponents), and x4 is
always computed exactly as 1/(x1*x2*x3), so the product constraint holds
exactly for every emitted cell.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian

from .errors import DomainError, GridTooLargeError, NoSignChangeError
from .scalar import rational

MAX_CELLS = 10**7
DEFAULT_WINDOW = (-3, 3)       # log2 of each free coordinate
DEFAULT_RESOLUTION = 97
LIMIT_DEN = 10**6

CSV_HEADER = ("x1", "x2", "x3", "x4", "value_num", "value_den", "class")


class CellClass(str, enum.Enum):
    SATISFIED = "SATISFIED"
    VIOLATED = "VIOLATED"
    EQUALITY = "EQUALITY"

    @classmethod
    def of(cls, value: Fraction) -> "CellClass":
        if value > 0:
            return cls.VIOLATED
        if value < 0:
            return cls.SATISFIED
        return cls.EQUALITY


@dataclass(frozen=True)
class RegionCell:
    free_coords: tuple
    implied_x4: Fraction
    value: Fraction
    cls: CellClass

    @property
    def point(self) -> tuple:
        return (*self.free_coords, self.implied_x4)

    def csv_row(self) -> list[str]:
        return [str(v) for v in self.point] + [
            str(self.value.numerator), str(self.value.denominator), self.cls.value]


def _parts(x: Fraction):
    """Unreduced integer numerator and denominator of f(p/q) = q(p-q)/(p^2-pq+q^2)."""
    p, q = x.numerator, x.denominator
    return q * (p - q), p * p - p * q + q * q


def _exact_sum(xs) -> Fraction:
    num, den = 0, 1
    for x in xs:
        a, b = _parts(x)
        num, den = num * b + a * den, den * b
    return Fraction(num, den)


def classify(x1, x2, x3) -> RegionCell:
    """Exact value and class of the four-term sum at (x1, x2, x3, 1/(x1 x2 x3))."""
    free = tuple(rational(v) for v in (x1, x2, x3))
    if any(v <= 0 for v in free):
        raise DomainError(f"free coordinates must be positive, got {free}")
    x4 = 1 / (free[0] * free[1] * free[2])
    value = _exact_sum((*free, x4))
    return RegionCell(free, x4, value, CellClass.of(value))


def sum_value(point) -> Fraction:
    """Exact sum over any number of coordinates (no constraint imposed)."""
    xs = [rational(v) for v in point]
    if any(v <= 0 for v in xs):
        raise DomainError("coordinates must be positive")
    return _exact_sum(xs)


# ---------------------------------------------------------------------------
# grids


# Named slices as integer exponent matrices: free coordinate i is
# prod_j r_j ** A[i][j] with one grid parameter r_j per column.
SLICES = {
    "full": ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    "symmetric": ((1,), (1,), (1,)),    # x1 = x2 = x3 = s
    "pair": ((1,), (-1,), (0,)),        # x2 = 1/x1, x3 = x4 = 1
}


def pow2(t: Fraction) -> Fraction:
    """2**t, exact for integer t and rounded to a small-denominator rational
    otherwise."""
    t = Fraction(t)
    if t.denominator == 1:
        return Fraction(2) ** int(t)
    return Fraction(2.0 ** float(t)).limit_denominator(LIMIT_DEN)


def grid_axis(lo, hi, resolution: int) -> list[Fraction]:
    """Log2 exponents of one axis; a zero-width window collapses to one point."""
    lo, hi = rational(lo), rational(hi)
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if hi < lo:
        raise ValueError(f"empty window [{lo}, {hi}]")
    if hi == lo:
        return [lo]
    step = (hi - lo) / (resolution - 1)
    return [lo + k * step for k in range(resolution)]


def _slice_matrix(slice_):
    if slice_ is None:
        slice_ = "full"
    if isinstance(slice_, str):
        try:
            return SLICES[slice_]
        except KeyError:
            raise ValueError(f"unknown slice {slice_!r}; choose from {sorted(SLICES)}") from None
    rows = tuple(tuple(int(a) for a in row) for row in slice_)
    if len(rows) != 3 or len({len(r) for r in rows}) != 1:
        raise ValueError("a slice matrix needs three rows of equal length")
    return rows


def grid_size(resolution: int, slice_=None, log_range=DEFAULT_WINDOW) -> int:
    A = _slice_matrix(slice_)
    n_axis = len(grid_axis(*log_range, resolution))
    return n_axis ** len(A[0])


def scan_grid(log_range=DEFAULT_WINDOW, resolution: int = DEFAULT_RESOLUTION, slice_=None):
    """Yield a RegionCell for every grid point, in row-major order.

    ``log_range`` bounds log2 of each grid parameter; ``slice_`` is a name
    from SLICES or an integer exponent matrix.
    """
    A = _slice_matrix(slice_)
    axis = grid_axis(*log_range, resolution)
    m = len(A[0])
    total = len(axis) ** m
    if total > MAX_CELLS:
        raise GridTooLargeError(f"{total} cells exceed the limit of {MAX_CELLS}")
    r = [pow2(t) for t in axis]
    for idx in cartesian(range(len(axis)), repeat=m):
        coords = []
        for row in A:
            v = Fraction(1)
            for j, a in enumerate(row):
                if a:
                    v *= r[idx[j]] ** a
            coords.append(v)
        yield classify(*coords)


@dataclass
class ScanSummary:
    window: tuple
    resolution: int
    slice: object
    counts: dict
    cells: int = 0

    def add(self, cell: RegionCell):
        self.counts[cell.cls.value] += 1
        self.cells += 1

    def to_dict(self):
        lo, hi = self.window
        return {
            "window_log2": [float(lo), float(hi)],
            "window": [2.0 ** float(lo), 2.0 ** float(hi)],
            "resolution": self.resolution,
            "slice": self.slice if isinstance(self.slice, str) else [list(r) for r in self.slice],
            "cells": self.cells,
            "counts": dict(self.counts),
        }


def new_summary(log_range=DEFAULT_WINDOW, resolution=DEFAULT_RESOLUTION, slice_=None) -> ScanSummary:
    return ScanSummary(tuple(log_range), resolution, slice_ or "full",
                       {c.value: 0 for c in CellClass})


def summarize(cells, log_range=DEFAULT_WINDOW, resolution=DEFAULT_RESOLUTION, slice_=None) -> ScanSummary:
    s = new_summary(log_range, resolution, slice_)
    for c in cells:
        s.add(c)
    return s


# ---------------------------------------------------------------------------
# rays


@dataclass(frozen=True)
class RayTrace:
    anchor: tuple
    direction: tuple
    bracket: tuple       # (s_lo, s_hi)
    signs: tuple         # exact signs of the sum at the bracket ends
    crossing: float      # s at the reported crossing
    point: tuple         # the crossing point (floats, product exactly 1 before rounding)
    residual: float      # |sum| at the crossing point


def _ray_point(anchor, direction, s: float) -> tuple:
    """Point at parameter s; the last coordinate is fixed by the product so
    the point is exactly on the constraint surface."""
    head = [Fraction(a * math.exp(s * d)) for a, d in zip(anchor[:3], direction[:3])]
    return (*head, 1 / (head[0] * head[1] * head[2]))


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def trace_boundary(anchor, direction, s_max: float = 1.0, samples: int = 64,
                   tol: float = 1e-10) -> RayTrace:
    """Bisect along x(s) = anchor * exp(s * direction) for the first sign
    change of the sum with s in (0, s_max]."""
    anchor = tuple(float(a) for a in anchor)
    direction = tuple(float(d) for d in direction)
    if len(anchor) != 4 or len(direction) != 4:
        raise ValueError("anchor and direction need four entries")
    if any(a <= 0 for a in anchor):
        raise DomainError("anchor must be positive")
    if abs(math.prod(anchor) - 1) > 1e-12:
        raise DomainError(f"anchor product {math.prod(anchor)} is not 1")
    if abs(math.fsum(direction)) > 1e-12:
        raise ValueError("direction must sum to zero in log space")

    def value(s):
        return sum_value(_ray_point(anchor, direction, s))

    grid = [s_max * k / samples for k in range(samples + 1)]
    seen = []
    lo = hi = None
    prev = None
    for s in grid:
        v = value(s)
        seen.append((s, float(v)))
        if prev is not None and _sign(prev[1]) * _sign(v) < 0:
            lo, hi = prev[0], s
            break
        prev = (s, v)
    if lo is None:
        raise NoSignChangeError("the sum keeps one sign along the ray", seen)

    s_lo, s_hi = lo, hi
    sg_lo, sg_hi = _sign(value(lo)), _sign(value(hi))
    while True:
        mid = 0.5 * (s_lo + s_hi)
        if mid in (s_lo, s_hi):
            break
        v = value(mid)
        if v == 0:
            s_lo = s_hi = mid
            break
        if abs(float(v)) <= tol and s_hi - s_lo <= 1e-13:
            break
        if _sign(v) == sg_lo:
            s_lo = mid
        else:
            s_hi = mid
    crossing = 0.5 * (s_lo + s_hi)
    pt = _ray_point(anchor, direction, crossing)
    residual = abs(float(sum_value(pt)))
    return RayTrace(anchor, direction, (s_lo, s_hi), (sg_lo, sg_hi), crossing,
                    tuple(float(v) for v in pt), residual)
