"""Three independent checks of the quadratic Klamkin-type inequality

    x^2 + y^2 + z^2 - 3(x + y + z) + 6 >= 0   on   xyz = 1,

with equality only at (1, 1, 1): a direct constrained minimization, the
Lagrange stationarity polynomial on the symmetric slice, and a horizontal
section argument comparing a hyperbola vertex against a circle radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import upoly
from .optimize import (DEFAULT_SEED, DEFAULT_STARTS, DEFAULT_TOL, ConstraintSpec,
                       Objective, OptReport, run_multistart)
from .roots import RootInterval, isolate_positive_roots


def lemma1_value(x, y, z):
    """x^2 + y^2 + z^2 - 3(x + y + z) + 6; exact for Fraction inputs."""
    return x * x + y * y + z * z - 3 * (x + y + z) + 6


def _objective() -> Objective:
    def value(p):
        return math.fsum([v * v - 3 * v for v in p]) + 6.0

    def dx(p):
        return [2 * v - 3 for v in p]

    return Objective("lemma1", value, dx)


def lemma1_minimize(starts: int = DEFAULT_STARTS, seed: int = DEFAULT_SEED,
                    tol: float = DEFAULT_TOL) -> OptReport:
    """Multistart minimum of lemma1_value on {x, y, z > 0, xyz = 1}."""
    return run_multistart(_objective(), ConstraintSpec(3), "INF", starts, seed, tol)


# ---------------------------------------------------------------------------
# first route: Lagrange multipliers on the slice x = y, z = 1/x^2


@dataclass(frozen=True)
class StationarityCertificate:
    multiplier: tuple          # lambda(t) = t * d/dt(t^2 - 3t), the same for every variable
    slice_poly: tuple          # (lambda(x) - lambda(1/x^2)) * x^4
    expected: tuple
    identity_ok: bool
    factorization_ok: bool     # slice_poly == (x^3 - 1)(2x^3 - 3x^2 + 2)
    positive_roots: list       # RootInterval list of slice_poly
    printed_multiplier_poly: tuple  # the same construction from lambda = t^2 - 2t
    g: tuple
    g_prime_root: Fraction
    g_min: Fraction
    derivative_ok: bool        # slice_poly' == 3x * g(x)

    @property
    def ok(self) -> bool:
        return (self.identity_ok and self.factorization_ok and self.derivative_ok
                and len(self.positive_roots) == 1
                and self.positive_roots[0].low <= 1 <= self.positive_roots[0].high
                and self.g_min > 0)


STATIONARITY_POLY = (2, -3, 0, 0, 3, 0, -2)
G_POLY = (4, -5, 0, 0, 2)


def _slice_poly(lam):
    """x^4 * (lam(x) - lam(x^-2)) for a quadratic lam(t) = a t^2 + b t."""
    a, b = Fraction(lam[0]), Fraction(lam[1])
    # a x^2 + b x - a x^-4 - b x^-2, times x^4
    return upoly.as_poly((a, b, 0, 0, -b, 0, -a))


def lagrange_stationarity_check(width=Fraction(1, 10**12)) -> StationarityCertificate:
    # d/dt (t^2 - 3t) = 2t - 3; multiplying the stationarity equation
    # 2x - 3 = lambda*yz by x and using xyz = 1 gives lambda = 2x^2 - 3x
    lam = upoly.mul((1, 0), upoly.derivative((1, -3, 0)))[:2]
    p = _slice_poly(lam)
    expected = upoly.as_poly(STATIONARITY_POLY)
    factored = upoly.mul((1, 0, 0, -1), (2, -3, 0, 2))
    g = upoly.as_poly(G_POLY)
    gp = upoly.derivative(g)
    roots = isolate_positive_roots(gp, width)
    root = roots[0].exact if len(roots) == 1 else None
    return StationarityCertificate(
        multiplier=lam,
        slice_poly=p,
        expected=expected,
        identity_ok=upoly.sub(p, expected) == upoly.ZERO,
        factorization_ok=upoly.sub(p, factored) == upoly.ZERO,
        positive_roots=isolate_positive_roots(p, width),
        printed_multiplier_poly=_slice_poly((1, -2)),
        g=g,
        g_prime_root=root,
        g_min=upoly.evaluate(g, root) if root is not None else None,
        derivative_ok=upoly.sub(upoly.derivative(p), upoly.mul((3, 0), g)) == upoly.ZERO,
    )


# ---------------------------------------------------------------------------
# third route: horizontal sections z = k


def section_g(k):
    """Squared distance from the hyperbola vertex (k^-1/2, k^-1/2) to (3/2, 3/2)."""
    return 2.0 * (1.0 / np.sqrt(k) - 1.5) ** 2


def section_h(k):
    """Squared radius of the sphere's section at height k."""
    return -k * k + 3.0 * k - 1.5


SECTION_LOW = (3 - math.sqrt(3)) / 2
SECTION_HIGH = (3 + math.sqrt(3)) / 2


@dataclass(frozen=True)
class SphereSectionCertificate:
    grid: int
    min_gap: float                 # min over the grid of g - h
    argmin: float
    spacing: float
    g_at_1: Fraction
    h_at_1: Fraction
    h_at_ends: Fraction            # exact: 3/4 - (sqrt(3)/2)^2
    g_at_high: float
    g_increasing_above_1: bool
    h_decreasing_above_1: bool
    h_decreasing_above_3_2: bool
    h_increase_witness: tuple | None

    @property
    def ok(self) -> bool:
        return (self.min_gap >= -1e-12 and abs(self.argmin - 1.0) <= self.spacing
                and self.g_at_1 == self.h_at_1 == Fraction(1, 2))


def sphere_section_check(grid: int = 10_000) -> SphereSectionCertificate:
    if grid < 2:
        raise ValueError("grid must be >= 2")
    k = np.linspace(SECTION_LOW, SECTION_HIGH, grid)
    gap = section_g(k) - section_h(k)
    i = int(np.argmin(gap))
    above = k[k > 1.0]
    dg = np.diff(section_g(above))
    dh = np.diff(section_h(above))
    witness = None
    if np.any(dh >= 0):
        j = int(np.argmax(dh >= 0))
        witness = (float(above[j]), float(above[j + 1]))
    past = k[k > 1.5]
    # g(1) = 2(1 - 3/2)^2 and h(1) = -1 + 3 - 3/2, both exact
    return SphereSectionCertificate(
        grid=grid,
        min_gap=float(gap[i]),
        argmin=float(k[i]),
        spacing=float(k[1] - k[0]),
        g_at_1=2 * (1 - Fraction(3, 2)) ** 2,
        h_at_1=-Fraction(1) + 3 - Fraction(3, 2),
        h_at_ends=Fraction(3, 4) - Fraction(3, 4),
        g_at_high=float(section_g(SECTION_HIGH)),
        g_increasing_above_1=bool(np.all(dg > 0)),
        h_decreasing_above_1=witness is None,
        h_decreasing_above_3_2=bool(np.all(np.diff(section_h(past)) < 0)),
        h_increase_witness=witness,
    )

