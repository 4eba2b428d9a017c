"""Certified isolation of positive real roots.

Descartes' rule of signs on Moebius-transformed intervals (the
Vincent-Collins-Akritas scheme) with exact rational bisection. The input is
first split into squarefree factors so every isolated root carries its
multiplicity and every bracket shows a genuine sign change of its factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import upoly
from .errors import DegeneratePolynomialError
from .scalar import rational


@dataclass(frozen=True)
class RootInterval:
    """Bracket ``[low, high]`` around exactly one root of ``factor``.

    ``sign_low``/``sign_high`` are the exact signs of the squarefree
    ``factor`` at the endpoints; ``exact`` is set when the root was
    recognised as a rational number.
    """

    low: Fraction
    high: Fraction
    sign_low: int
    sign_high: int
    multiplicity: int = 1
    factor: tuple = ()
    exact: Fraction | None = None

    @property
    def width(self) -> Fraction:
        return self.high - self.low

    @property
    def midpoint(self) -> Fraction:
        return (self.low + self.high) / 2

    def check(self) -> bool:
        lo = _sign(upoly.evaluate(self.factor, self.low))
        hi = _sign(upoly.evaluate(self.factor, self.high))
        return (lo, hi) == (self.sign_low, self.sign_high) and lo * hi < 0


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _count(q, a, b) -> int:
    return upoly.sign_variations(upoly.mobius(q, a, b))


def _isolate_factor(q):
    """Disjoint open intervals (or exact points) each holding one positive root
    of the squarefree polynomial ``q``."""
    found = []
    stack = [(Fraction(0), upoly.positive_root_bound(q))]
    while stack:
        a, b = stack.pop()
        v = _count(q, a, b)
        if v == 0:
            continue
        if v == 1:
            found.append((a, b, None))
            continue
        m = (a + b) / 2
        if upoly.evaluate(q, m) == 0:
            found.append((m, m, m))
        stack.append((m, b))
        stack.append((a, m))
    return found


def _refine(q, a, b, width):
    """Shrink (a, b) around its single root until narrow enough and both
    endpoints are non-roots."""
    while True:
        sa, sb = _sign(upoly.evaluate(q, a)), _sign(upoly.evaluate(q, b))
        if b - a <= width and sa != 0 and sb != 0:
            return a, b, sa, sb, None
        m = (a + b) / 2
        sm = _sign(upoly.evaluate(q, m))
        if sm == 0:
            return None, None, 0, 0, m
        if sa != 0 and sb != 0:
            if sa * sm < 0:
                b = m
            else:
                a = m
        elif _count(q, a, m) == 1:
            b = m
        else:
            a = m


def _bracket_exact(q, r, width):
    half = width / 2
    while True:
        a, b = r - half, r + half
        if a > 0 and _count(q, a, b) == 1:
            sa, sb = _sign(upoly.evaluate(q, a)), _sign(upoly.evaluate(q, b))
            if sa and sb:
                return a, b, sa, sb
        half /= 2


def isolate_positive_roots(coeffs, width) -> list[RootInterval]:
    """All roots in (0, inf), each bracketed to at most ``width``.

    ``coeffs`` run from the highest degree down. The number of intervals is
    the exact number of distinct positive roots.
    """
    p = upoly.as_poly(coeffs)
    if not p:
        raise DegeneratePolynomialError("all coefficients are zero")
    width = rational(width)
    if width <= 0:
        raise ValueError("width must be positive")
    while p and p[-1] == 0:
        p = p[:-1]
    out = []
    for q, mult in upoly.squarefree_decomposition(p):
        for a, b, r in _isolate_factor(q):
            if r is None and upoly.degree(q) == 1:
                r = -q[1] / q[0]
            if r is None:
                a, b, sa, sb, r = _refine(q, a, b, width)
            if r is not None:
                a, b, sa, sb = _bracket_exact(q, r, width)
            out.append(RootInterval(a, b, sa, sb, mult, q, r))
    out.sort(key=lambda iv: iv.low)
    return out


def isolate_real_roots(coeffs, width) -> list[RootInterval]:
    """Positive, zero and negative roots together (negative ones mirrored)."""
    p = upoly.as_poly(coeffs)
    if not p:
        raise DegeneratePolynomialError("all coefficients are zero")
    width = rational(width)
    out = []
    for iv in isolate_positive_roots(upoly.reflect(p), width):
        f = upoly.reflect(iv.factor)
        ex = None if iv.exact is None else -iv.exact
        out.append(RootInterval(-iv.high, -iv.low, iv.sign_high, iv.sign_low,
                                iv.multiplicity, f, ex))
    zeros = 0
    while p and p[-1] == 0:
        p = p[:-1]
        zeros += 1
    if zeros:
        z = Fraction(0)
        out.append(RootInterval(z, z, 0, 0, zeros, (Fraction(1), Fraction(0)), z))
    out.extend(isolate_positive_roots(p, width))
    out.sort(key=lambda iv: iv.low)
    return out


def exact_root_or_none(coeffs, iv: RootInterval, max_den: int = 10**6):
    """Rational root inside ``iv`` if one exists with a small denominator."""
    if iv.exact is not None:
        return iv.exact
    p = upoly.as_poly(coeffs)
    guess = iv.midpoint.limit_denominator(max_den)
    if iv.low <= guess <= iv.high and upoly.evaluate(p, guess) == 0:
        return guess
    return None


def count_positive_roots(coeffs, with_multiplicity: bool = False) -> int:
    ivs = isolate_positive_roots(coeffs, Fraction(1))
    if with_multiplicity:
        return sum(iv.multiplicity for iv in ivs)
    return len(ivs)
