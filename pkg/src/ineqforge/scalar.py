"""One-variable rational terms behind every inequality of the family.

Each inequality is a sum of copies of a single term ``N(x)/D(x)`` compared
with a constant bound. :class:`FamilyMember` stores the term as numerator and
denominator coefficient tuples (highest degree first), which lets the exact
path (Fractions), the float path (optimizer) and the symbolic derivative all
share one description.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property

from . import upoly
from .errors import DomainError, RegimeError, UnsupportedMemberError


class Relation(str, enum.Enum):
    LE = "LE"
    GE = "GE"


def rational(value) -> Fraction:
    """Coerce ints, Fractions, "p/q" strings and floats (exactly) to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    return str(rational(value))


@dataclass(frozen=True)
class FamilyMember:
    id: str
    term_numerator: tuple
    term_denominator: tuple
    relation: Relation
    bound: Fraction
    alpha: float | None = None
    # "identity": terms at x_k; "pairwise": at x*y, y*z, z*x;
    # "cyclic": inputs are (a, b, c) and terms are taken at a/b, b/c, c/a.
    substitution: str = "identity"
    base: str | None = None
    note: str = field(default="", compare=False)

    @cached_property
    def _num_f(self):
        return tuple(float(c) for c in self.term_numerator)

    @cached_property
    def _den_f(self):
        return tuple(float(c) for c in self.term_denominator)

    @cached_property
    def _dnum_f(self):
        return tuple(float(c) for c in upoly.derivative(self.term_numerator))

    @cached_property
    def _dden_f(self):
        return tuple(float(c) for c in upoly.derivative(self.term_denominator))

    @property
    def is_power(self) -> bool:
        return self.alpha is not None

    def arguments(self, point):
        """Arguments fed to the univariate term for a given input point."""
        pts = list(point)
        if self.substitution == "identity":
            return pts
        if len(pts) != 3:
            raise DomainError(f"{self.id} is defined for three variables")
        x, y, z = pts
        if self.substitution == "pairwise":
            return [x * y, y * z, z * x]
        if self.substitution == "cyclic":
            if 0 in (x, y, z):
                raise DomainError("cyclic forms need a, b, c > 0")
            return [x / y, y / z, z / x]
        raise ValueError(f"unknown substitution {self.substitution!r}")

    def slack_sign(self) -> int:
        """+1 if the inequality reads sum <= bound, -1 for sum >= bound."""
        return 1 if self.relation is Relation.LE else -1


def _member(id, num, den, rel, bound, **kw):
    return FamilyMember(id, upoly.as_poly(num), upoly.as_poly(den),
                        Relation(rel), Fraction(bound), **kw)


_MINUS = (1, -1, 1)  # x^2 - x + 1
_PLUS = (1, 1, 1)    # x^2 + x + 1

MEMBERS: dict[str, FamilyMember] = {}


def _register(m):
    MEMBERS[m.id] = m
    return m


D1 = _register(_member("D1", (1, -1), _MINUS, "LE", 0))
D2 = _register(_member("D2", (1,), _MINUS, "LE", 3))
D3 = _register(_member("D3", (1, 0), _MINUS, "LE", 3))
D4 = _register(_member("D4", (1, -1), _PLUS, "LE", 0))
D5 = _register(_member("D5", (1,), _PLUS, "GE", 1))
D6 = _register(_member("D6", (1, 0), _PLUS, "LE", 1))
D7 = _register(_member("D7", (1, 1), _PLUS, "LE", 2))

# M1 as printed has x^3 - 1 below, a pole at x = 1; M1C is the form that
# actually reduces to the D1 term, (x^2 - 1)/(x^3 + 1).
M1 = _register(_member("M1", (1, 0, -1), (1, 0, 0, -1), "LE", 0,
                       note="printed form, pole at x=1"))
M1C = _register(_member("M1C", (1, 0, -1), (1, 0, 0, 1), "LE", 0,
                        note="x^3+1 denominator"))
M2 = _register(_member("M2", (1, 0, 0), _MINUS, "LE", 3))
M3 = _register(_member("M3", (-1, 1, 0), _MINUS, "LE", 0))
M4 = _register(_member("M4", (1, -1), _MINUS, "LE", 0, substitution="pairwise"))
M5 = _register(_member("M5", (-1, 1, 0), _MINUS, "LE", 0, substitution="pairwise"))

for _k, _d in enumerate(("D1", "D2", "D3", "D4", "D5", "D6", "D7")):
    _src = MEMBERS[_d]
    _register(replace(_src, id=f"C{15 + _k}", substitution="cyclic", base=_d))

D_IDS = ("D1", "D2", "D3", "D4", "D5", "D6", "D7")
CYCLIC_IDS = tuple(f"C{k}" for k in range(15, 22))


def get_member(member) -> FamilyMember:
    if isinstance(member, FamilyMember):
        return member
    try:
        return MEMBERS[member]
    except KeyError:
        raise UnsupportedMemberError(f"unknown family member {member!r}") from None


def power_member(base, alpha: float) -> FamilyMember:
    """Power variant sum term(x)^alpha with the bound derived from Bernoulli.

    D2, D6 and D7 give upper bounds 3, 3 - 2a, 3 - a for 0 < a < 1; D5
    gives the lower bound 3 - 2a for a > 1 or a < 0.
    """
    b = get_member(base)
    a = float(alpha)
    fa = Fraction(a)
    if b.id in ("D2", "D6", "D7"):
        if not 0 < a < 1:
            raise RegimeError(f"{b.id} power bound needs 0 < alpha < 1, got {a}")
        bound = {"D2": Fraction(3), "D6": 3 - 2 * fa, "D7": 3 - fa}[b.id]
        rel = Relation.LE
    elif b.id == "D5":
        if 0 <= a <= 1:
            raise RegimeError(f"D5 power bound needs alpha > 1 or alpha < 0, got {a}")
        bound, rel = 3 - 2 * fa, Relation.GE
    else:
        raise UnsupportedMemberError(f"no power bound is stated for {b.id}")
    return replace(b, id=f"{b.id}^{a:g}", alpha=a, bound=bound, relation=rel,
                   base=b.id)


# ---------------------------------------------------------------------------
# exact path


def eval_term(member, x) -> Fraction:
    m = get_member(member)
    if m.is_power:
        raise UnsupportedMemberError("power variants have no exact value; use eval_term_float")
    x = rational(x)
    if x < 0:
        raise DomainError(f"x must be nonnegative, got {x}")
    den = upoly.evaluate(m.term_denominator, x)
    if den == 0:
        raise DomainError(f"{m.id}: denominator vanishes at x={x}")
    return upoly.evaluate(m.term_numerator, x) / den


def eval_sum(member, point) -> Fraction:
    m = get_member(member)
    args = m.arguments([rational(p) for p in point])
    return sum((eval_term(m, a) for a in args), Fraction(0))


def functional_eq_residual(x) -> Fraction:
    """f(1/x) + x f(x) for the D1 term; zero for every positive x."""
    x = rational(x)
    if x <= 0:
        raise DomainError("x must be positive")
    return eval_term(D1, 1 / x) + x * eval_term(D1, x)


def pair_sum_closed_form(x) -> Fraction:
    """f(x) + f(1/x), the n = 2 sum under the product constraint.

    Equals -(x - 1)^2 / (x^2 - x + 1); the identity is asserted.
    """
    x = rational(x)
    if x <= 0:
        raise DomainError("x must be positive")
    direct = eval_term(D1, x) + eval_term(D1, 1 / x)
    closed = -(x - 1) ** 2 / (x * x - x + 1)
    assert direct == closed, (direct, closed)
    return closed


def derivative_numerator(member) -> tuple:
    """N'D - ND', whose sign is the sign of the term's derivative."""
    m = get_member(member)
    n, d = m.term_numerator, m.term_denominator
    return upoly.sub(upoly.mul(upoly.derivative(n), d), upoly.mul(n, upoly.derivative(d)))


_MAX_CLAIMED = ("D1", "D6")


def unconditional_max(member, interval=(0, None)):
    """Maximum of the term over ``interval`` (``None`` upper end = infinity).

    Critical points come from certified isolation of the derivative
    numerator's positive roots; rational roots are recovered exactly.
    Returns ``(argmax, max)``.
    """
    from .roots import isolate_positive_roots, exact_root_or_none

    m = get_member(member)
    if m.id not in _MAX_CLAIMED:
        raise UnsupportedMemberError(f"no unconditional maximum is claimed for {m.id}")
    lo = rational(interval[0])
    hi = None if interval[1] is None else rational(interval[1])
    if lo < 0 or (hi is not None and hi <= lo):
        raise DomainError("invalid interval")

    candidates = [lo]
    if hi is not None:
        candidates.append(hi)
    dnum = derivative_numerator(m)
    for iv in isolate_positive_roots(dnum, Fraction(1, 10**30)):
        r = exact_root_or_none(dnum, iv)
        if r is None:
            r = (iv.low + iv.high) / 2
        if r > lo and (hi is None or r < hi):
            candidates.append(r)
    best = max(candidates, key=lambda c: (eval_term(m, c), -c))
    value = eval_term(m, best)
    if hi is None:
        # limit at infinity of a proper rational function
        if upoly.degree(m.term_numerator) == upoly.degree(m.term_denominator):
            lim = m.term_numerator[0] / m.term_denominator[0]
            if lim > value:
                raise UnsupportedMemberError("supremum only approached at infinity")
    return best, value


# ---------------------------------------------------------------------------
# float path


def eval_term_float(member, x):
    """Float (or ndarray) value of the term, including power variants."""
    m = get_member(member)
    t = _horner(m._num_f, x) / _horner(m._den_f, x)
    if m.is_power:
        return t ** m.alpha
    return t


def eval_sum_float(member, point) -> float:
    m = get_member(member)
    return math.fsum(eval_term_float(m, a) for a in m.arguments(point))


def eval_derivative(member, x):
    """d/dx of the term by the quotient rule on the stored coefficients."""
    m = get_member(member)
    n = _horner(m._num_f, x)
    d = _horner(m._den_f, x)
    dn = _horner(m._dnum_f, x)
    dd = _horner(m._dden_f, x)
    dt = (dn * d - n * dd) / (d * d)
    if m.is_power:
        return m.alpha * (n / d) ** (m.alpha - 1) * dt
    return dt


def _horner(coeffs, x):
    acc = 0.0 * x
    for c in coeffs:
        acc = acc * x + c
    return acc
