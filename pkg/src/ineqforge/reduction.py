"""Exact algebra behind the three-variable inequalities.

The main path turns a family sum into a polynomial inequality and rewrites
it in elementary symmetric functions::

    cleared = clear_denominators("D1")            # sum <= 0  <=>  cleared <= 0
    reduced = symmetric_reduce(cleared)
    k1 = -substitute_product_one(reduced)         # k1 >= 0 under xyz = 1

``k1`` is S2^2 - 2 S1 S2 - 2 S2 + 2 S1^2 - 3 S1 + 6 and
:func:`k1_decompose` splits it into (S2 - S1)^2 plus the quadratic that
expands to x^2 + y^2 + z^2 - 3(x + y + z) + 6.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product

from . import upoly
from .errors import ArityError, DomainError, NotSymmetricError, UnsupportedMemberError
from .poly import XYZ, MultiPoly, SymPoly, elementary_xyz
from .scalar import Relation, eval_sum, get_member, rational

K1 = SymPoly.parse("2*S1^2 + -2*S1*S2 + 1*S2^2 + -3*S1 + -2*S2 + 6")
K2_SQUARE = SymPoly.parse("1*S1^2 + -2*S1*S2 + 1*S2^2")
K2_REMAINDER = SymPoly.parse("1*S1^2 + -2*S2 + -3*S1 + 6")
LEMMA1_POLY = MultiPoly.parse("1*x^2 + 1*y^2 + 1*z^2 + -3*x + -3*y + -3*z + 6")


def _compose(coeffs, image: MultiPoly) -> MultiPoly:
    out = MultiPoly.constant(0, image.names)
    for c in coeffs:
        out = out * image + c
    return out


def _term_parts(member, reduce_terms):
    num, den = member.term_numerator, member.term_denominator
    if reduce_terms:
        g = upoly.gcd(num, den)
        if upoly.degree(g) > 0:
            num, den = upoly.exact_div(num, g), upoly.exact_div(den, g)
    return num, den


def _images(member):
    x, y, z = MultiPoly.gens(XYZ)
    if member.substitution == "identity":
        return [x, y, z]
    if member.substitution == "pairwise":
        return [x * y, y * z, z * x]
    raise UnsupportedMemberError(f"{member.id}: no polynomial form for {member.substitution} inputs")


def clear_denominators(member, n: int = 3, reduce_terms: bool = False) -> MultiPoly:
    """(sum of terms - bound) times the product of the term denominators.

    Denominators of the D-members are positive for x >= 0, so the member's
    inequality holds exactly when the result has the member's orientation
    (<= 0 for LE members, >= 0 for GE members). With ``reduce_terms`` each
    term is first brought to lowest terms.
    """
    m = get_member(member)
    if n != 3:
        raise ArityError("clearing denominators is implemented for n = 3 only")
    if m.is_power:
        raise UnsupportedMemberError("power variants are not polynomial")
    num, den = _term_parts(m, reduce_terms)
    args = _images(m)
    nums = [_compose(num, a) for a in args]
    dens = [_compose(den, a) for a in args]
    total = MultiPoly.constant(0)
    for i in range(3):
        t = nums[i]
        for j in range(3):
            if j != i:
                t = t * dens[j]
        total = total + t
    return total - m.bound * dens[0] * dens[1] * dens[2]


def slack_polynomial(member, reduce_terms: bool = True) -> MultiPoly:
    """Cleared form oriented so that the inequality reads ``slack >= 0``."""
    m = get_member(member)
    p = clear_denominators(m, reduce_terms=reduce_terms)
    return -p if m.relation is Relation.LE else p


# ---------------------------------------------------------------------------
# symmetric reduction


def _symmetry_witness(p: MultiPoly):
    for perm in permutations(range(3)):
        q = p.permute(perm)
        if q != p:
            for pt in product(range(4), repeat=3):
                if q.evaluate(pt) != p.evaluate(pt):
                    return perm, pt
            return perm, None
    return None


def symmetric_reduce(p: MultiPoly) -> SymPoly:
    """Express a symmetric polynomial in x, y, z through S1, S2, S3.

    Classical leading-term elimination in lex order: the leading monomial
    x^a y^b z^c (a >= b >= c) is removed with S1^(a-b) S2^(b-c) S3^c.
    """
    if len(p.names) != 3:
        raise ArityError("symmetric reduction needs exactly three variables")
    w = _symmetry_witness(p)
    if w is not None:
        perm, pt = w
        raise NotSymmetricError(
            f"polynomial changes under permutation {perm} (e.g. at {pt})",
            permutation=perm, point=pt)
    e1, e2, e3 = elementary_xyz()
    if p.names != XYZ:
        p = MultiPoly(p.terms, XYZ)
    rest = p
    out = {}
    while rest:
        (a, b, c), coef = rest.leading_term(key=lambda e: e)
        k = (a - b, b - c, c)
        out[k] = out.get(k, 0) + coef
        rest = rest - coef * (e1 ** k[0]) * (e2 ** k[1]) * (e3 ** k[2])
    return SymPoly(out)


def substitute_product_one(sp: SymPoly) -> SymPoly:
    out = {}
    for (a, b, _), c in sp.terms.items():
        out[(a, b, 0)] = out.get((a, b, 0), 0) + c
    return SymPoly(out)


@dataclass(frozen=True)
class ReductionTrace:
    member: str
    cleared: MultiPoly
    reduced: SymPoly
    product_one: SymPoly
    slack: SymPoly

    def lines(self):
        return {
            "cleared": str(self.cleared),
            "symmetric": str(self.reduced),
            "product_one": str(self.product_one),
            "slack": str(self.slack),
        }


def reduce_member(member) -> ReductionTrace:
    """Cleared form, its symmetric reduction, S3 := 1, and the slack
    orientation (the polynomial that must be >= 0)."""
    m = get_member(member)
    cleared = clear_denominators(m)
    reduced = symmetric_reduce(cleared)
    one = substitute_product_one(reduced)
    slack = -one if m.relation is Relation.LE else one
    return ReductionTrace(m.id, cleared, reduced, one, slack)


@dataclass(frozen=True)
class K1Certificate:
    square_part: SymPoly
    remainder: SymPoly
    sum_residual: SymPoly
    expanded_remainder: MultiPoly
    expansion_residual: MultiPoly

    @property
    def ok(self) -> bool:
        return self.sum_residual.is_zero() and self.expansion_residual.is_zero()


def k1_decompose() -> K1Certificate:
    square = (SymPoly.var(1) - SymPoly.var(0)) ** 2
    assert square == K2_SQUARE
    remainder = K2_REMAINDER
    expanded = remainder.expand()
    return K1Certificate(
        square_part=square,
        remainder=remainder,
        sum_residual=square + remainder - K1,
        expanded_remainder=expanded,
        expansion_residual=expanded - LEMMA1_POLY,
    )


# ---------------------------------------------------------------------------
# reciprocal-sum identities and symmetric transforms


UVW = ("u", "v", "w")


def proposition_identity(k, variant: str) -> MultiPoly:
    """Difference between the cleared reciprocal sum and the stated cubic.

    P1: k(1+u)(1+v)(1+w) - sum of pair products of (1+.)  vs
        k uvw + (k-1)(uv+vw+wu) + (k-2)(u+v+w) + k - 3.
    P2: the same with (u - 1) and
        k uvw - (k+1)(uv+vw+wu) + (k+2)(u+v+w) - (k+3).
    Identically zero for every k.
    """
    k = rational(k)
    u, v, w = MultiPoly.gens(UVW)
    if variant == "P1":
        fac = [1 + u, 1 + v, 1 + w]
        cubic = k * u * v * w + (k - 1) * (u * v + v * w + w * u) + (k - 2) * (u + v + w) + (k - 3)
    elif variant == "P2":
        fac = [u - 1, v - 1, w - 1]
        cubic = k * u * v * w - (k + 1) * (u * v + v * w + w * u) + (k + 2) * (u + v + w) - (k + 3)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    cleared = k * fac[0] * fac[1] * fac[2] - (fac[1] * fac[2] + fac[0] * fac[2] + fac[0] * fac[1])
    return cleared - cubic


@dataclass(frozen=True)
class Lemma3Certificate:
    variant: str
    p_image: MultiPoly
    q_image: MultiPoly
    p_residual: MultiPoly
    q_residual: MultiPoly

    @property
    def ok(self) -> bool:
        return self.p_residual.is_zero() and self.q_residual.is_zero()


def lemma3_transform(variant: str) -> Lemma3Certificate:
    """Exact certificate for the SWAP and SQUARE substitutions modulo xyz = 1.

    SWAP (x, y, z) -> (xy, yz, zx) sends (p, q) to (q, p); SQUARE
    (x, y, z) -> (xy/z, yz/x, zx/y) sends (p, q) to (q^2 - 2p, p^2 - 2q).
    Division by a variable is multiplication by the other two, which is
    exact in the quotient ring.
    """
    x, y, z = MultiPoly.gens(XYZ)
    p, q, _ = elementary_xyz()
    if variant == "SWAP":
        images = [x * y, y * z, z * x]
        p_target, q_target = q, p
    elif variant == "SQUARE":
        images = [x * y * (x * y), y * z * (y * z), z * x * (z * x)]
        p_target, q_target = q * q - 2 * p, p * p - 2 * q
    else:
        raise ValueError(f"unknown variant {variant!r}")
    p_img, q_img = p.substitute(images), q.substitute(images)
    return Lemma3Certificate(
        variant,
        p_img,
        q_img,
        (p_img - p_target).reduce_product_one(),
        (q_img - q_target).reduce_product_one(),
    )


def lemma3_numeric(variant: str, point):
    """(p', q', target_p, target_q) by direct substitution at ``point``."""
    x, y, z = point
    p, q = x + y + z, x * y + y * z + z * x
    if variant == "SWAP":
        a, b, c = x * y, y * z, z * x
        tp, tq = q, p
    elif variant == "SQUARE":
        a, b, c = x * y / z, y * z / x, z * x / y
        tp, tq = q * q - 2 * p, p * p - 2 * q
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return a + b + c, a * b + b * c + c * a, tp, tq


# ---------------------------------------------------------------------------
# equivalence of family members


class Equivalence(str, enum.Enum):
    EQUIVALENT = "EQUIVALENT"
    NOT_EQUIVALENT = "NOT_EQUIVALENT"


TRANSFORMS = ("identity", "reciprocal", "pairwise")


def _transform_images(name):
    x, y, z = MultiPoly.gens(XYZ)
    return {
        "identity": [x, y, z],
        "reciprocal": [y * z, z * x, x * y],  # 1/x == yz when xyz = 1
        "pairwise": [x * y, y * z, z * x],
    }[name]


def _transform_point(name, pt):
    x, y, z = pt
    return {
        "identity": (x, y, z),
        "reciprocal": (1 / x, 1 / y, 1 / z),
        "pairwise": (x * y, y * z, z * x),
    }[name]


@dataclass(frozen=True)
class EquivalenceResult:
    status: Equivalence
    transform: str | None = None
    ratio: Fraction | None = None
    witness: tuple | None = None
    values: tuple | None = None
    residual: MultiPoly | None = field(default=None, compare=False)

    def __bool__(self):
        return self.status is Equivalence.EQUIVALENT


_DEFAULT_WITNESSES = [(Fraction(2), Fraction(2), Fraction(1, 4))] + [
    (a, b, 1 / (a * b))
    for a, b in product([Fraction(v) for v in ("1/4", "1/3", "1/2", "2/3", "3/2", "2", "3", "4")], repeat=2)
]


def _slack_at(member, pt) -> Fraction:
    s = eval_sum(member, pt) - member.bound
    return -s if member.relation is Relation.LE else s


def equivalence_check(member_a, member_b, transforms=TRANSFORMS, candidates=None) -> EquivalenceResult:
    """Compare two members as inequalities on {x, y, z > 0, xyz = 1}.

    Terms are brought to lowest terms and both sums are cleared to slack
    polynomials. The members are EQUIVALENT under a transform T (a bijection
    of the constraint surface) when slack_b is a positive rational multiple of
    slack_a o T modulo xyz = 1. Otherwise a rational point where the two
    slacks have opposite signs is searched for; user supplied ``candidates``
    are evaluated strictly, so a pole raises :class:`DomainError`.
    """
    a, b = get_member(member_a), get_member(member_b)
    sa = slack_polynomial(a)
    nb = slack_polynomial(b).reduce_product_one()
    for t in transforms:
        na = sa.substitute(_transform_images(t)).reduce_product_one()
        r = nb.content_ratio(na)
        if r is not None and r > 0:
            return EquivalenceResult(Equivalence.EQUIVALENT, transform=t, ratio=r,
                                     residual=nb - r * na)
    strict = candidates is not None
    pts = [tuple(rational(c) for c in pt) for pt in candidates] if strict else _DEFAULT_WITNESSES
    for pt in pts:
        if strict and pt[0] * pt[1] * pt[2] != 1:
            raise DomainError(f"witness candidate {pt} is off the product-one surface")
        try:
            va, vb = _slack_at(a, pt), _slack_at(b, pt)
        except DomainError:
            if strict:
                raise
            continue
        if (va >= 0) != (vb >= 0):
            return EquivalenceResult(Equivalence.NOT_EQUIVALENT, witness=pt,
                                     values=(eval_sum(a, pt), eval_sum(b, pt)))
    return EquivalenceResult(Equivalence.NOT_EQUIVALENT)
