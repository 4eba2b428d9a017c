"""Places where product-one triples show up naturally.

* Triangle geometry: ten triples built from sides, radii, altitudes and
  angles whose product is 1 (one of them is not, and is flagged).
* Cyclic inequalities in (a, b, c) obtained from x = a/b, y = b/c, z = c/a.
* The three positive roots of t^3 + a t^2 + b t - 1.
* Power variants controlled by Bernoulli's inequality.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import upoly
from .errors import DegenerateTriangleError, DomainError, UnsupportedMemberError
from .roots import isolate_real_roots
from .scalar import (CYCLIC_IDS, D_IDS, Relation, eval_sum_float, eval_term_float,
                     get_member, power_member, rational)

PRODUCT_TOL = 1e-10
VERDICT_TOL = 1e-9


def verdict(member, value: float, tol: float = VERDICT_TOL) -> bool:
    """Does ``value`` satisfy the member's bound, up to ``tol``?"""
    m = get_member(member)
    if m.relation is Relation.LE:
        return value <= float(m.bound) + tol
    return value >= float(m.bound) - tol


# ---------------------------------------------------------------------------
# triangles


@dataclass(frozen=True)
class TriangleData:
    a: float
    b: float
    c: float
    p: float          # semiperimeter
    area: float
    r: float          # inradius
    R: float          # circumradius
    h_a: float
    h_b: float
    h_c: float
    alpha: float
    beta: float
    gamma: float

    @classmethod
    def from_sides(cls, a, b, c) -> "TriangleData":
        a, b, c = float(a), float(b), float(c)
        if min(a, b, c) <= 0 or a >= b + c or b >= a + c or c >= a + b:
            raise DegenerateTriangleError(f"sides {a}, {b}, {c} violate the strict triangle inequality")
        p = (a + b + c) / 2
        # Heron, in the product form that is stable for needle-like triangles
        s = sorted((a, b, c), reverse=True)
        area = 0.25 * math.sqrt((s[0] + (s[1] + s[2])) * (s[2] - (s[0] - s[1]))
                                * (s[2] + (s[0] - s[1])) * (s[0] + (s[1] - s[2])))
        if area <= 0:
            raise DegenerateTriangleError("zero area")

        def angle(opp, u, v):
            return math.acos(max(-1.0, min(1.0, (u * u + v * v - opp * opp) / (2 * u * v))))

        return cls(a, b, c, p, area, area / p, a * b * c / (4 * area),
                   2 * area / a, 2 * area / b, 2 * area / c,
                   angle(a, b, c), angle(b, a, c), angle(c, a, b))

    def check(self) -> dict:
        """Relative residuals of the identities tying the fields together."""
        return {
            "area_pr": abs(self.p * self.r - self.area) / self.area,
            "area_abc": abs(self.a * self.b * self.c / (4 * self.R) - self.area) / self.area,
            "angle_sum": abs(self.alpha + self.beta + self.gamma - math.pi) / math.pi,
        }


def _tan_ratio(t):
    s = math.tan(t.alpha) + math.tan(t.beta) + math.tan(t.gamma)
    return math.tan(t.alpha) / s, math.tan(t.beta) / s, math.tan(t.gamma) / s


TRIPLES = (
    ("a/(4p), b/R, c/r",
     lambda t: (t.a / (4 * t.p), t.b / t.R, t.c / t.r)),
    ("(a+b)/2, (b+c)/p, (a+c)/(p^2+r^2+2rR)",
     lambda t: ((t.a + t.b) / 2, (t.b + t.c) / t.p,
                (t.a + t.c) / (t.p ** 2 + t.r ** 2 + 2 * t.r * t.R))),
    ("R h_a, h_b/(2p^2), h_c/r^2",
     lambda t: (t.R * t.h_a, t.h_b / (2 * t.p ** 2), t.h_c / t.r ** 2)),
    ("2R^2 sin(alpha), sin(beta)/r, sin(gamma)/p",
     lambda t: (2 * t.R ** 2 * math.sin(t.alpha), math.sin(t.beta) / t.r, math.sin(t.gamma) / t.p)),
    ("(p^2-4R^2-4rR-r^2) tan(alpha), tan(beta)/(2p), tan(gamma)/r",
     lambda t: ((t.p ** 2 - 4 * t.R ** 2 - 4 * t.r * t.R - t.r ** 2) * math.tan(t.alpha),
                math.tan(t.beta) / (2 * t.p), math.tan(t.gamma) / t.r)),
    ("tan ratios tan(alpha)/(tan(alpha)+tan(beta)+tan(gamma)), ...", _tan_ratio),
    ("tan(alpha/2), p tan(beta/2), tan(gamma/2)/r",
     lambda t: (math.tan(t.alpha / 2), t.p * math.tan(t.beta / 2), math.tan(t.gamma / 2) / t.r)),
    ("a/(4(p-a)), b/(R(p-b)), r c/(p-c)",
     lambda t: (t.a / (4 * (t.p - t.a)), t.b / (t.R * (t.p - t.b)), t.r * t.c / (t.p - t.c))),
    ("4R sin(alpha/2), sin(beta/2), sin(gamma/2)/r",
     lambda t: (4 * t.R * math.sin(t.alpha / 2), math.sin(t.beta / 2), math.sin(t.gamma / 2) / t.r)),
    ("4R cos(alpha/2), cos(beta/2), cos(gamma/2)/p",
     lambda t: (4 * t.R * math.cos(t.alpha / 2), math.cos(t.beta / 2), math.cos(t.gamma / 2) / t.p)),
)
TANGENT_RATIO_INDEX = 5


@dataclass(frozen=True)
class Triple:
    index: int
    name: str
    values: tuple
    product: float
    accepted: bool
    flag: str       # "ok", "nonfinite", "nonpositive" or "product_deviation"

    @property
    def product_residual(self) -> float:
        return abs(self.product - 1.0)


def triangle_triples(t: TriangleData) -> list[Triple]:
    """All ten triples; ``accepted`` means finite, positive, product 1 within 1e-10."""
    out = []
    for i, (name, fn) in enumerate(TRIPLES):
        with np.errstate(all="ignore"):
            vals = tuple(float(v) for v in fn(t))
        prod = math.prod(vals)
        if not all(math.isfinite(v) for v in vals) or not math.isfinite(prod):
            flag = "nonfinite"
        elif min(vals) <= 0:
            flag = "nonpositive"
        elif abs(prod - 1.0) > PRODUCT_TOL:
            flag = "product_deviation"
        else:
            flag = "ok"
        out.append(Triple(i, name, vals, prod, flag == "ok", flag))
    return out


def run_family_on_triples(t: TriangleData, member) -> list:
    """Per-triple verdicts for ``member``; None where the triple was rejected."""
    m = get_member(member)
    return [verdict(m, eval_sum_float(m, tr.values)) if tr.accepted else None
            for tr in triangle_triples(t)]


def random_triangle(rng: np.random.Generator, low: float = 0.1, high: float = 10.0) -> TriangleData:
    """Rejection-sample sides uniformly in (low, high) until they form a triangle."""
    while True:
        a, b, c = rng.uniform(low, high, 3)
        try:
            return TriangleData.from_sides(a, b, c)
        except DegenerateTriangleError:
            continue


# ---------------------------------------------------------------------------
# cyclic forms


def _homogeneous(coeffs, a, b, degree):
    """b**degree * P(a/b) evaluated without dividing."""
    d = len(coeffs) - 1
    return math.fsum(float(c) * a ** (d - i) * b ** (degree - d + i) for i, c in enumerate(coeffs))


@dataclass(frozen=True)
class CyclicResult:
    member: str
    lhs: float
    substituted: float
    satisfied: bool

    @property
    def mismatch(self) -> float:
        return abs(self.lhs - self.substituted) / max(1.0, abs(self.substituted))


def cyclic_eval(a, b, c, member) -> CyclicResult:
    """Evaluate a cyclic form in (a, b, c) directly and cross-check it
    against the underlying member at (a/b, b/c, c/a)."""
    m = get_member(member)
    if m.substitution != "cyclic":
        raise UnsupportedMemberError(f"{m.id} is not a cyclic form; use one of {CYCLIC_IDS}")
    a, b, c = float(a), float(b), float(c)
    if min(a, b, c) <= 0:
        raise DomainError("cyclic forms need a, b, c > 0")
    deg = len(m.term_denominator) - 1
    lhs = math.fsum(
        _homogeneous(m.term_numerator, u, v, deg) / _homogeneous(m.term_denominator, u, v, deg)
        for u, v in ((a, b), (b, c), (c, a)))
    sub = eval_sum_float(m.base, (a / b, b / c, c / a))
    return CyclicResult(m.id, lhs, sub, verdict(m, lhs))


# ---------------------------------------------------------------------------
# Vieta cubics


@dataclass(frozen=True)
class CubicSpec:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", rational(self.a))
        object.__setattr__(self, "b", rational(self.b))

    @property
    def coeffs(self) -> tuple:
        return upoly.as_poly((1, self.a, self.b, -1))

    @classmethod
    def from_roots(cls, x, y, z) -> "CubicSpec":
        x, y, z = rational(x), rational(y), rational(z)
        return cls(-(x + y + z), x * y + y * z + z * x)


@dataclass(frozen=True)
class VietaResult:
    spec: CubicSpec
    accepted: bool
    real_roots: int             # counted with multiplicity
    positive_roots: int         # counted with multiplicity
    roots: tuple                # the three positive roots, ascending (floats)
    product_residual: float | None
    verdicts: dict = field(default_factory=dict)
    reason: str = ""


def _polish(factor, lo: float, hi: float, x0: float) -> float:
    """Safeguarded Newton on a squarefree factor inside its bracket."""
    p = [float(c) for c in factor]
    dp = [float(c) for c in upoly.derivative(factor)]
    x = x0
    for _ in range(60):
        fx = upoly.evaluate_float(p, x)
        dfx = upoly.evaluate_float(dp, x)
        if fx == 0 or dfx == 0:
            break
        step = fx / dfx
        nxt = x - step
        if not lo <= nxt <= hi:
            break
        if abs(step) <= 1e-14 * max(1.0, abs(x)):
            x = nxt
            break
        x = nxt
    return x


def vieta_roots(spec: CubicSpec, tol: float = 1e-8, members=D_IDS) -> VietaResult:
    """Positive roots of t^3 + a t^2 + b t - 1, accepted when there are three
    (with multiplicity); then every member is evaluated on them."""
    width = Fraction(1, 10**12)
    ivs = isolate_real_roots(spec.coeffs, width)
    real = sum(iv.multiplicity for iv in ivs)
    pos = [iv for iv in ivs if iv.low > 0 or (iv.exact is not None and iv.exact > 0)]
    npos = sum(iv.multiplicity for iv in pos)
    if npos != 3:
        return VietaResult(spec, False, real, npos, (), None, {},
                           f"{npos} positive and {real} real roots (with multiplicity), 3 positive required")
    roots = []
    for iv in pos:
        if iv.exact is not None:
            r = float(iv.exact)
        else:
            r = _polish(iv.factor, float(iv.low), float(iv.high), float(iv.midpoint))
        roots.extend([r] * iv.multiplicity)
    roots = tuple(sorted(roots))
    resid = abs(math.prod(roots) - 1.0)
    verdicts = {mid: verdict(mid, eval_sum_float(mid, roots)) for mid in members}
    ok = resid <= tol and all(verdicts.values())
    reason = "" if ok else ("product residual exceeds tolerance" if resid > tol else "member violated")
    return VietaResult(spec, ok, real, npos, roots, resid, verdicts, reason)


# ---------------------------------------------------------------------------
# powers


def bernoulli_residual(u, alpha):
    """u**alpha - alpha*u + alpha - 1: >= 0 for alpha > 1 or alpha < 0 and
    <= 0 for 0 < alpha < 1."""
    if not np.all(np.asarray(u) > 0):
        raise DomainError(f"u must be positive, got {u}")
    return u ** alpha - alpha * u + alpha - 1


def bernoulli_sign(alpha) -> int:
    """The sign the residual is guaranteed to have (0 when alpha is 0 or 1)."""
    if alpha > 1 or alpha < 0:
        return 1
    if 0 < alpha < 1:
        return -1
    return 0


@dataclass(frozen=True)
class PowerResult:
    member: str
    alpha: float
    value: float
    bound: float
    satisfied: bool


def power_sum(member, alpha: float, point, product_tol: float = 1e-12) -> PowerResult:
    """Sum of term(x_k)**alpha checked against its Bernoulli-derived bound.

    Raises RegimeError when ``alpha`` is on the wrong side of 0 and 1 for
    the member.
    """
    pm = power_member(member, alpha)
    pts = [float(v) for v in point]
    if min(pts) <= 0:
        raise DomainError("power sums need a positive point")
    if abs(math.prod(pts) - 1.0) > product_tol:
        raise DomainError(f"point product {math.prod(pts)} is not 1")
    value = math.fsum(eval_term_float(pm, v) for v in pts)
    return PowerResult(pm.id, pm.alpha, value, float(pm.bound), verdict(pm, value))


# ---------------------------------------------------------------------------
# batch reports (JSON lines)


def triangle_records(sides, members=D_IDS):
    """One record per (triangle, triple, member)."""
    for abc in sides:
        t = TriangleData.from_sides(*abc)
        for tr in triangle_triples(t):
            for mid in members:
                value = eval_sum_float(mid, tr.values) if tr.accepted else None
                yield {
                    "kind": "triangle",
                    "inputs": {"a": t.a, "b": t.b, "c": t.c},
                    "triple": tr.index,
                    "values": list(tr.values),
                    "member": mid,
                    "product_residual": tr.product_residual,
                    "flag": tr.flag,
                    "value": value,
                    "verdict": ("REJECTED" if value is None
                                else "SATISFIED" if verdict(mid, value) else "VIOLATED"),
                }


def cubic_records(specs, members=D_IDS, tol: float = 1e-8):
    for spec in specs:
        res = vieta_roots(spec, tol, members)
        for mid in members:
            yield {
                "kind": "cubic",
                "inputs": {"a": str(spec.a), "b": str(spec.b)},
                "roots": list(res.roots),
                "member": mid,
                "product_residual": res.product_residual,
                "value": eval_sum_float(mid, res.roots) if res.roots else None,
                "verdict": ("REJECTED" if not res.roots
                            else "SATISFIED" if res.verdicts[mid] else "VIOLATED"),
                "reason": res.reason,
            }


def write_jsonl(records, fh, dumps=json.dumps):
    n = 0
    for rec in records:
        fh.write(dumps(rec) + "\n")
        n += 1
    return n
