"""Sparse multivariate polynomials with exact rational coefficients.

Terms live in a dict from exponent tuples to nonzero Fractions. Printing and
iteration use graded lexicographic order, highest monomial first, which makes
the text form canonical::

    >>> str(MultiPoly.parse("x^2 + -3*x + 1/2"))
    '1*x^2 + -3*x + 1/2'

The text grammar is ``coef*var^exp*var^exp`` terms joined by ``" + "``;
coefficients are ``p`` or ``p/q`` and may carry a leading minus sign.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import permutations

from .errors import ArityError, DegreeOverflowError

MAX_DEGREE = 12
XYZ = ("x", "y", "z")
SYM = ("S1", "S2", "S3")


def grlex_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    __slots__ = ("terms", "names")
    default_names = XYZ

    def __init__(self, terms=None, names=None):
        self.names = tuple(names) if names is not None else self.default_names
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(self.names):
                raise ArityError(f"exponent {exps} does not match variables {self.names}")
            c = Fraction(c)
            if c == 0:
                continue
            if max(exps, default=0) > MAX_DEGREE:
                raise DegreeOverflowError(
                    f"degree {max(exps)} exceeds the cap of {MAX_DEGREE} per variable")
            clean[exps] = c
        self.terms = clean

    # -- construction -------------------------------------------------------

    def _new(self, terms):
        return type(self)(terms, self.names)

    @classmethod
    def constant(cls, c, names=None):
        names = names or cls.default_names
        return cls({(0,) * len(names): c}, names)

    @classmethod
    def var(cls, i, names=None):
        names = names or cls.default_names
        exps = [0] * len(names)
        exps[i] = 1
        return cls({tuple(exps): 1}, names)

    @classmethod
    def gens(cls, names=None):
        names = names or cls.default_names
        return tuple(cls.var(i, names) for i in range(len(names)))

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.names != self.names:
                raise ArityError(f"variables differ: {self.names} vs {other.names}")
            return other
        return self.constant(other, self.names)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = self.constant(1, self.names)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except ArityError:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- queries -------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self, key=grlex_key):
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient(self, exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate(self, point):
        if len(point) != len(self.names):
            raise ArityError(f"expected {len(self.names)} values, got {len(point)}")
        total = 0
        for exps, c in self.terms.items():
            t = c
            for v, k in zip(point, exps):
                if k:
                    t = t * v ** k
            total = total + t
        return total

    def substitute(self, images):
        """Compose: replace variable i by ``images[i]`` (polynomials or numbers)."""
        if len(images) != len(self.names):
            raise ArityError("one image per variable required")
        target = next((im for im in images if isinstance(im, MultiPoly)), None)
        names = target.names if target is not None else self.names
        cls = type(target) if target is not None else type(self)
        ims = [im if isinstance(im, MultiPoly) else cls.constant(im, names) for im in images]
        out = cls.constant(0, names)
        cache = {}
        for exps, c in self.terms.items():
            t = cls.constant(c, names)
            for i, k in enumerate(exps):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = ims[i] ** k
                    t = t * cache[(i, k)]
            out = out + t
        return out

    def permute(self, perm):
        """Polynomial q with q(x) = p(x[perm[0]], x[perm[1]], ...)."""
        gens = self.gens(self.names)
        return self.substitute([gens[j] for j in perm])

    def is_symmetric(self) -> bool:
        return all(self.permute(s) == self for s in permutations(range(len(self.names))))

    def reduce_product_one(self):
        """Normal form modulo (x*y*z - 1): divide out the common power of all
        variables in each monomial. Distinct normal forms are distinct
        elements of the quotient ring."""
        out = {}
        for e, c in self.terms.items():
            m = min(e)
            k = tuple(a - m for a in e)
            out[k] = out.get(k, 0) + c
        return self._new(out)

    def content_ratio(self, other):
        """Rational r with self == r * other, or None."""
        other = self._coerce(other)
        if set(self.terms) != set(other.terms):
            return None
        if not self.terms:
            return Fraction(1)
        e0 = next(iter(self.terms))
        r = self.terms[e0] / other.terms[e0]
        if all(self.terms[e] == r * other.terms[e] for e in self.terms):
            return r
        return None

    # -- text ------------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, exps) if k
            )
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r}, names={self.names})"

    @classmethod
    def parse(cls, text: str, names=None):
        names = tuple(names) if names is not None else cls.default_names
        text = text.strip()
        if text == "0":
            return cls({}, names)
        index = {n: i for i, n in enumerate(names)}
        out = {}
        for raw in text.split(" + "):
            factors = raw.strip().split("*")
            coef = Fraction(1)
            exps = [0] * len(names)
            for j, fac in enumerate(factors):
                if _NUM.fullmatch(fac):
                    if j != 0:
                        raise ValueError(f"coefficient must come first in {raw!r}")
                    coef = Fraction(fac)
                    continue
                m = _VAR.fullmatch(fac)
                if not m or m.group(1) not in index:
                    raise ValueError(f"cannot parse factor {fac!r} in {raw!r}")
                exps[index[m.group(1)]] += int(m.group(2) or 1)
            key = tuple(exps)
            out[key] = out.get(key, 0) + coef
        return cls(out, names)


_NUM = re.compile(r"-?\d+(/\d+)?")
_VAR = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(?:\^(\d+))?")


class SymPoly(MultiPoly):
    """Polynomial in the elementary symmetric functions S1, S2, S3 of x, y, z."""

    __slots__ = ()
    default_names = SYM

    def expand(self) -> MultiPoly:
        """Rewrite in x, y, z."""
        return self.substitute(list(elementary_xyz()))


def elementary_xyz():
    x, y, z = MultiPoly.gens(XYZ)
    return x + y + z, x * y + y * z + z * x, x * y * z
