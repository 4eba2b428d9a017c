"""Dense univariate polynomials over the rationals.

Coefficients are tuples ordered from the highest degree down, so
``(2, -3, 0, 2)`` is ``2x^3 - 3x^2 + 2``. Every function accepts any
sequence of numbers and returns tuples of :class:`fractions.Fraction`,
except :func:`evaluate` which keeps the type of its argument (Fraction in,
Fraction out; float or ndarray in, float or ndarray out).
"""

from fractions import Fraction
from itertools import zip_longest

ZERO = ()


def as_poly(coeffs):
    """Convert to a tuple of Fractions with leading zeros removed."""
    out = [Fraction(c) for c in coeffs]
    i = 0
    while i < len(out) and out[i] == 0:
        i += 1
    return tuple(out[i:])


def degree(p):
    return len(p) - 1 if p else -1


def evaluate(p, x):
    acc = 0 * x
    for c in p:
        acc = acc * x + c
    return acc


def evaluate_float(p, x):
    fc = [float(c) for c in p]
    acc = 0.0 * x
    for c in fc:
        acc = acc * x + c
    return acc


def derivative(p):
    d = degree(p)
    return as_poly(c * (d - i) for i, c in enumerate(p[:-1]))


def add(p, q):
    rp, rq = p[::-1], q[::-1]
    return as_poly(
        [a + b for a, b in zip_longest(rp, rq, fillvalue=Fraction(0))][::-1]
    )


def sub(p, q):
    return add(p, scale(q, -1))


def scale(p, c):
    return as_poly(c * a for a in p)


def mul(p, q):
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return as_poly(out)


def power(p, k):
    out = (Fraction(1),)
    for _ in range(k):
        out = mul(out, p)
    return out


def divmod_poly(p, q):
    p, q = as_poly(p), as_poly(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = degree(q)
    quot = []
    while len(rem) - 1 >= dq:
        c = rem[0] / q[0]
        quot.append(c)
        for i, b in enumerate(q):
            rem[i] -= c * b
        rem.pop(0)
    return as_poly(quot), as_poly(rem)


def monic(p):
    return scale(p, 1 / p[0]) if p else ZERO


def gcd(p, q):
    p, q = as_poly(p), as_poly(q)
    while q:
        p, q = q, divmod_poly(p, q)[1]
    return monic(p)


def exact_div(p, q):
    quot, rem = divmod_poly(p, q)
    if rem:
        raise ArithmeticError("division is not exact")
    return quot


def squarefree_decomposition(p):
    """Yun's algorithm: return [(factor, multiplicity), ...] with monic,
    pairwise coprime, squarefree factors of positive degree."""
    p = as_poly(p)
    if degree(p) < 1:
        return []
    dp = derivative(p)
    a = gcd(p, dp)
    b = exact_div(p, a)
    c = exact_div(dp, a)
    d = sub(c, derivative(b))
    out = []
    k = 1
    while degree(b) > 0:
        a = gcd(b, d)
        if degree(a) > 0:
            out.append((a, k))
        b = exact_div(b, a)
        c = exact_div(d, a)
        d = sub(c, derivative(b))
        k += 1
    return out


def sign_variations(coeffs):
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def reflect(p):
    """p(-x)."""
    d = degree(p)
    return as_poly(c if (d - i) % 2 == 0 else -c for i, c in enumerate(p))


def mobius(p, a, b):
    """(1 + t)^d p((a + b t) / (1 + t)); its positive roots correspond to
    roots of p inside (a, b)."""
    d = degree(p)
    lin_ab = (Fraction(b), Fraction(a))
    one_t = (Fraction(1), Fraction(1))
    out = ZERO
    for i, c in enumerate(p):
        k = d - i
        term = mul(power(lin_ab, k), power(one_t, d - k))
        out = add(out, scale(term, c))
    return out


def positive_root_bound(p):
    """Cauchy bound: every root has modulus below this."""
    lead = abs(p[0])
    return 1 + max((abs(c) / lead for c in p[1:]), default=Fraction(0))


def to_string(p, var="x"):
    parts = []
    d = degree(p)
    for i, c in enumerate(p):
        if c == 0:
            continue
        k = d - i
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        parts.append(f"{c}*{mono}" if mono else f"{c}")
    return " + ".join(parts) if parts else "0"
