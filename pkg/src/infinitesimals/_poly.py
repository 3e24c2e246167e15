"""Dense univariate polynomials over the rationals.

A polynomial is a list of :class:`~fractions.Fraction` coefficients, lowest
degree first, with no trailing zeros.  The empty list is the zero polynomial.
These helpers are shared by the Puiseux arithmetic and the sequence algebra.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterable, List, Sequence

Poly = List[Fraction]


def trim(p: Sequence[Fraction]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence[Fraction]) -> int:
    return len(p) - 1


def add(p: Sequence[Fraction], q: Sequence[Fraction]) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def neg(p: Sequence[Fraction]) -> Poly:
    return [-c for c in p]


def sub(p: Sequence[Fraction], q: Sequence[Fraction]) -> Poly:
    return add(p, neg(q))


def scale(p: Sequence[Fraction], c: Fraction) -> Poly:
    if c == 0:
        return []
    return [c * a for a in p]


def mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def divmod_poly(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    lead = q[-1]
    if len(r) - 1 < dq:
        return [], trim(r)
    quot = [Fraction(0)] * (len(r) - dq)
    for k in range(len(r) - 1 - dq, -1, -1):
        c = r[k + dq] / lead
        quot[k] = c
        if c:
            for j, b in enumerate(q):
                r[k + j] -= c * b
    return trim(quot), trim(r[:dq])


def monic(p: Sequence[Fraction]) -> Poly:
    if not p:
        return []
    lead = p[-1]
    return [c / lead for c in p]


def poly_gcd(p: Sequence[Fraction], q: Sequence[Fraction]) -> Poly:
    """Monic greatest common divisor (zero only if both inputs are zero)."""
    a, b = trim(p), trim(q)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, monic(r)
    return monic(a)


def evaluate(p: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def content_scale(p: Sequence[Fraction]) -> Fraction:
    """Factor ``s`` such that ``s * p`` has coprime integer coefficients."""
    if not p:
        return Fraction(1)
    den = 1
    for c in p:
        den = lcm(den, c.denominator)
    g = 0
    for c in p:
        g = gcd(g, int(c * den))
    return Fraction(den, g)


def integer_coefficients(p: Sequence[Fraction]) -> List[int]:
    s = content_scale(p)
    return [int(c * s) for c in p]


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def nonnegative_integer_roots(p: Sequence[Fraction]) -> List[int]:
    """All integers ``n >= 0`` with ``p(n) == 0``, ascending.  ``p`` nonzero."""
    p = trim(p)
    if not p:
        raise ValueError("zero polynomial has every integer as a root")
    roots = []
    k = 0
    while p[k] == 0:
        k += 1
    if k:
        roots.append(0)
    coeffs = integer_coefficients(p[k:])
    if len(coeffs) == 1:
        return roots
    return roots + [d for d in _divisors(coeffs[0]) if evaluate(coeffs, d) == 0]


def root_bound(p: Sequence[Fraction]) -> Fraction:
    """Cauchy bound: every real root has absolute value below it."""
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def from_ints(coeffs: Iterable[int]) -> Poly:
    return trim(Fraction(c) for c in coeffs)
