"""Exact arithmetic in a computable non-Archimedean ordered field.

Elements are quotients of two *Puiseux polynomials*, finite sums
``c * eps^q`` with rational coefficients ``c`` and rational exponents ``q``,
where ``eps`` is a fixed positive infinitesimal.  Every value is kept in a
canonical reduced form, so equality of values is structural equality and
the order is read off from a single coefficient sign.

>>> eps = LCNumber.eps()
>>> classify(eps)
<Classification.INFINITESIMAL: 'infinitesimal'>
>>> standard_part((3 + eps) / (1 + eps))
Fraction(3, 1)
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Dict, Iterable, Optional, Tuple, Union

from . import _poly
from .errors import DivisionByZero, NotFinite, ZeroArgument

Rational = Fraction
Scalar = Union[int, Fraction]
Term = Tuple[Fraction, Fraction]

JSON_SCHEMA = "infinitesimals.lc/1"


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class PuiseuxPoly:
    """Finite sum of monomials ``c * eps^q``, exponents strictly increasing."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Tuple[Scalar, Scalar]] = ()):
        acc: Dict[Fraction, Fraction] = {}
        for e, c in terms:
            e, c = _frac(e), _frac(c)
            acc[e] = acc.get(e, Fraction(0)) + c
        self.terms: Tuple[Term, ...] = tuple(
            (e, acc[e]) for e in sorted(acc) if acc[e] != 0
        )

    @classmethod
    def _trusted(cls, terms: Tuple[Term, ...]) -> "PuiseuxPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, c: Scalar) -> "PuiseuxPoly":
        return cls([(0, c)])

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == ((Fraction(0), Fraction(1)),)

    def valuation(self):
        return self.terms[0][0] if self.terms else math.inf

    def leading(self) -> Term:
        """The least-exponent term."""
        return self.terms[0]

    def coefficient(self, exponent: Scalar) -> Fraction:
        exponent = _frac(exponent)
        for e, c in self.terms:
            if e == exponent:
                return c
        return Fraction(0)

    def __add__(self, other: "PuiseuxPoly") -> "PuiseuxPoly":
        return PuiseuxPoly(self.terms + other.terms)

    def __neg__(self) -> "PuiseuxPoly":
        return PuiseuxPoly._trusted(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "PuiseuxPoly") -> "PuiseuxPoly":
        return self + (-other)

    def __mul__(self, other: "PuiseuxPoly") -> "PuiseuxPoly":
        return PuiseuxPoly(
            (e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms
        )

    def scale(self, c: Fraction, shift: Fraction = Fraction(0)) -> "PuiseuxPoly":
        """Multiply by the monomial ``c * eps^shift``."""
        if c == 0:
            return PuiseuxPoly()
        return PuiseuxPoly._trusted(tuple((e + shift, c * a) for e, a in self.terms))

    def truncate(self, order: Fraction) -> "PuiseuxPoly":
        return PuiseuxPoly._trusted(tuple(t for t in self.terms if t[0] <= order))

    def exponent_denominators(self) -> Iterable[int]:
        return (e.denominator for e, _ in self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, PuiseuxPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __repr__(self) -> str:
        return f"PuiseuxPoly({[(str(e), str(c)) for e, c in self.terms]})"

    def __str__(self) -> str:
        return format_poly(self)

    def to_json(self) -> list:
        return [
            [e.numerator, e.denominator, c.numerator, c.denominator] for e, c in self.terms
        ]

    @classmethod
    def from_json(cls, data) -> "PuiseuxPoly":
        terms = [(Fraction(en, ed), Fraction(cn, cd)) for en, ed, cn, cd in data]
        poly = cls(terms)
        if list(poly.terms) != [(e, c) for e, c in terms]:
            raise ValueError("Puiseux term list is not in canonical order")
        return poly


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_poly(p: PuiseuxPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i, (e, c) in enumerate(p.terms):
        body = _fmt_rational(abs(c))
        if e != 0:
            body += f"*eps^({_fmt_rational(e)})"
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def _to_dense(p: PuiseuxPoly, base: Fraction, denom: int) -> _poly.Poly:
    out = [Fraction(0)] * (int((p.terms[-1][0] - base) * denom) + 1)
    for e, c in p.terms:
        out[int((e - base) * denom)] = c
    return out


def _from_dense(coeffs, shift: Fraction, denom: int) -> PuiseuxPoly:
    return PuiseuxPoly._trusted(
        tuple((Fraction(i, denom) + shift, c) for i, c in enumerate(coeffs) if c != 0)
    )


_ONE = PuiseuxPoly.constant(1)


def _canonical(num: PuiseuxPoly, den: PuiseuxPoly) -> Tuple[PuiseuxPoly, PuiseuxPoly]:
    if den.is_zero():
        raise DivisionByZero("denominator is zero")
    if num.is_zero():
        return PuiseuxPoly(), _ONE
    if len(den.terms) == 1:
        e, c = den.terms[0]
        return num.scale(1 / c, -e), _ONE
    denom = reduce(lcm, num.exponent_denominators(), 1)
    denom = reduce(lcm, den.exponent_denominators(), denom)
    vn, vd = num.valuation(), den.valuation()
    p = _to_dense(num, vn, denom)
    q = _to_dense(den, vd, denom)
    g = _poly.poly_gcd(p, q)
    if len(g) > 1:
        p, _ = _poly.divmod_poly(p, g)
        q, _ = _poly.divmod_poly(q, g)
    lead = q[0]
    p = [c / lead for c in p]
    q = [c / lead for c in q]
    return _from_dense(p, vn - vd, denom), _from_dense(q, Fraction(0), denom)


class Classification(enum.Enum):
    ZERO = "zero"
    INFINITESIMAL = "infinitesimal"
    APPRECIABLE = "appreciable"
    INFINITE = "infinite"

    @property
    def in_monad(self) -> bool:
        """Membership in Mon(0): zero or infinitesimal."""
        return self in (Classification.ZERO, Classification.INFINITESIMAL)

    @property
    def is_finite(self) -> bool:
        """Membership in Fin(0)."""
        return self is not Classification.INFINITE


class LCNumber:
    """Element of the field, stored as a canonical quotient ``num / den``.

    The denominator's least exponent is 0 with coefficient 1, and numerator
    and denominator share no common polynomial factor.  Instances are
    immutable and hashable.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: PuiseuxPoly, den: Optional[PuiseuxPoly] = None):
        if den is None or den.is_one():
            num, den = num, _ONE
        else:
            num, den = _canonical(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("LCNumber is immutable")

    @classmethod
    def _make(cls, num: PuiseuxPoly, den: PuiseuxPoly) -> "LCNumber":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        return obj

    @classmethod
    def rational(cls, c: Scalar) -> "LCNumber":
        return cls._make(PuiseuxPoly.constant(c), _ONE)

    @classmethod
    def monomial(cls, coefficient: Scalar, exponent: Scalar) -> "LCNumber":
        return cls._make(PuiseuxPoly([(exponent, coefficient)]), _ONE)

    @classmethod
    def eps(cls) -> "LCNumber":
        return cls.monomial(1, 1)

    @classmethod
    def coerce(cls, x) -> "LCNumber":
        if isinstance(x, LCNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.rational(x)
        raise TypeError(f"cannot convert {type(x).__name__} to LCNumber")

    # -- field operations -------------------------------------------------

    def __add__(self, other) -> "LCNumber":
        try:
            other = LCNumber.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return LCNumber._make(self.num + other.num, _ONE)
        if self.den == other.den:
            return LCNumber(self.num + other.num, self.den)
        return LCNumber(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> "LCNumber":
        return LCNumber._make(-self.num, self.den)

    def __pos__(self) -> "LCNumber":
        return self

    def __sub__(self, other) -> "LCNumber":
        try:
            other = LCNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LCNumber":
        return LCNumber.coerce(other) - self

    def __mul__(self, other) -> "LCNumber":
        try:
            other = LCNumber.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return LCNumber._make(self.num * other.num, _ONE)
        return LCNumber(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LCNumber":
        try:
            other = LCNumber.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero in LCNumber")
        return LCNumber(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "LCNumber":
        return LCNumber.coerce(other) / self

    def __pow__(self, k: int) -> "LCNumber":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return LCNumber.rational(1) / self ** (-k)
        result, base = LCNumber.rational(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def rational_power(self, q: Scalar) -> "LCNumber":
        """``self ** q`` for rational ``q``; exact only for monomials with a
        rational root of the coefficient."""
        q = _frac(q)
        if q.denominator == 1:
            return self ** int(q)
        mono = is_monomial(self)
        if mono is None:
            raise ValueError("rational powers are only defined for monomials")
        e, c = mono
        root = _rational_root(c, q.denominator)
        if root is None:
            raise ValueError(f"coefficient {c} has no rational root of order {q.denominator}")
        return LCNumber.monomial(root ** q.numerator, e * q)

    def __abs__(self) -> "LCNumber":
        return -self if self.sign() < 0 else self

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def sign(self) -> int:
        if self.num.is_zero():
            return 0
        return 1 if self.num.leading()[1] > 0 else -1

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LCNumber.rational(other)
        if not isinstance(other, LCNumber):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __lt__(self, other) -> bool:
        return compare(self, other) < 0

    def __le__(self, other) -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other) -> bool:
        return compare(self, other) > 0

    def __ge__(self, other) -> bool:
        return compare(self, other) >= 0

    def __repr__(self) -> str:
        return f"LCNumber('{self}')"

    def __str__(self) -> str:
        if self.den.is_one():
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    def to_json(self) -> dict:
        return {"schema": JSON_SCHEMA, "num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "LCNumber":
        if data.get("schema", JSON_SCHEMA) != JSON_SCHEMA:
            raise ValueError(f"unsupported schema {data.get('schema')!r}")
        num = PuiseuxPoly.from_json(data["num"])
        den = PuiseuxPoly.from_json(data["den"])
        value = cls(num, den)
        if value.num != num or value.den != den:
            raise ValueError("LCNumber JSON is not in canonical form")
        return value


def _rational_root(c: Fraction, k: int) -> Optional[Fraction]:
    if c < 0 and k % 2 == 0:
        return None
    sign = -1 if c < 0 else 1
    n, d = _int_root(abs(c.numerator), k), _int_root(c.denominator, k)
    if n is None or d is None:
        return None
    return sign * Fraction(n, d)


def _int_root(n: int, k: int) -> Optional[int]:
    r = round(n ** (1.0 / k)) if n else 0
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    lo, hi = 0, n + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**k == n else None


# -- module-level operations -----------------------------------------------


def add(a: LCNumber, b: LCNumber) -> LCNumber:
    return a + b


def sub(a: LCNumber, b: LCNumber) -> LCNumber:
    return a - b


def mul(a: LCNumber, b: LCNumber) -> LCNumber:
    return a * b


def div(a: LCNumber, b: LCNumber) -> LCNumber:
    return a / b


def compare(a, b) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    a, b = LCNumber.coerce(a), LCNumber.coerce(b)
    # both denominators lead with 1*eps^0, hence are positive; skip reduction
    diff = a.num * b.den - b.num * a.den
    if diff.is_zero():
        return 0
    return 1 if diff.leading()[1] > 0 else -1


def valuation(a: LCNumber):
    """Least exponent of the canonical numerator; ``math.inf`` for zero."""
    return a.num.valuation()


def classify(a: LCNumber) -> Classification:
    if a.is_zero():
        return Classification.ZERO
    v = valuation(a)
    if v > 0:
        return Classification.INFINITESIMAL
    if v == 0:
        return Classification.APPRECIABLE
    return Classification.INFINITE


def standard_part(a: LCNumber) -> Fraction:
    v = valuation(a)
    if v < 0:
        raise NotFinite(f"{a} is infinitely large")
    if v > 0:
        return Fraction(0)
    # den has least term 1*eps^0, so the leading ratio is the numerator's
    return a.num.leading()[1]


def truncated_series(a: LCNumber, order: Scalar) -> PuiseuxPoly:
    """Polynomial ``p`` with ``valuation(a - p) > order``.

    Expands ``num * (1 - r + r^2 - ...)`` where ``den = 1 + r`` and ``r``
    has positive valuation, dropping every exponent above ``order``.
    """
    order = _frac(order)
    if a.is_zero() or valuation(a) > order:
        return PuiseuxPoly()
    num = a.num.truncate(order)
    if a.den.is_one():
        return num
    minus_r = -(a.den - _ONE)
    step = minus_r.valuation()
    n_terms = int((order - a.num.valuation()) / step)
    result = num
    power = num
    for _ in range(n_terms):
        power = (power * minus_r).truncate(order)
        if power.is_zero():
            break
        result = result + power
    return result


def is_monomial(a: LCNumber) -> Optional[Tuple[Fraction, Fraction]]:
    """``(exponent, coefficient)`` if ``a == coefficient * eps^exponent``."""
    if a.den.is_one() and len(a.num.terms) == 1:
        return a.num.terms[0]
    return None


def same_line(a: LCNumber, b: LCNumber) -> bool:
    """True iff the scalar lines through ``a`` and ``b`` coincide."""
    if a.is_zero() or b.is_zero():
        raise ZeroArgument("same_line needs nonzero arguments")
    mono = is_monomial(a / b)
    return mono is not None and mono[0] == 0


def line_ratio(a: LCNumber, b: LCNumber) -> Optional[Fraction]:
    """The rational ``c`` with ``a == c * b``, or ``None`` if there is none."""
    if a.is_zero() or b.is_zero():
        raise ZeroArgument("line_ratio needs nonzero arguments")
    mono = is_monomial(a / b)
    if mono is None or mono[0] != 0:
        return None
    return mono[1]


EPS = LCNumber.eps()
ZERO = LCNumber.rational(0)
ONE = LCNumber.rational(1)
