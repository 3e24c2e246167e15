"""A decidable slice of the sequence algebra of all maps N -> Q.

A :class:`SymbolicSequence` is piecewise by congruence: for a modulus ``m``
and each residue ``r`` it carries a rational function ``p_r(n) / q_r(n)``
used at every ``n = r (mod m)``.  The class is closed under pointwise
``+``, ``-`` and ``*``, every value is total (denominators are checked for
integer roots at construction) and the convergence class of a sequence is
decided from degrees and leading coefficients.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from . import _poly
from .errors import UndefinedAt

Branch = Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]

JSON_SCHEMA = "infinitesimals.seq/1"


def _reduce(p: Sequence[Fraction], q: Sequence[Fraction]) -> Branch:
    p, q = _poly.trim(p), _poly.trim(q)
    if not q:
        raise ZeroDivisionError("sequence branch with zero denominator")
    if not p:
        return (), (Fraction(1),)
    if len(q) > 1:
        g = _poly.poly_gcd(p, q)
        if len(g) > 1:
            p, _ = _poly.divmod_poly(p, g)
            q, _ = _poly.divmod_poly(q, g)
    lead = q[-1]
    return tuple(c / lead for c in p), tuple(c / lead for c in q)


def _first_root_in_class(p: Sequence[Fraction], r: int, m: int) -> Optional[int]:
    """Least ``n >= 0`` with ``n = r (mod m)`` and ``p(n) == 0``."""
    if not p:
        return r
    for n in _poly.nonnegative_integer_roots(p):
        if n % m == r:
            return n
    return None


class SymbolicSequence:
    """Immutable total sequence ``n -> p_{n mod m}(n) / q_{n mod m}(n)``."""

    __slots__ = ("branches",)

    def __init__(self, branches: Iterable[Tuple[Sequence, Sequence]]):
        reduced = [_reduce([Fraction(c) for c in p], [Fraction(c) for c in q]) for p, q in branches]
        if not reduced:
            raise ValueError("a sequence needs at least one branch")
        m = len(reduced)
        bad = [
            n
            for r, (_, q) in enumerate(reduced)
            if len(q) > 1 and (n := _first_root_in_class(q, r, m)) is not None
        ]
        if bad:
            raise UndefinedAt(min(bad), f"denominator vanishes at n={min(bad)}")
        object.__setattr__(self, "branches", _minimal_period(reduced))

    def __setattr__(self, name, value):
        raise AttributeError("SymbolicSequence is immutable")

    @classmethod
    def _trusted(cls, branches: List[Branch]) -> "SymbolicSequence":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "branches", _minimal_period(branches))
        return obj

    @property
    def modulus(self) -> int:
        return len(self.branches)

    # -- constructors --------------------------------------------------------

    @classmethod
    def constant(cls, c) -> "SymbolicSequence":
        return cls([((Fraction(c),), (Fraction(1),))])

    @classmethod
    def ratfn(cls, p: Sequence, q: Sequence = (1,)) -> "SymbolicSequence":
        """The sequence ``p(n)/q(n)``; coefficient lists lowest degree first."""
        return cls([(p, q)])

    @classmethod
    def index(cls) -> "SymbolicSequence":
        """The sequence ``n``."""
        return cls([((0, 1), (1,))])

    @classmethod
    def piecewise(cls, parts: Sequence["SymbolicSequence"]) -> "SymbolicSequence":
        """Use ``parts[r]`` at every ``n = r (mod len(parts))``."""
        m = len(parts)
        big = lcm(m, *(s.modulus for s in parts))
        return cls._trusted(
            [parts[R % m].branches[R % parts[R % m].modulus] for R in range(big)]
        )

    # -- algebra -----------------------------------------------------------

    def _combine(self, other, fn: Callable[[Branch, Branch], Branch]) -> "SymbolicSequence":
        if not isinstance(other, SymbolicSequence):
            other = SymbolicSequence.constant(other)
        big = lcm(self.modulus, other.modulus)
        out = [
            fn(self.branches[R % self.modulus], other.branches[R % other.modulus])
            for R in range(big)
        ]
        # reduced denominators divide the product of the operands', so roots
        # in a residue class cannot appear; re-checked anyway.
        return SymbolicSequence(out)

    def __add__(self, other) -> "SymbolicSequence":
        return self._combine(
            other,
            lambda a, b: (
                _poly.add(_poly.mul(a[0], b[1]), _poly.mul(b[0], a[1])),
                _poly.mul(a[1], b[1]),
            ),
        )

    __radd__ = __add__

    def __neg__(self) -> "SymbolicSequence":
        return SymbolicSequence._trusted(
            [(tuple(-c for c in p), q) for p, q in self.branches]
        )

    def __sub__(self, other) -> "SymbolicSequence":
        if not isinstance(other, SymbolicSequence):
            other = SymbolicSequence.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "SymbolicSequence":
        return SymbolicSequence.constant(other) - self

    def __mul__(self, other) -> "SymbolicSequence":
        return self._combine(
            other, lambda a, b: (_poly.mul(a[0], b[0]), _poly.mul(a[1], b[1]))
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SymbolicSequence":
        if not isinstance(other, SymbolicSequence):
            other = SymbolicSequence.constant(other)
        return self * pointwise_invert(other)

    def __pow__(self, k: int) -> "SymbolicSequence":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return pointwise_invert(self) ** (-k)
        result = SymbolicSequence.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, n: int) -> Fraction:
        return eval_seq(self, n)

    def is_zero(self) -> bool:
        return all(not p for p, _ in self.branches)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolicSequence) and self.branches == other.branches

    def __hash__(self) -> int:
        return hash(self.branches)

    def __repr__(self) -> str:
        return f"SymbolicSequence('{self}')"

    def __str__(self) -> str:
        return format_seq(self)

    def to_json(self) -> dict:
        def coeffs(p):
            return [[c.numerator, c.denominator] for c in p]

        return {
            "schema": JSON_SCHEMA,
            "modulus": self.modulus,
            "branches": [{"num": coeffs(p), "den": coeffs(q)} for p, q in self.branches],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SymbolicSequence":
        if data.get("schema", JSON_SCHEMA) != JSON_SCHEMA:
            raise ValueError(f"unsupported schema {data.get('schema')!r}")
        branches = [
            (
                [Fraction(n, d) for n, d in b["num"]],
                [Fraction(n, d) for n, d in b["den"]],
            )
            for b in data["branches"]
        ]
        if len(branches) != data["modulus"]:
            raise ValueError("modulus does not match the number of branches")
        return cls(branches)


def _minimal_period(branches: List[Branch]) -> Tuple[Branch, ...]:
    m = len(branches)
    for d in range(1, m):
        if m % d == 0 and all(branches[r] == branches[r % d] for r in range(m)):
            return tuple(branches[:d])
    return tuple(branches)


# -- text form ----------------------------------------------------------------


def _format_int_poly(coeffs: Sequence[int]) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = "n" if k == 1 else f"n^{k}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) or "0"


def _format_branch(p: Sequence[Fraction], q: Sequence[Fraction]) -> str:
    # one integer scale for numerator and denominator together
    s = _poly.content_scale(list(p) + list(q))
    return f"ratfn({_format_int_poly([int(c * s) for c in p])}, {_format_int_poly([int(c * s) for c in q])})"


def format_seq(s: SymbolicSequence) -> str:
    if s.modulus == 1:
        return _format_branch(*s.branches[0])
    body = "; ".join(f"{r}: {_format_branch(p, q)}" for r, (p, q) in enumerate(s.branches))
    return f"alt({s.modulus}){{{body}}}"


# -- operations ---------------------------------------------------------------


def embed(x) -> SymbolicSequence:
    """The constant sequence ``(x, x, x, ...)``."""
    return SymbolicSequence.constant(Fraction(x))


def add(a: SymbolicSequence, b: SymbolicSequence) -> SymbolicSequence:
    return a + b


def mul(a: SymbolicSequence, b: SymbolicSequence) -> SymbolicSequence:
    return a * b


def neg(a: SymbolicSequence) -> SymbolicSequence:
    return -a


def eval_seq(s: SymbolicSequence, n: int) -> Fraction:
    if n < 0:
        raise ValueError("sequences are indexed by natural numbers")
    p, q = s.branches[n % s.modulus]
    return _poly.evaluate(p, n) / _poly.evaluate(q, n)


class SeqKind(enum.Enum):
    NULL = "null"
    CONVERGENT = "convergent"
    BOUNDED_DIVERGENT = "bounded-divergent"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class SeqClass:
    kind: SeqKind
    limit: Optional[Fraction] = None

    @property
    def is_null(self) -> bool:
        return self.kind is SeqKind.NULL

    @property
    def is_convergent(self) -> bool:
        return self.kind in (SeqKind.NULL, SeqKind.CONVERGENT)

    @property
    def is_bounded(self) -> bool:
        return self.kind is not SeqKind.UNBOUNDED

    def __str__(self) -> str:
        if self.kind is SeqKind.CONVERGENT:
            return f"convergent (limit {self.limit})"
        return self.kind.value


def branch_limit(p: Sequence[Fraction], q: Sequence[Fraction]):
    """Limit of ``p(n)/q(n)``: a Fraction, ``math.inf`` or ``-math.inf``."""
    if not p:
        return Fraction(0)
    dp, dq = len(p) - 1, len(q) - 1
    ratio = p[-1] / q[-1]
    if dp > dq:
        return math.inf if ratio > 0 else -math.inf
    if dp < dq:
        return Fraction(0)
    return ratio


def classify_seq(s: SymbolicSequence) -> SeqClass:
    limits = [branch_limit(p, q) for p, q in s.branches]
    if any(isinstance(x, float) for x in limits):
        return SeqClass(SeqKind.UNBOUNDED)
    if all(x == 0 for x in limits):
        return SeqClass(SeqKind.NULL, Fraction(0))
    if len(set(limits)) == 1:
        return SeqClass(SeqKind.CONVERGENT, limits[0])
    return SeqClass(SeqKind.BOUNDED_DIVERGENT)


def pointwise_invert(s: SymbolicSequence) -> SymbolicSequence:
    """``n -> 1/s(n)``; raises :class:`UndefinedAt` at the least zero of ``s``."""
    m = s.modulus
    zeros = [
        n for r, (p, _) in enumerate(s.branches) if (n := _first_root_in_class(p, r, m)) is not None
    ]
    if zeros:
        n0 = min(zeros)
        raise UndefinedAt(n0, f"1/s is not defined: s({n0}) = 0")
    return SymbolicSequence._trusted([_reduce(q, p) for p, q in s.branches])


def is_nonnegative(s: SymbolicSequence) -> bool:
    """Decide ``s(n) >= 0`` for every natural ``n``."""
    m = s.modulus
    for r, (p, q) in enumerate(s.branches):
        if not p:
            continue
        tail_sign = (1 if p[-1] > 0 else -1) * (1 if q[-1] > 0 else -1)
        if tail_sign < 0:
            return False
        bound = max(_poly.root_bound(p), _poly.root_bound(q))
        for n in range(r, int(bound) + 1, m):
            if _poly.evaluate(p, n) / _poly.evaluate(q, n) < 0:
                return False
    return True


def leq(a: SymbolicSequence, b: SymbolicSequence) -> bool:
    """Pointwise order: ``a(n) <= b(n)`` for all ``n``."""
    return is_nonnegative(b - a)


def first_positive_index(s: SymbolicSequence, limit: int = 10**6) -> Optional[int]:
    """Least ``n`` with ``s(n) > 0`` among ``n < limit``."""
    for n in range(limit):
        if eval_seq(s, n) > 0:
            return n
    return None


def is_idempotent(s: SymbolicSequence) -> bool:
    """``s * s == s``: exactly the 0/1-valued sequences."""
    return s * s == s


def indicator(modulus: int, residues: Iterable[int]) -> SymbolicSequence:
    """0/1 sequence equal to 1 exactly on the given residue classes."""
    on = set(residues)
    return SymbolicSequence(
        [((Fraction(1 if r in on else 0),), (Fraction(1),)) for r in range(modulus)]
    )
