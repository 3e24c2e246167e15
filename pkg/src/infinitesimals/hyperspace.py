"""Disjoint families of proper sub-structures and their certificates.

Two sub-structures are *disjoint* when their intersection is empty or
consists of idempotent elements only.  A certificate records an ambient
structure ``E``, a proper sub-structure ``F`` (with a witness in ``E \\ F``),
a list of members, each proper in ``F`` (with a witness), and one proof
record per pair of members.  :func:`verify_certificate` re-derives every
part of it from scratch.

Ambients are named:

``lc-add``       the additive group of the non-Archimedean field
``q-add``        the additive group of the rationals (no infinitesimals)
``seq-mul``      sequences under pointwise multiplication
any monoid name  a registered ordered monoid (``nat-add``, ``lex-z2``, ...)

Finite magmas are passed as :class:`FiniteMagma` objects.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import networkx as nx

from . import lc
from . import monoids
from .errors import ExponentBelowOne, NotProper, TooLarge, WrongKind
from .lc import EPS, Classification, LCNumber
from .sequences import SymbolicSequence

CERT_SCHEMA = "infinitesimals.certificate/1"
SCAN_SCHEMA = "infinitesimals.magma-scan/1"

INFINITE_FAMILY_NOTE = (
    "A hyperspace needs an infinite family of pairwise disjoint sub-magmas; a finite magma has "
    "finitely many sub-magmas, so it is never a hyperspace. The family reported is "
    "the largest finite one."
)


# -- finite magmas ----------------------------------------------------------------


@dataclass(frozen=True)
class FiniteMagma:
    """Cayley table on ``{0, ..., size-1}``; no associativity required."""

    table: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.table)
        if n == 0:
            raise ValueError("a magma needs at least one element")
        for row in self.table:
            if len(row) != n or any(not 0 <= c < n for c in row):
                raise ValueError("table entries must index elements of the magma")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "FiniteMagma":
        return cls(tuple(tuple(int(c) for c in row) for row in rows))

    @property
    def size(self) -> int:
        return len(self.table)

    @property
    def name(self) -> str:
        return "magma:" + ";".join(",".join(map(str, row)) for row in self.table)

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def is_closed(self, subset) -> bool:
        return all(self.table[a][b] in subset for a in subset for b in subset)

    def closure(self, generators) -> FrozenSet[int]:
        elems = set(generators)
        frontier = list(elems)
        while frontier:
            new = set()
            for a in list(elems):
                for b in frontier:
                    for c in (self.table[a][b], self.table[b][a]):
                        if c not in elems:
                            new.add(c)
            elems |= new
            frontier = list(new)
        return frozenset(elems)

    def idempotents(self) -> FrozenSet[int]:
        return frozenset(i for i in range(self.size) if self.table[i][i] == i)

    def relabel(self, perm: Sequence[int]) -> "FiniteMagma":
        """Isomorphic copy with element ``i`` renamed ``perm[i]``."""
        n = self.size
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        return FiniteMagma(
            tuple(tuple(perm[self.table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        )

    def to_json(self) -> dict:
        return {"size": self.size, "table": [list(r) for r in self.table]}


# -- ambients ---------------------------------------------------------------------


@dataclass(frozen=True)
class Ambient:
    name: str
    op: Callable[[Any, Any], Any]
    idempotents: str
    to_json: Callable[[Any], Any]
    from_json: Callable[[Any], Any]


def _lc_json(x):
    return x.to_json()


_AMBIENTS: Dict[str, Ambient] = {
    "lc-add": Ambient("lc-add", lambda a, b: a + b, "{0}", _lc_json, LCNumber.from_json),
    "q-add": Ambient(
        "q-add",
        lambda a, b: a + b,
        "{0}",
        lambda x: [x.numerator, x.denominator],
        lambda d: Fraction(d[0], d[1]),
    ),
    "seq-mul": Ambient(
        "seq-mul",
        lambda a, b: a * b,
        "0/1-valued sequences",
        lambda x: x.to_json(),
        SymbolicSequence.from_json,
    ),
}


def get_ambient(ambient) -> Ambient:
    if isinstance(ambient, Ambient):
        return ambient
    if isinstance(ambient, FiniteMagma):
        return Ambient(ambient.name, ambient.op, f"{sorted(ambient.idempotents())}", int, int)
    if ambient in _AMBIENTS:
        return _AMBIENTS[ambient]
    E = monoids.get_instance(ambient)
    idem = "{" + E.format(E.neutral) + "}" if E.has_inverses else "elements with x op x = x"
    return Ambient(E.name, E.op, idem, E.to_json, E.from_json)


def is_idempotent(ambient, x) -> bool:
    """``x op x == x`` under the ambient operation."""
    if isinstance(ambient, FiniteMagma):
        return ambient.op(x, x) == x
    return get_ambient(ambient).op(x, x) == x


# -- sub-structures ---------------------------------------------------------------

# Named additive subgroups of the field; each is a Q-subspace.
SUBGROUPS: Dict[str, Tuple[str, Callable[[LCNumber], bool]]] = {
    "mon0": ("Mon(0): zero and the infinitesimals", lambda x: lc.classify(x).in_monad),
    "fin0": ("Fin(0): the finite elements", lambda x: lc.classify(x).is_finite),
    "neg-laurent": (
        "Q-span of eps^q for q < 0",
        lambda x: x.den.is_one() and all(e < 0 for e, _ in x.num.terms),
    ),
    "laurent": ("Q-span of all eps^q (denominator 1)", lambda x: x.den.is_one()),
    "field": ("the whole field", lambda x: True),
}


@dataclass(frozen=True)
class SubStructure:
    """A sub-semigroup or sub-magma given by generators and a decision kind.

    ``kind`` is one of ``cyclic`` (``Z u`` or ``N u``), ``scalar-line``
    (``Q m``), ``generated`` (closure of the generators, computed to a
    fixpoint, or to ``depth`` when that is set) or ``predicate`` (a named
    subgroup from :data:`SUBGROUPS`).
    """

    kind: str
    generators: Tuple[Any, ...] = ()
    predicate: Optional[str] = None
    depth: Optional[int] = None

    @property
    def generator(self):
        return self.generators[0]


def scalar_line(m) -> SubStructure:
    return SubStructure("scalar-line", (m,))


def cyclic(u) -> SubStructure:
    return SubStructure("cyclic", (u,))


def generated(*gens, depth: Optional[int] = None) -> SubStructure:
    return SubStructure("generated", tuple(gens), depth=depth)


def contains(ambient, S: SubStructure, x) -> Optional[bool]:
    """Decide ``x in S``; ``None`` when membership is not decidable here."""
    name = ambient.name if isinstance(ambient, (FiniteMagma, Ambient)) else ambient
    if S.kind == "predicate":
        return SUBGROUPS[S.predicate][1](x)
    if S.kind == "generated":
        if isinstance(ambient, FiniteMagma):
            return x in _generated_set(ambient, S)
        return None
    g = S.generator
    if name == "q-add":
        if g == 0:
            return x == 0
        return True if S.kind == "scalar-line" else (Fraction(x) / g).denominator == 1
    if name == "lc-add":
        if x.is_zero():
            return True
        if g.is_zero():
            return False
        c = lc.line_ratio(x, g)
        if S.kind == "scalar-line":
            return c is not None
        return c is not None and c.denominator == 1
    E = monoids.get_instance(name)
    return E.solve(x, g) is not None


def _generated_set(M: FiniteMagma, S: SubStructure) -> FrozenSet[int]:
    if S.depth is None:
        return M.closure(S.generators)
    elems = set(S.generators)
    for _ in range(S.depth):
        elems |= {M.op(a, b) for a in elems for b in elems}
    return frozenset(elems)


@dataclass(frozen=True)
class DisjointVerdict:
    verdict: str  # "exact-disjoint" | "disjoint-bounded" | "overlap"
    reason: str
    witness: Any = None
    bound: Optional[int] = None


def _line_reason(a: LCNumber, b: LCNumber) -> str:
    ma, mb = lc.is_monomial(a), lc.is_monomial(b)
    if ma and mb and ma[0] != mb[0]:
        return "exponent-mismatch"
    if lc.valuation(a) != lc.valuation(b):
        return "valuation"
    return "solved-membership"


def disjoint_up_to_idempotents(ambient, A: SubStructure, B: SubStructure, bound: int = 1000) -> DisjointVerdict:
    """Is every common element of ``A`` and ``B`` idempotent?"""
    name = ambient.name if isinstance(ambient, (FiniteMagma, Ambient)) else ambient
    if isinstance(ambient, FiniteMagma) and A.kind == "generated" and B.kind == "generated":
        common = _generated_set(ambient, A) & _generated_set(ambient, B)
        bad = sorted(x for x in common if not is_idempotent(ambient, x))
        if bad:
            return DisjointVerdict("overlap", "exhaustive closure", bad[0])
        return DisjointVerdict("exact-disjoint", "exhaustive closure")
    single = ("cyclic", "scalar-line")
    if A.kind in single and B.kind in single:
        if name == "q-add":
            ga, gb = Fraction(A.generator), Fraction(B.generator)
            if ga == 0 or gb == 0:
                return DisjointVerdict("exact-disjoint", "trivial member {0}")
            # Q a and Q b are both all of Q; Z a and Z b meet in Z lcm
            witness = gb if A.kind == "scalar-line" else _rational_common_multiple(ga, gb, A, B)
            return DisjointVerdict("overlap", "every nonzero line of Q is Q itself", witness)
        if name == "lc-add":
            return _lc_pair(A, B)
        E = monoids.get_instance(name)
        if A.kind == "cyclic" and B.kind == "cyclic":
            v = monoids._pair_verdict(E, 0, 1, A.generator, B.generator, bound)
            return DisjointVerdict(v.verdict, v.reason, v.witness, bound if v.verdict == "disjoint-bounded" else None)
    return _bounded_disjoint(ambient, A, B, bound)


def _rational_common_multiple(a: Fraction, b: Fraction, A, B):
    if A.kind == "cyclic" and B.kind == "cyclic":
        c = a / b  # q a = p b
        return c.denominator * a
    return b if B.kind == "cyclic" else a


def _lc_pair(A: SubStructure, B: SubStructure) -> DisjointVerdict:
    a, b = A.generator, B.generator
    if a.is_zero() or b.is_zero():
        return DisjointVerdict("exact-disjoint", "trivial member {0}")
    c = lc.line_ratio(a, b)
    if c is None:
        return DisjointVerdict("exact-disjoint", _line_reason(a, b))
    # a = c b; a common nonzero element of the two sets
    if A.kind == "scalar-line" and B.kind == "scalar-line":
        witness = b
    elif A.kind == "cyclic" and B.kind == "cyclic":
        witness = c.denominator * a
    else:
        witness = a if A.kind == "cyclic" else b
    return DisjointVerdict("overlap", f"same line, ratio {c}", witness)


def _enumerate(ambient, S: SubStructure, bound: int):
    if S.kind in ("cyclic", "scalar-line"):
        op = get_ambient(ambient).op
        y = S.generator
        yield y
        for _ in range(bound - 1):
            y = op(y, S.generator)
            yield y
        return
    if S.kind == "generated":
        op = get_ambient(ambient).op
        level = list(S.generators)
        seen = []
        for _ in range(bound):
            fresh = [x for x in level if x not in seen]
            if not fresh:
                return
            seen.extend(fresh)
            yield from fresh
            level = [op(a, b) for a in seen for b in fresh] + [op(b, a) for a in seen for b in fresh]
            if len(seen) > bound:
                return
        return
    raise ValueError("predicate members cannot be enumerated")


def _bounded_disjoint(ambient, A, B, bound) -> DisjointVerdict:
    for first, second in ((A, B), (B, A)):
        try:
            elems = list(itertools.islice(_enumerate(ambient, first, bound), bound))
        except ValueError:
            continue
        for x in elems:
            member = contains(ambient, second, x)
            if member is None:
                continue
            if member and not is_idempotent(ambient, x):
                return DisjointVerdict("overlap", "solved-membership", x)
        return DisjointVerdict("disjoint-bounded", f"bounded({bound})", bound=bound)
    return DisjointVerdict("disjoint-bounded", f"bounded({bound})", bound=bound)


# -- certificates ---------------------------------------------------------------------


@dataclass
class Member:
    structure: SubStructure
    proper_witness: Any


@dataclass
class PairProof:
    i: int
    j: int
    reason: str


@dataclass
class DisjointFamilyCertificate:
    ambient: str
    F: str
    F_witness: Any
    members: List[Member]
    pairs: List[PairProof]
    family: Optional[Dict[str, Any]] = None  # {"base": LCNumber, "exponents": [Fraction]}
    idempotents: str = "{0}"
    maximality: str = "not-checked"

    def to_json(self) -> dict:
        amb = get_ambient(self.ambient)
        out = {
            "schema": CERT_SCHEMA,
            "ambient": self.ambient,
            "F": {"name": self.F, "witness": amb.to_json(self.F_witness)},
            "members": [
                {
                    "kind": m.structure.kind,
                    "generator": amb.to_json(m.structure.generator),
                    "proper_witness": amb.to_json(m.proper_witness),
                }
                for m in self.members
            ],
            "pairs": [{"i": p.i, "j": p.j, "reason": p.reason} for p in self.pairs],
            "idempotents": self.idempotents,
            "maximality": self.maximality,
        }
        if self.family is not None:
            out["family"] = {
                "base": amb.to_json(self.family["base"]),
                "exponents": [str(a) for a in self.family["exponents"]],
            }
        return out

    def dumps(self) -> str:
        return dumps_json(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> "DisjointFamilyCertificate":
        if data.get("schema") != CERT_SCHEMA:
            raise ValueError(f"unsupported certificate schema {data.get('schema')!r}")
        amb = get_ambient(data["ambient"])
        family = None
        if "family" in data:
            family = {
                "base": amb.from_json(data["family"]["base"]),
                "exponents": [Fraction(a) for a in data["family"]["exponents"]],
            }
        return cls(
            ambient=data["ambient"],
            F=data["F"]["name"],
            F_witness=amb.from_json(data["F"]["witness"]),
            members=[
                Member(SubStructure(m["kind"], (amb.from_json(m["generator"]),)), amb.from_json(m["proper_witness"]))
                for m in data["members"]
            ],
            pairs=[PairProof(p["i"], p["j"], p["reason"]) for p in data["pairs"]],
            family=family,
            idempotents=data.get("idempotents", "{0}"),
            maximality=data.get("maximality", "not-checked"),
        )


def dumps_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _member_in_F(F: str, S: SubStructure) -> bool:
    # F is a Q-subspace, so a line or cyclic group lies in F iff its generator does
    return SUBGROUPS[F][1](S.generator)


def _pick_F(generators: Sequence[LCNumber], candidates: Sequence[str]) -> str:
    for F in candidates:
        if all(SUBGROUPS[F][1](g) for g in generators):
            return F
    raise NotProper("no registered proper subgroup of the field contains every member")


_F_WITNESS = {
    "mon0": lc.ONE,
    "fin0": 1 / EPS,
    "neg-laurent": lc.ONE,
    "laurent": 1 / (1 + EPS),
}


def _proper_witness(F: str, S: SubStructure) -> LCNumber:
    g = S.generator
    for cand in (g * EPS, g / EPS, g / 2):
        if SUBGROUPS[F][1](cand) and not contains("lc-add", S, cand):
            return cand
    raise NotProper(f"no witness that {S.kind} through {g} is proper in {F}")


def build_line_family(ambient: str, generators: Sequence, kind: str = "scalar-line") -> DisjointFamilyCertificate:
    """Certificate for the lines (or cyclic groups) through ``generators``.

    On ``q-add`` this always fails: every nonzero line of Q is Q itself, so
    no member can be proper.
    """
    if len(generators) < 2:
        raise ValueError("a family needs at least two members")
    if ambient == "q-add":
        gens = [Fraction(g) for g in generators]
        if any(g == 0 for g in gens):
            raise NotProper("the line through 0 is {0}, not a line")
        raise NotProper(
            "every nonzero line Q*x of the rationals is the whole carrier Q, so it is not a proper "
            f"sub-structure; lines through {', '.join(map(str, gens))} all equal Q"
        )
    if ambient != "lc-add":
        raise ValueError(f"line families are built in lc-add or q-add, not {ambient!r}")
    gens = [LCNumber.coerce(g) for g in generators]
    if any(g.is_zero() for g in gens):
        raise NotProper("the line through 0 is {0}, not a line")
    F = _pick_F(gens, ("mon0", "neg-laurent", "fin0", "laurent"))
    members = [Member(SubStructure(kind, (g,)), None) for g in gens]
    for m in members:
        m.proper_witness = _proper_witness(F, m.structure)
    pairs = []
    for i, j in itertools.combinations(range(len(members)), 2):
        v = disjoint_up_to_idempotents("lc-add", members[i].structure, members[j].structure)
        if v.verdict == "overlap":
            raise NotProper(f"members {i} and {j} overlap at {v.witness}")
        pairs.append(PairProof(i, j, v.reason))
    return DisjointFamilyCertificate("lc-add", F, _F_WITNESS[F], members, pairs)


def build_family_powers(base: LCNumber, exponents: Sequence, kind: str) -> DisjointFamilyCertificate:
    """Lines ``Q * base^a`` for each exponent ``a >= 1``.

    ``kind`` is ``"infinitesimal"`` (members inside Mon(0)) or
    ``"infinite"`` (members inside the span of negative powers of eps).
    """
    cls = lc.classify(base)
    expected = {"infinitesimal": Classification.INFINITESIMAL, "infinite": Classification.INFINITE}
    if kind not in expected:
        raise ValueError(f"kind must be 'infinitesimal' or 'infinite', not {kind!r}")
    if cls is not expected[kind]:
        raise WrongKind(f"base {base} is {cls.value}, not {kind}")
    exps = [Fraction(a) for a in exponents]
    low = [a for a in exps if a < 1]
    if low:
        raise ExponentBelowOne(f"exponents must be >= 1, got {low[0]}")
    if len(set(exps)) != len(exps):
        raise ValueError("exponents must be pairwise distinct")
    gens = [_power_line(base, a) for a in exps]
    F = "mon0" if kind == "infinitesimal" else _pick_F(gens, ("neg-laurent", "laurent"))
    members = []
    for g in gens:
        S = scalar_line(g)
        members.append(Member(S, _proper_witness(F, S)))
    pairs = []
    for i, j in itertools.combinations(range(len(members)), 2):
        v = disjoint_up_to_idempotents("lc-add", members[i].structure, members[j].structure)
        if v.verdict != "exact-disjoint":
            raise AssertionError(f"power lines {i} and {j} are not disjoint: {v}")
        pairs.append(PairProof(i, j, v.reason))
    return DisjointFamilyCertificate(
        "lc-add", F, _F_WITNESS[F], members, pairs, family={"base": base, "exponents": exps}
    )


def _power_line(base: LCNumber, a: Fraction) -> LCNumber:
    """Generator of the line through ``base^a``."""
    if a.denominator == 1:
        return base ** int(a)
    mono = lc.is_monomial(base)
    if mono is None:
        raise ValueError(f"base^{a} is not defined for the non-monomial base {base}")
    try:
        return base.rational_power(a)
    except ValueError:
        # c^a irrational: the real line through c^a eps^(qa) is the line through eps^(qa)
        return LCNumber.monomial(1, mono[0] * a)


def certificate_from_family(family: "monoids.SubgroupFamily") -> DisjointFamilyCertificate:
    """Hyperspace certificate for a disjoint cyclic family on ``lc-add``."""
    if family.instance != "lc-add":
        raise ValueError("certificates are built for the lc-add instance only")
    cert = build_line_family("lc-add", family.generators, kind="cyclic")
    return cert


@dataclass
class VerificationReport:
    ok: bool
    checks: List[Tuple[str, bool, str]] = field(default_factory=list)
    overlaps: List[Tuple[int, int, Any]] = field(default_factory=list)
    downgraded: List[Tuple[int, int]] = field(default_factory=list)
    maximality: str = "not-checked"

    def to_json(self, ambient: str = "lc-add") -> dict:
        amb = get_ambient(ambient)
        return {
            "schema": "infinitesimals.verification/1",
            "ok": self.ok,
            "checks": [{"check": c, "passed": p, "detail": d} for c, p, d in self.checks],
            "overlaps": [{"i": i, "j": j, "witness": amb.to_json(w)} for i, j, w in self.overlaps],
            "downgraded": [{"i": i, "j": j} for i, j in self.downgraded],
            "maximality": self.maximality,
        }


def verify_certificate(cert: DisjointFamilyCertificate, bound: int = 1000) -> VerificationReport:
    """Re-check every invariant of ``cert`` independently of how it was built."""
    rep = VerificationReport(ok=True)

    def record(name, passed, detail=""):
        rep.checks.append((name, bool(passed), detail))
        if not passed:
            rep.ok = False

    if cert.ambient != "lc-add":
        record("ambient", False, f"unsupported ambient {cert.ambient!r}")
        return rep
    if cert.F not in SUBGROUPS or cert.F == "field":
        record("F proper in E", False, f"F={cert.F!r} is not a registered proper subgroup")
        return rep
    in_F = SUBGROUPS[cert.F][1]
    record("F proper in E", not in_F(cert.F_witness), f"witness {cert.F_witness} lies outside {cert.F}")
    n = len(cert.members)
    record("family size", n >= 2, f"{n} members")
    for k, m in enumerate(cert.members):
        S = m.structure
        if S.kind not in ("scalar-line", "cyclic") or S.generator.is_zero():
            record(f"member {k} kind", False, f"{S.kind} through {S.generator}")
            continue
        record(f"member {k} inside F", _member_in_F(cert.F, S), f"generator {S.generator}")
        w = m.proper_witness
        record(
            f"member {k} proper in F",
            in_F(w) and not contains("lc-add", S, w),
            f"witness {w}",
        )
    if cert.family is not None:
        expected = [_power_line(cert.family["base"], a) for a in cert.family["exponents"]]
        got = [m.structure.generator for m in cert.members]
        record(
            "members match parameterized family",
            len(expected) == len(got) and all(lc.same_line(a, b) for a, b in zip(expected, got)),
            f"base {cert.family['base']}, exponents {', '.join(map(str, cert.family['exponents']))}",
        )
    recorded = {(p.i, p.j): p.reason for p in cert.pairs}
    for i, j in itertools.combinations(range(n), 2):
        v = disjoint_up_to_idempotents("lc-add", cert.members[i].structure, cert.members[j].structure, bound)
        claim = recorded.get((i, j))
        if v.verdict == "overlap":
            rep.overlaps.append((i, j, v.witness))
            record(f"pair ({i},{j}) disjoint", False, f"overlap at {v.witness}")
        elif v.verdict == "disjoint-bounded":
            rep.downgraded.append((i, j))
            record(f"pair ({i},{j}) disjoint", True, f"bounded evidence only ({v.reason})")
        else:
            record(
                f"pair ({i},{j}) disjoint",
                claim is None or claim == v.reason,
                f"{v.reason}" + ("" if claim in (None, v.reason) else f" (certificate says {claim})"),
            )
        if claim is None:
            record(f"pair ({i},{j}) proof recorded", False, "missing proof record")
    record("maximality of the family", True, "not checked (no decision procedure)")
    return rep


# -- finite magma scan ------------------------------------------------------------


@dataclass
class ScanReport:
    magma: FiniteMagma
    submagmas: List[FrozenSet[int]]
    family: List[FrozenSet[int]]
    note: str = INFINITE_FAMILY_NOTE

    @property
    def size(self) -> int:
        return len(self.family)

    @property
    def union(self) -> FrozenSet[int]:
        """The set of elements covered by the family."""
        return frozenset().union(*self.family) if self.family else frozenset()

    def to_json(self) -> dict:
        return {
            "schema": SCAN_SCHEMA,
            "magma": self.magma.to_json(),
            "submagmas": [sorted(s) for s in self.submagmas],
            "family": [sorted(s) for s in self.family],
            "family_size": self.size,
            "union": sorted(self.union),
            "idempotents": sorted(self.magma.idempotents()),
            "hyperspace": False,
            "note": self.note,
        }


def proper_submagmas(M: FiniteMagma) -> List[FrozenSet[int]]:
    """All nonempty proper subsets closed under the table, by size then content."""
    n = M.size
    out = []
    for r in range(1, n):
        for subset in itertools.combinations(range(n), r):
            if M.is_closed(subset):
                out.append(frozenset(subset))
    return out


def finite_magma_scan(M: FiniteMagma, max_size: int = 6) -> ScanReport:
    """Largest family of proper sub-magmas pairwise disjoint up to idempotents."""
    if M.size > max_size:
        raise TooLarge(f"magma of size {M.size} exceeds the exhaustive bound {max_size}")
    subs = proper_submagmas(M)
    idem = M.idempotents()
    G = nx.Graph()
    G.add_nodes_from(range(len(subs)))
    for a, b in itertools.combinations(range(len(subs)), 2):
        if (subs[a] & subs[b]) <= idem:
            G.add_edge(a, b)
    clique, _ = nx.max_weight_clique(G, weight=None) if subs else ([], 0)
    return ScanReport(M, subs, [subs[k] for k in sorted(clique)])
