"""Ordered monoids, Archimedean conditions and the disjoint-subgroup construction.

Instances are registered by name (``nat-add``, ``lex-z2``, ``lex-z3``,
``lc-add``, ``seq-add-pointwise``).  Each one carries its operation, order
and a handful of *exactness oracles* that turn otherwise unbounded searches
into certificates:

``reach(u, x)``
    least ``n`` with ``n*u >= x``, or ``None`` when no ``n`` exists.
``escape_bound(x, y)``
    ``None`` when ``n*x <= y`` for every ``n``, else some ``N`` with
    ``N*x`` not ``<= y``.
``dominate(u)``
    an element above every multiple of ``u`` (only on non-Archimedean
    instances).
``commensurable(u, v)``
    nonzero ``(n1, n2)`` with ``n1*u == n2*v``, or ``None``, plus a reason.

All orders are translation compatible, so for ``x >= 0`` the orbit
``0, x, 2x, ...`` is nondecreasing and the set of escaping ``n`` is upward
closed; bounded checks therefore only need a single comparison.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd, lcm
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from . import lc
from . import sequences as sq
from .errors import (
    ForeignElement,
    NotLinear,
    OracleMissing,
    PartialOrderOnly,
    TrivialMonoid,
)
from .lc import EPS, LCNumber
from .sequences import SymbolicSequence

REPORT_SCHEMA = "infinitesimals.claims/1"
FAMILY_SCHEMA = "infinitesimals.family/1"

Commensurable = Tuple[Optional[Tuple[int, int]], str]


@dataclass(frozen=True)
class MonoidInstance:
    name: str
    op: Callable[[Any, Any], Any]
    neutral: Any
    leq: Callable[[Any, Any], bool]
    linear: bool
    contains: Callable[[Any], bool]
    sampler: Callable[[random.Random], Any]
    probes: Tuple[Any, ...]
    solve: Callable[[Any, Any], Optional[int]]
    strictly_above: Callable[[Any], Any]
    commensurable: Callable[[Any, Any], Commensurable]
    to_json: Callable[[Any], Any]
    from_json: Callable[[Any], Any]
    has_inverses: bool = True
    inverse: Optional[Callable[[Any], Any]] = None
    reach: Optional[Callable[[Any, Any], Optional[int]]] = None
    escape_bound: Optional[Callable[[Any, Any], Optional[int]]] = None
    dominate: Optional[Callable[[Any], Any]] = None
    dominate_reason: Optional[Callable[[Any, Any], str]] = None
    archimedean_unit: Optional[Callable[[Any], bool]] = None
    orbit_reason: Optional[Callable[[Any, Any], str]] = None
    archimedean_43_reason: Optional[str] = None
    format: Callable[[Any], str] = str

    def check(self, *elements) -> None:
        for x in elements:
            if not self.contains(x):
                raise ForeignElement(f"{x!r} is not an element of {self.name}")

    def is_positive(self, x) -> bool:
        """Membership in E+ (``x >= 0``)."""
        return self.leq(self.neutral, x)

    def lt(self, a, b) -> bool:
        return self.leq(a, b) and a != b

    def positive_probes(self) -> List[Any]:
        return [x for x in self.probes if self.is_positive(x)]


_REGISTRY: Dict[str, MonoidInstance] = {}


def register(instance: MonoidInstance) -> MonoidInstance:
    _REGISTRY[instance.name] = instance
    return instance


def get_instance(name: str) -> MonoidInstance:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown monoid instance {name!r}; known: {', '.join(sorted(_REGISTRY))}") from None


def instance_names() -> List[str]:
    return sorted(_REGISTRY)


# -- multiples ------------------------------------------------------------------


def nfold(E: MonoidInstance, u, n: int):
    """``u op u op ... op u`` (``n`` times) by repeated doubling."""
    if n < 0:
        if E.inverse is None:
            raise ValueError(f"{E.name} has no inverses; n must be natural")
        return nfold(E, E.inverse(u), -n)
    result, base = E.neutral, u
    while n:
        if n & 1:
            result = E.op(result, base)
        base = E.op(base, base)
        n >>= 1
    return result


# -- unit condition and bounded-orbit checks -----------------------------------------------------


@dataclass(frozen=True)
class Check42:
    verdict: str  # "witness-holds" | "fails-at"
    unit: Any
    element: Any = None
    certified: bool = False
    universal: bool = False
    n_values: Tuple[int, ...] = ()


def check_42(E: MonoidInstance, u, sample: Sequence, n_bound: int) -> Check42:
    """Does ``u`` have, for every ``x`` in ``sample``, a multiple ``n*u >= x``?

    With a ``reach`` oracle every answer is exact; otherwise ``n`` is
    searched up to ``n_bound`` and a failure is bounded evidence only.
    """
    if not E.linear:
        raise PartialOrderOnly(f"{E.name} is only partially ordered")
    E.check(u, *sample)
    if not E.is_positive(u):
        raise ValueError("u must lie in E+")
    found = []
    for x in sample:
        if E.reach is not None:
            n = E.reach(u, x)
            if n is None:
                return Check42("fails-at", u, x, certified=True)
        else:
            n = _least_reaching(E, u, x, n_bound)
            if n is None:
                return Check42("fails-at", u, x, certified=False)
        found.append(n)
    universal = bool(E.archimedean_unit and E.archimedean_unit(u))
    return Check42(
        "witness-holds", u, certified=E.reach is not None, universal=universal, n_values=tuple(found)
    )


def _least_reaching(E, u, x, n_bound):
    if not E.leq(x, nfold(E, u, n_bound)):
        return None
    lo, hi = 0, n_bound
    while lo < hi:
        mid = (lo + hi) // 2
        if E.leq(x, nfold(E, u, mid)):
            hi = mid
        else:
            lo = mid + 1
    return lo


@dataclass(frozen=True)
class Check44:
    verdict: str  # "bounded-orbit-evidence" | "escapes-at"
    x: Any
    y: Any
    n: Optional[int] = None
    bound: int = 0
    certified: bool = False
    reason: str = ""


def check_44(E: MonoidInstance, x, y, n_bound: int) -> Check44:
    """Is the orbit ``{n*x}`` bounded above by ``y``?

    Checks ``n*x <= y`` for all ``n <= n_bound`` (one comparison suffices by
    monotonicity of the orbit) and lets the instance's ``escape_bound``
    oracle upgrade the answer to a certificate for all ``n``.
    """
    E.check(x, y)
    if not (E.is_positive(x) and E.is_positive(y)):
        raise ValueError("x and y must lie in E+")
    exact = E.escape_bound(x, y) if E.escape_bound is not None else None
    if E.escape_bound is not None and exact is not None:
        return Check44("escapes-at", x, y, _least_escape(E, x, y, exact), n_bound, True)
    if not E.leq(nfold(E, x, n_bound), y):
        if E.escape_bound is not None:
            raise AssertionError(f"{E.name}: escape_bound certified a bounded orbit that escapes")
        return Check44("escapes-at", x, y, _least_escape(E, x, y, n_bound), n_bound, True)
    if E.escape_bound is not None:
        reason = E.orbit_reason(x, y) if E.orbit_reason else "instance oracle"
        return Check44("bounded-orbit-evidence", x, y, None, n_bound, True, reason)
    return Check44("bounded-orbit-evidence", x, y, None, n_bound, False)


def _least_escape(E, x, y, upper: int) -> int:
    lo, hi = 0, upper
    while lo < hi:
        mid = (lo + hi) // 2
        if E.leq(nfold(E, x, mid), y):
            lo = mid + 1
        else:
            hi = mid
    return lo


# -- disjoint cyclic family construction ----------------------------------------------------


@dataclass(frozen=True)
class SubgroupFamily:
    """Cyclic sub-structures ``Z u_i`` (``N u_i`` without inverses).

    ``dominators[i]`` bounds every multiple of ``generators[i]`` and
    ``generators[i+1] > dominators[i]``.
    """

    instance: str
    generators: Tuple[Any, ...]
    dominators: Tuple[Any, ...] = ()
    group: bool = True

    def chain(self) -> List[Any]:
        out = []
        for i, u in enumerate(self.generators):
            out.append(u)
            if i < len(self.dominators):
                out.append(self.dominators[i])
        return out

    def to_json(self) -> dict:
        E = get_instance(self.instance)
        return {
            "schema": FAMILY_SCHEMA,
            "instance": self.instance,
            "kind": "group" if self.group else "semigroup",
            "generators": [E.to_json(u) for u in self.generators],
            "dominators": [E.to_json(x) for x in self.dominators],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SubgroupFamily":
        E = get_instance(data["instance"])
        return cls(
            data["instance"],
            tuple(E.from_json(u) for u in data["generators"]),
            tuple(E.from_json(x) for x in data.get("dominators", [])),
            data.get("kind", "group") == "group",
        )


def theorem41_construct(E: MonoidInstance, u1=None, depth: int = 3) -> SubgroupFamily:
    """Build ``0 < u1 <= x1 < u2 <= x2 < ...`` with ``x_i = dominate(u_i)``.

    ``u_{i+1}`` is ``x_i op u1``; the family is ``Z u_1, ..., Z u_depth``.
    """
    if not E.linear:
        raise NotLinear(f"{E.name} is not linearly ordered")
    if E.dominate is None:
        raise OracleMissing(f"{E.name} has no dominate oracle: it has an Archimedean unit")
    if u1 is None:
        positives = [x for x in E.positive_probes() if x != E.neutral]
        if not positives:
            raise TrivialMonoid(f"{E.name} has no element above the neutral element")
        u1 = positives[0]
    E.check(u1)
    if not E.lt(E.neutral, u1):
        raise ValueError("u1 must be strictly positive")
    gens, doms = [u1], []
    u = u1
    for i in range(depth):
        x = E.dominate(u)
        if not E.leq(u, x):
            raise AssertionError(f"dominate({E.format(u)}) is below its argument")
        doms.append(x)
        if i == depth - 1:
            break
        nxt = E.op(x, u1)
        if not E.lt(x, nxt):
            nxt = E.strictly_above(x)
        gens.append(nxt)
        u = nxt
    return SubgroupFamily(E.name, tuple(gens), tuple(doms), E.has_inverses)


def chain_is_strict(E: MonoidInstance, family: SubgroupFamily) -> bool:
    """Check ``0 < u1 <= x1 < u2 <= x2 < ...`` exactly."""
    if not E.lt(E.neutral, family.generators[0]):
        return False
    for i, (u, x) in enumerate(zip(family.generators, family.dominators)):
        if not E.leq(u, x):
            return False
        if i + 1 < len(family.generators) and not E.lt(x, family.generators[i + 1]):
            return False
    return True


@dataclass(frozen=True)
class PairVerdict:
    i: int
    j: int
    verdict: str  # "exact-disjoint" | "disjoint-bounded" | "overlap"
    reason: str
    witness: Any = None
    n1: Optional[int] = None
    n2: Optional[int] = None

    def to_json(self, E: MonoidInstance) -> dict:
        out = {"i": self.i, "j": self.j, "verdict": self.verdict, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = E.to_json(self.witness)
            out["n1"], out["n2"] = self.n1, self.n2
        return out


def _is_idempotent(E: MonoidInstance, x) -> bool:
    return E.op(x, x) == x


def verify_disjoint(family: SubgroupFamily, bound: int = 1000) -> List[PairVerdict]:
    """Per-pair verdicts on whether ``Z u_i`` and ``Z u_j`` meet outside the
    idempotents.  Exact where the instance decides commensurability, bounded
    over ``0 < n1, n2 <= bound`` otherwise."""
    E = get_instance(family.instance)
    E.check(*family.generators)
    out = []
    gens = family.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            out.append(_pair_verdict(E, i, j, gens[i], gens[j], bound))
    return out


def _pair_verdict(E, i, j, u, v, bound) -> PairVerdict:
    try:
        solved, reason = E.commensurable(u, v)
    except NotImplementedError:
        return _bounded_pair(E, i, j, u, v, bound)
    if solved is None:
        return PairVerdict(i, j, "exact-disjoint", reason)
    n1, n2 = solved
    y = nfold(E, u, n1)
    if _is_idempotent(E, y):
        return PairVerdict(i, j, "exact-disjoint", reason + "; common elements are idempotent")
    return PairVerdict(i, j, "overlap", reason, y, n1, n2)


def _bounded_pair(E, i, j, u, v, bound) -> PairVerdict:
    y = E.neutral
    for n1 in range(1, bound + 1):
        y = E.op(y, u)
        n2 = E.solve(y, v)
        if n2 is not None and n2 != 0 and abs(n2) <= bound and not _is_idempotent(E, y):
            return PairVerdict(i, j, "overlap", "solved-membership", y, n1, n2)
    return PairVerdict(i, j, "disjoint-bounded", f"bounded({bound})")


# -- claim audit ---------------------------------------------------------------------


@dataclass(frozen=True)
class Bounds:
    sample_size: int = 1000
    n_bound: int = 10_000
    pair_bound: int = 1000
    depth: int = 10
    seed: int = 0


@dataclass
class ClaimReport:
    claim: str  # "Lemma4.1" | "Lemma4.2" | "Theorem4.1" | "Corollary4.1"
    instance: str
    verdict: str  # "supported" | "counterexample" | "bounded-evidence"
    witnesses: Dict[str, Any] = field(default_factory=dict)
    bounds: Dict[str, int] = field(default_factory=dict)
    transcript: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        E = get_instance(self.instance)
        return {
            "schema": REPORT_SCHEMA,
            "claim": self.claim,
            "instance": self.instance,
            "verdict": self.verdict,
            "witnesses": {k: E.to_json(v) for k, v in self.witnesses.items()},
            "bounds": dict(self.bounds),
            "transcript": list(self.transcript),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ClaimReport":
        if data.get("schema") != REPORT_SCHEMA:
            raise ValueError(f"unsupported schema {data.get('schema')!r}")
        E = get_instance(data["instance"])
        return cls(
            data["claim"],
            data["instance"],
            data["verdict"],
            {k: E.from_json(v) for k, v in data["witnesses"].items()},
            dict(data["bounds"]),
            list(data["transcript"]),
        )


@dataclass
class _Status:
    value: str  # "certified-true" | "certified-false" | "bounded-true" | "unknown" | "not-applicable"
    witnesses: Dict[str, Any] = field(default_factory=dict)
    note: str = ""


def _standard_sample(E: MonoidInstance, bounds: Bounds) -> List[Any]:
    rng = random.Random(bounds.seed)
    return list(E.probes) + [E.sampler(rng) for _ in range(bounds.sample_size)]


def _status_42(E: MonoidInstance, bounds: Bounds) -> _Status:
    if not E.linear:
        return _Status("not-applicable", note="the unit condition presumes a linear order")
    for u in E.positive_probes():
        if E.archimedean_unit and E.archimedean_unit(u):
            return _Status(
                "certified-true", {"u": u}, f"unit condition holds with u={E.format(u)} (certified by the instance's reach oracle)"
            )
    if E.dominate is not None:
        u = next(x for x in E.positive_probes() if x != E.neutral)
        x = E.dominate(u)
        why = E.dominate_reason(u, x) if E.dominate_reason else "dominate oracle"
        return _Status(
            "certified-false",
            {"u": u, "x": x},
            f"unit condition fails: every u in E+ has a dominating x; e.g. u={E.format(u)}, x={E.format(x)} ({why})",
        )
    sample = _standard_sample(E, bounds)
    for u in E.positive_probes():
        if u == E.neutral:
            continue
        res = check_42(E, u, sample, bounds.n_bound)
        if res.verdict == "witness-holds":
            return _Status("bounded-true", {"u": u}, f"unit condition witness u={E.format(u)} on {len(sample)} samples")
    return _Status("unknown", note="no unit witness found among probes")


def _status_43(E: MonoidInstance, bounds: Bounds) -> _Status:
    positives = E.positive_probes()
    for x in positives:
        if x == E.neutral:
            continue
        for y in positives:
            res = check_44(E, x, y, bounds.n_bound)
            if res.verdict == "bounded-orbit-evidence" and res.certified:
                return _Status(
                    "certified-false",
                    {"x": x, "y": y},
                    f"bounded-orbit condition fails: x={E.format(x)} != 0 and n*x <= y={E.format(y)} for all n ({res.reason})",
                )
    if E.archimedean_43_reason:
        return _Status("certified-true", note=f"bounded-orbit condition holds: {E.archimedean_43_reason}")
    return _Status("bounded-true", note=f"no bounded nonzero orbit among probes up to n={bounds.n_bound}")


def audit_claims(E: MonoidInstance, bounds: Bounds = Bounds()) -> List[ClaimReport]:
    """Audit the four claims Lemma4.1, Lemma4.2, Theorem4.1, Corollary4.1 on ``E``."""
    bd = {
        "sample_size": bounds.sample_size,
        "n_bound": bounds.n_bound,
        "pair_bound": bounds.pair_bound,
        "depth": bounds.depth,
    }
    s42 = _status_42(E, bounds)
    s43 = _status_43(E, bounds)
    reports = [
        _lemma41(E, s42, s43, bd),
        _lemma42(E, s42, s43, bd),
    ]
    thm, hyperspace = _theorem41(E, s42, bounds, bd)
    reports.append(thm)
    reports.append(_corollary41(E, s42, hyperspace, bd))
    return reports


def _lemma41(E, s42, s43, bd) -> ClaimReport:
    r = ClaimReport("Lemma4.1", E.name, "bounded-evidence", bounds=dict(bd))
    r.transcript += [s42.note, s43.note]
    if s42.value == "certified-true" and s43.value == "certified-false":
        r.verdict = "counterexample"
        r.witnesses = {"u": s42.witnesses["u"], "x": s43.witnesses["x"], "y": s43.witnesses["y"]}
        r.transcript.append("premise (unit condition) certified and conclusion (bounded-orbit condition) refuted: the implication fails here")
    elif s43.value == "certified-true":
        r.verdict = "supported"
        r.transcript.append("conclusion (bounded-orbit condition) certified")
    elif s42.value in ("certified-false", "not-applicable"):
        r.verdict = "supported"
        r.transcript.append("premise (unit condition) does not hold; implication holds vacuously")
    return r


def _lemma42(E, s42, s43, bd) -> ClaimReport:
    r = ClaimReport("Lemma4.2", E.name, "bounded-evidence", bounds=dict(bd))
    if not E.linear:
        r.verdict = "supported"
        r.transcript.append("order is not linear; the lemma's hypothesis is not met (vacuous)")
        return r
    r.transcript += [s43.note, s42.note]
    if s43.value == "certified-false":
        r.verdict = "supported"
        r.transcript.append("premise (bounded-orbit condition) fails; implication holds vacuously")
    elif s42.value == "certified-true":
        r.verdict = "supported"
        r.witnesses = dict(s42.witnesses)
        r.transcript.append("conclusion (unit condition) certified")
    elif s42.value == "certified-false" and s43.value == "certified-true":
        r.verdict = "counterexample"
        r.witnesses = dict(s42.witnesses)
        r.transcript.append("bounded-orbit condition certified while the unit condition is refuted")
    return r


def _theorem41(E, s42, bounds: Bounds, bd) -> Tuple[ClaimReport, Optional[bool]]:
    r = ClaimReport("Theorem4.1", E.name, "bounded-evidence", bounds=dict(bd))
    if not E.linear:
        r.verdict = "supported"
        r.transcript.append("order is not linear; the theorem's hypothesis is not met (vacuous)")
        return r, None
    if E.dominate is None:
        r.transcript.append(s42.note)
        if s42.value == "certified-true":
            r.verdict = "supported"
            r.transcript.append("E has an Archimedean unit; hypothesis not met (vacuous)")
        return r, False
    from .hyperspace import certificate_from_family, verify_certificate

    family = theorem41_construct(E, depth=bounds.depth)
    r.witnesses = {f"u{i + 1}": u for i, u in enumerate(family.generators)}
    strict = chain_is_strict(E, family)
    verdicts = verify_disjoint(family, bounds.pair_bound)
    r.transcript.append(s42.note)
    r.transcript.append(
        f"constructed {len(family.generators)} generators; chain u1 <= x1 < u2 <= ... strictly increasing: {strict}"
    )
    kinds = {v.verdict for v in verdicts}
    r.transcript.append(
        f"{len(verdicts)} pairs: " + ", ".join(f"{k}={sum(v.verdict == k for v in verdicts)}" for k in sorted(kinds))
    )
    overlaps = [v for v in verdicts if v.verdict == "overlap"]
    if not strict:
        r.verdict = "counterexample"
        r.transcript.append("chain is not strictly increasing")
    elif overlaps:
        v = overlaps[0]
        r.verdict = "counterexample"
        r.witnesses["overlap"] = v.witness
        r.transcript.append(f"pair ({v.i}, {v.j}) overlaps at {E.format(v.witness)}")
    elif kinds == {"exact-disjoint"}:
        report = verify_certificate(certificate_from_family(family))
        r.transcript.append(f"hyperspace certificate verification: {'passed' if report.ok else 'failed'}")
        r.verdict = "supported" if report.ok else "counterexample"
        r.transcript.append("the procedure extends to any depth since dominate and the successor step are total")
    return r, r.verdict == "supported"


def _corollary41(E, s42, hyperspace, bd) -> ClaimReport:
    r = ClaimReport("Corollary4.1", E.name, "bounded-evidence", bounds=dict(bd))
    if not E.linear:
        r.verdict = "supported"
        r.transcript.append("order is not linear; the corollary's hypothesis is not met (vacuous)")
        return r
    if hyperspace:
        r.verdict = "supported"
        r.transcript.append("E is a hyperspace (Theorem4.1 family verified); premise fails (vacuous)")
        return r
    r.transcript.append("theorem41_construct: no dominate oracle, no disjoint family constructed")
    r.transcript.append(s42.note)
    if s42.value == "certified-true":
        r.verdict = "supported"
        r.witnesses = dict(s42.witnesses)
    return r


def replay(report: ClaimReport) -> bool:
    """Re-check the witnesses of a counterexample or supported report."""
    E = get_instance(report.instance)
    w = report.witnesses
    if report.claim == "Lemma4.1" and report.verdict == "counterexample":
        u, x, y = w["u"], w["x"], w["y"]
        E.check(u, x, y)
        return (
            bool(E.archimedean_unit and E.archimedean_unit(u))
            and x != E.neutral
            and E.is_positive(x)
            and E.is_positive(y)
            and E.escape_bound is not None
            and E.escape_bound(x, y) is None
        )
    if report.claim == "Theorem4.1" and report.verdict == "supported" and E.dominate is not None:
        gens = tuple(w[f"u{i + 1}"] for i in range(sum(k[1:].isdigit() for k in w)))
        family = SubgroupFamily(E.name, gens, tuple(E.dominate(u) for u in gens), E.has_inverses)
        return chain_is_strict(E, family) and all(
            v.verdict == "exact-disjoint" for v in verify_disjoint(family)
        )
    if "u" in w and report.verdict == "supported":
        return bool(E.archimedean_unit and E.archimedean_unit(w["u"]))
    return True


def check_laws(E: MonoidInstance, rng: random.Random, samples: int) -> List[str]:
    """Monoid laws, order axioms and closure of E+ on random elements."""
    problems = []
    for _ in range(samples):
        a, b, c = E.sampler(rng), E.sampler(rng), E.sampler(rng)
        if E.op(E.op(a, b), c) != E.op(a, E.op(b, c)):
            problems.append(f"associativity fails on {E.format(a)}, {E.format(b)}, {E.format(c)}")
        if E.op(E.neutral, a) != a or E.op(a, E.neutral) != a:
            problems.append(f"neutral element fails on {E.format(a)}")
        if not E.leq(a, a):
            problems.append(f"reflexivity fails on {E.format(a)}")
        if E.leq(a, b) and E.leq(b, a) and a != b:
            problems.append(f"antisymmetry fails on {E.format(a)}, {E.format(b)}")
        if E.leq(a, b) and E.leq(b, c) and not E.leq(a, c):
            problems.append(f"transitivity fails on {E.format(a)}, {E.format(b)}, {E.format(c)}")
        if E.linear and not (E.leq(a, b) or E.leq(b, a)):
            problems.append(f"linearity fails on {E.format(a)}, {E.format(b)}")
        if E.leq(a, b) and not E.leq(E.op(a, c), E.op(b, c)):
            problems.append(f"translation compatibility fails on {E.format(a)}, {E.format(b)}, {E.format(c)}")
        pa, pb = _positive_part(E, a), _positive_part(E, b)
        if not E.is_positive(E.op(pa, pb)):
            problems.append(f"closure of E+ fails on {E.format(pa)}, {E.format(pb)}")
    return problems


def _positive_part(E, a):
    if E.is_positive(a):
        return a
    if E.inverse is not None and E.is_positive(E.inverse(a)):
        return E.inverse(a)
    return E.neutral


# -- instances --------------------------------------------------------------------


def _nat_commensurable(u: int, v: int) -> Commensurable:
    if u == 0 or v == 0:
        return None, "trivial member {0}"
    m = lcm(u, v)
    return (m // u, m // v), "solved-membership"


def _nat_solve(y: int, u: int) -> Optional[int]:
    if u == 0:
        return 0 if y == 0 else None
    return y // u if y % u == 0 else None


NAT_ADD = register(
    MonoidInstance(
        name="nat-add",
        op=lambda a, b: a + b,
        neutral=0,
        leq=lambda a, b: a <= b,
        linear=True,
        contains=lambda x: isinstance(x, int) and not isinstance(x, bool) and x >= 0,
        sampler=lambda rng: rng.randint(0, 1000),
        probes=(0, 1, 2, 3, 5, 10),
        solve=_nat_solve,
        strictly_above=lambda x: x + 1,
        commensurable=_nat_commensurable,
        to_json=lambda x: x,
        from_json=int,
        has_inverses=False,
        reach=lambda u, x: (0 if x == 0 else None) if u == 0 else -(-x // u),
        escape_bound=lambda x, y: None if x == 0 else y // x + 1,
        archimedean_unit=lambda u: u >= 1,
        orbit_reason=lambda x, y: "x = 0",
        archimedean_43_reason="every x >= 1 has n*x >= n, which exceeds any bound",
    )
)


def _lead_index(t: Sequence[int]) -> Optional[int]:
    for i, c in enumerate(t):
        if c:
            return i
    return None


def _lex_reach(u, x) -> Optional[int]:
    i = _lead_index(u)
    if i is None:
        return 0 if x <= u else None
    j = _lead_index(x[:i])
    if j is not None:
        return 0 if x[j] < 0 else None
    cand = max(0, ceil(Fraction(x[i], u[i])))
    return cand if tuple(cand * c for c in u) >= tuple(x) else cand + 1


def _lex_escape(x, y) -> Optional[int]:
    zero = tuple(0 for _ in x)
    i = _lead_index(x)
    if i is None:
        return None if zero <= tuple(y) else 0
    j = _lead_index(y[:i])
    if j is not None:
        return None if y[j] > 0 else 0
    return max(0, floor(Fraction(y[i], x[i]))) + 1


def _lex_orbit_reason(x, y) -> str:
    i = _lead_index(x)
    if i is None:
        return "x = 0"
    j = _lead_index(y[:i])
    return f"lexicographic prefix: coordinate {j} of y is {y[j]} > 0 while x vanishes before coordinate {i}"


def _lex_commensurable(u, v) -> Commensurable:
    if _lead_index(u) is None or _lead_index(v) is None:
        return None, "trivial member {0}"
    k = len(u)
    for a in range(k):
        for b in range(a + 1, k):
            if u[a] * v[b] - u[b] * v[a] != 0:
                return None, f"linearly independent over Q (minor at coordinates {a},{b})"
    i = _lead_index(u)
    if v[i] == 0:
        return None, "linearly independent over Q"
    g = gcd(u[i], v[i])
    n1, n2 = v[i] // g, u[i] // g
    if n1 < 0:
        n1, n2 = -n1, -n2
    return (n1, n2), "linearly dependent over Q"


def _lex_solve(y, u) -> Optional[int]:
    i = _lead_index(u)
    if i is None:
        return 0 if _lead_index(y) is None else None
    if y[i] % u[i]:
        return None
    n = y[i] // u[i]
    return n if tuple(n * c for c in u) == tuple(y) else None


def make_lex(k: int) -> MonoidInstance:
    """Z^k under componentwise addition with the lexicographic order."""
    zero = (0,) * k
    units = tuple(tuple(1 if j == i else 0 for j in range(k)) for i in range(k))
    extra = tuple(
        t
        for t in (
            (1,) + (1,) * (k - 1),
            (0,) * (k - 1) + (2,),
            (1,) + (-1,) * (k - 1),
            (0,) * (k - 1) + (-1,),
        )
    )
    return MonoidInstance(
        name=f"lex-z{k}",
        op=lambda a, b: tuple(x + y for x, y in zip(a, b)),
        neutral=zero,
        leq=lambda a, b: a <= b,
        linear=True,
        contains=lambda x: isinstance(x, tuple)
        and len(x) == k
        and all(isinstance(c, int) and not isinstance(c, bool) for c in x),
        sampler=lambda rng: tuple(rng.randint(-50, 50) for _ in range(k)),
        probes=(zero,) + units + extra,
        solve=_lex_solve,
        strictly_above=lambda x: x[:-1] + (x[-1] + 1,),
        commensurable=_lex_commensurable,
        to_json=list,
        from_json=lambda data: tuple(int(c) for c in data),
        inverse=lambda x: tuple(-c for c in x),
        reach=_lex_reach,
        escape_bound=_lex_escape,
        archimedean_unit=lambda u: u[0] > 0,
        orbit_reason=_lex_orbit_reason,
        format=lambda x: "(" + ", ".join(map(str, x)) + ")",
    )


LEX_Z2 = register(make_lex(2))
LEX_Z3 = register(make_lex(3))


def lc_dominate(u: LCNumber) -> LCNumber:
    """``(1 + |u|) / eps``: above every multiple of ``u``."""
    return (1 + abs(u)) / EPS


def _lc_dominate_reason(u: LCNumber, x: LCNumber) -> str:
    if u.is_zero():
        return "u = 0"
    return f"x > 0 and valuation(x) = {lc.valuation(x)} < valuation(u) = {lc.valuation(u)}"


def _lc_reach(u: LCNumber, x: LCNumber) -> Optional[int]:
    if x.sign() <= 0:
        return 0
    if u.sign() <= 0:
        return None
    vu, vx = lc.valuation(u), lc.valuation(x)
    if vu < vx:
        return 1
    if vu > vx:
        return None
    cand = int(floor(lc.standard_part(x / u)))
    return cand if cand > 0 and cand * u >= x else cand + 1


def _lc_escape(x: LCNumber, y: LCNumber) -> Optional[int]:
    if y.sign() < 0:
        return 0
    if x.is_zero():
        return None
    if y.is_zero():
        return 1
    vx, vy = lc.valuation(x), lc.valuation(y)
    if vx > vy:
        return None
    if vx < vy:
        return 1
    return int(floor(lc.standard_part(y / x))) + 1


def _lc_orbit_reason(x: LCNumber, y: LCNumber) -> str:
    if x.is_zero():
        return "x = 0"
    return f"valuation(x) = {lc.valuation(x)} > valuation(y) = {lc.valuation(y)} and y > 0"


def _lc_commensurable(u: LCNumber, v: LCNumber) -> Commensurable:
    if u.is_zero() or v.is_zero():
        return None, "trivial member {0}"
    c = lc.line_ratio(u, v)
    if c is None:
        if lc.valuation(u) != lc.valuation(v):
            return None, f"valuation ({lc.valuation(u)} vs {lc.valuation(v)})"
        return None, "solved-membership (quotient is not a scalar)"
    # u = (p/q) v  =>  q u = p v
    return (c.denominator, c.numerator), f"same line, ratio {c}"


def _lc_solve(y: LCNumber, u: LCNumber) -> Optional[int]:
    if u.is_zero():
        return 0 if y.is_zero() else None
    if y.is_zero():
        return 0
    c = lc.line_ratio(y, u)
    return int(c) if c is not None and c.denominator == 1 else None


def random_lc(rng: random.Random, max_terms: int = 2, fraction_prob: float = 0.3) -> LCNumber:
    """Small random field element; denominators stay low degree."""

    def poly(n_terms):
        return lc.PuiseuxPoly(
            (Fraction(rng.randint(-4, 4), rng.choice((1, 2))), Fraction(rng.randint(-5, 5), rng.choice((1, 2, 3))))
            for _ in range(n_terms)
        )

    num = poly(rng.randint(1, max_terms))
    if rng.random() < fraction_prob:
        den = lc.PuiseuxPoly([(0, 1), (Fraction(rng.randint(1, 2), rng.choice((1, 2))), rng.choice((-2, -1, 1, 3)))])
        return LCNumber(num, den)
    return LCNumber(num)


LC_ADD = register(
    MonoidInstance(
        name="lc-add",
        op=lambda a, b: a + b,
        neutral=lc.ZERO,
        leq=lambda a, b: a <= b,
        linear=True,
        contains=lambda x: isinstance(x, LCNumber),
        sampler=random_lc,
        probes=(lc.ZERO, EPS, lc.ONE, 1 / EPS, EPS * EPS, LCNumber.rational(2)),
        solve=_lc_solve,
        strictly_above=lambda x: x + EPS,
        commensurable=_lc_commensurable,
        to_json=lambda x: x.to_json(),
        from_json=LCNumber.from_json,
        inverse=lambda x: -x,
        reach=_lc_reach,
        escape_bound=_lc_escape,
        dominate=lc_dominate,
        dominate_reason=_lc_dominate_reason,
        archimedean_unit=lambda u: False,
        orbit_reason=_lc_orbit_reason,
    )
)


def _seq_escape(x: SymbolicSequence, y: SymbolicSequence) -> Optional[int]:
    if not sq.is_nonnegative(y):
        return 0
    if x.is_zero():
        return None
    k = sq.first_positive_index(x)
    if k is None:
        raise NotImplementedError("no positive coordinate found in the search window")
    return int(floor(sq.eval_seq(y, k) / sq.eval_seq(x, k))) + 1


def _seq_commensurable(u: SymbolicSequence, v: SymbolicSequence) -> Commensurable:
    if u.is_zero() or v.is_zero():
        return None, "trivial member {0}"
    k = next(n for n in range(10**6) if sq.eval_seq(v, n) != 0)
    c = sq.eval_seq(u, k) / sq.eval_seq(v, k)
    if c == 0 or u != v * c:
        return None, "solved-membership (not proportional)"
    n1, n2 = c.denominator, c.numerator
    return (n1, n2), f"proportional, ratio {c}"


def _seq_solve(y: SymbolicSequence, u: SymbolicSequence) -> Optional[int]:
    if y.is_zero():
        return 0
    if u.is_zero():
        return None
    solved, _ = _seq_commensurable(y, u)
    if solved is None:
        return None
    n1, n2 = solved
    return n2 if n1 == 1 else None


def _random_seq(rng: random.Random) -> SymbolicSequence:
    S = SymbolicSequence
    c = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
    choice = rng.randrange(5)
    if choice == 0:
        return S.constant(c)
    if choice == 1:
        return S.ratfn([c], [rng.randint(1, 3), 1])
    if choice == 2:
        return S.ratfn([0, c])
    if choice == 3:
        return S.piecewise([S.constant(c), S.constant(rng.randint(-3, 3))])
    return S.ratfn([c, rng.randint(-2, 2)], [rng.randint(1, 4), 1])


_ZERO_SEQ = SymbolicSequence.constant(0)

SEQ_ADD = register(
    MonoidInstance(
        name="seq-add-pointwise",
        op=lambda a, b: a + b,
        neutral=_ZERO_SEQ,
        leq=sq.leq,
        linear=False,
        contains=lambda x: isinstance(x, SymbolicSequence),
        sampler=_random_seq,
        probes=(
            _ZERO_SEQ,
            SymbolicSequence.constant(1),
            SymbolicSequence.ratfn([1], [1, 1]),
            SymbolicSequence.index(),
            sq.indicator(2, [0]),
        ),
        solve=_seq_solve,
        strictly_above=lambda x: x + 1,
        commensurable=_seq_commensurable,
        to_json=lambda x: x.to_json(),
        from_json=SymbolicSequence.from_json,
        inverse=lambda x: -x,
        escape_bound=_seq_escape,
        orbit_reason=lambda x, y: "x = 0",
        archimedean_43_reason=(
            "pointwise order: a nonzero x >= 0 has x(k) > 0 for some k, and n*x(k) > y(k) once n > y(k)/x(k)"
        ),
    )
)
