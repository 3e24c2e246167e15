"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines, or
``python3 tests/test_acceptance.py`` for the lines alone.  Every check is
exact (Fraction arithmetic, tolerance 0); the only numeric tolerances are
wall-clock budgets: 5 s for the depth-10 construction, 60 s for the suite.
"""

import itertools
import json
import os
import random
import sys
import time
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from infinitesimals import hyperspace as hs  # noqa: E402
from infinitesimals import lc  # noqa: E402
from infinitesimals import monoids as mo  # noqa: E402
from infinitesimals import sequences as sq  # noqa: E402
from infinitesimals.errors import NotProper, UndefinedAt  # noqa: E402
from infinitesimals.expr import format_expression, parse_expression, parse_lc  # noqa: E402
from infinitesimals.lc import EPS, ONE, ZERO, LCNumber  # noqa: E402
from infinitesimals.sequences import SeqKind, SymbolicSequence as S  # noqa: E402

from helpers import load_cli_corpus, random_expr, run  # noqa: E402
from oracles import brute_largest_family, table_from_code  # noqa: E402

SAMPLES = 1000
THEOREM_BUDGET_S = 5.0
SUITE_BUDGET_S = 60.0
POWER_EXPONENTS = [1, Fraction(5, 4), Fraction(3, 2), 2, Fraction(7, 2), 5]

_started = time.perf_counter()


def report(number, title, problems):
    ok = not problems
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if problems:
        line += " -- " + "; ".join(problems[:3])
    print(line)
    return ok


def finite_random(rng):
    while True:
        a = mo.random_lc(rng)
        if lc.classify(a).is_finite:
            return a


def criterion_1():
    problems = []
    got = [lc.classify(x).value for x in (ZERO, EPS, ONE, 1 / EPS)]
    if got != ["zero", "infinitesimal", "appreciable", "infinite"]:
        problems.append(f"chain classes {got}")
    rng = random.Random(1)
    mon = [x for x in (mo.random_lc(rng) for _ in range(4 * SAMPLES)) if lc.classify(x).in_monad][:SAMPLES]
    fin = [finite_random(rng) for _ in range(SAMPLES)]
    if len(mon) < SAMPLES:
        problems.append("not enough Mon(0) samples")
    for xs, name, pred in ((mon, "Mon(0)", "in_monad"), (fin, "Fin(0)", "is_finite")):
        for a, b in zip(xs, xs[1:] + xs[:1]):
            if not (getattr(lc.classify(a + b), pred) and getattr(lc.classify(a - b), pred)):
                problems.append(f"{name} not closed at {a}, {b}")
                break
    # strict inclusions {0} < Mon(0) < Fin(0) < E
    if not (lc.classify(EPS).in_monad and not lc.classify(ONE).in_monad and lc.classify(ONE).is_finite
            and not lc.classify(1 / EPS).is_finite):
        problems.append("strict-inclusion witnesses missing")
    return report(1, "chain {0} < Mon(0) < Fin(0) < E", problems)


def criterion_2():
    problems = []
    rng = random.Random(2)
    for _ in range(SAMPLES):
        a, b, c = mo.random_lc(rng), mo.random_lc(rng), mo.random_lc(rng)
        checks = {
            "add assoc": (a + b) + c == a + (b + c),
            "add comm": a + b == b + a,
            "mul assoc": (a * b) * c == a * (b * c),
            "mul comm": a * b == b * a,
            "distributive": a * (b + c) == a * b + a * c,
            "identities": a + 0 == a and a * 1 == a,
            "additive inverse": a + (-a) == 0,
            "total order": (a <= b) or (b <= a),
            "antisymmetric": not (a <= b and b <= a) or a == b,
            "transitive": not (a <= b and b <= c) or a <= c,
            "translation": not (a <= b) or a + c <= b + c,
            "positive product": not (a >= 0 and b >= 0) or a * b >= 0,
        }
        if not b.is_zero():
            checks["div o mul"] = (a * b) / b == a
            checks["mul inverse"] = b * (1 / b) == 1
        bad = [k for k, v in checks.items() if not v]
        if bad:
            problems.append(f"{bad[0]} fails on {a}, {b}, {c}")
            break
    for _ in range(SAMPLES):
        a = finite_random(rng)
        series = lc.truncated_series(a, 0)
        if lc.standard_part(a) != series.coefficient(0):
            problems.append(f"standard part of {a} disagrees with its series")
            break
    return report(2, "ordered-field axioms, div o mul, standard part vs series", problems)


def independent_ratio(a, b):
    """Solve ``a == c*b`` for a rational ``c`` without the library's line helpers."""
    ma, mb = lc.is_monomial(a), lc.is_monomial(b)
    if ma is not None and mb is not None:
        return ma[1] / mb[1] if ma[0] == mb[0] else None
    # canonical denominators lead with 1, so c must be the ratio of leading coefficients
    if lc.valuation(a) != lc.valuation(b):
        return None
    c = a.num.leading()[1] / b.num.leading()[1]
    return c if a == c * b else None


def criterion_3():
    problems = []
    rng = random.Random(3)
    seen = {True: 0, False: 0}
    for k in range(200):
        b = mo.random_lc(rng)
        while b.is_zero():
            b = mo.random_lc(rng)
        if k % 2:
            a = Fraction(rng.choice([-3, -1, 1, 2, 5]), rng.randint(1, 4)) * b
        else:
            a = mo.random_lc(rng)
            while a.is_zero():
                a = mo.random_lc(rng)
        same = lc.same_line(a, b)
        seen[same] += 1
        if same != (independent_ratio(a, b) is not None):
            problems.append(f"same_line disagrees on {a}, {b}")
            break
    if not (seen[True] and seen[False]):
        problems.append(f"sample did not exercise both outcomes {seen}")
    for base, kind in ((EPS, "infinitesimal"), (1 / EPS, "infinite")):
        cert = hs.build_family_powers(base, POWER_EXPONENTS, kind)
        rep = hs.verify_certificate(cert)
        exact = len(cert.pairs) == 15 and rep.ok and not rep.downgraded and not rep.overlaps
        if not exact:
            problems.append(f"power family over {base} not exactly disjoint")
    return report(3, "same_line criterion and 15 exact-disjoint power lines", problems)


def criterion_4():
    problems = []
    try:
        hs.build_line_family("q-add", [1, 2, Fraction(1, 3)])
        problems.append("scalar-only instance accepted a family of lines")
    except NotProper as exc:
        if "whole carrier" not in str(exc):
            problems.append(f"failure report does not cite the carrier: {exc}")
    return report(4, "scalar-only instance has no two disjoint proper lines", problems)


def criterion_5():
    problems = []
    alt = S.piecewise([S.constant(1), S.constant(-1)])
    kinds = [sq.classify_seq(s).kind for s in (S.constant(0), sq.embed(1), alt, S.index())]
    if kinds != [SeqKind.NULL, SeqKind.CONVERGENT, SeqKind.BOUNDED_DIVERGENT, SeqKind.UNBOUNDED]:
        problems.append(f"chain witnesses classified as {[k.value for k in kinds]}")
    rng = random.Random(5)
    for _ in range(100):
        x = Fraction(rng.randint(-50, 50), rng.randint(1, 12))
        y = Fraction(rng.randint(-50, 50), rng.randint(1, 12))
        if sq.embed(x) + sq.embed(y) != sq.embed(x + y) or sq.embed(x) * sq.embed(y) != sq.embed(x * y):
            problems.append(f"embed not a homomorphism at {x}, {y}")
            break
    s = S.piecewise([S.constant(0), S.ratfn([1], [1, 1])])
    try:
        sq.pointwise_invert(s)
        problems.append("inverse of a null sequence with zeros was defined")
    except UndefinedAt:
        if s.is_zero() or not sq.classify_seq(s).is_null:
            problems.append("UndefinedAt witness is not a nonzero null sequence")
    t = S.ratfn([1], [1, 1])
    if not (sq.classify_seq(t).is_null and sq.classify_seq(sq.pointwise_invert(t)).kind is SeqKind.UNBOUNDED):
        problems.append("no null sequence with unbounded inverse")
    return report(5, "sequence chain, embed homomorphism, non-implications", problems)


def criterion_6():
    problems = []
    t0 = time.perf_counter()
    fam = mo.theorem41_construct(mo.LC_ADD, EPS, depth=10)
    verdicts = mo.verify_disjoint(fam)
    rep = hs.verify_certificate(hs.certificate_from_family(fam))
    elapsed = time.perf_counter() - t0
    if not mo.chain_is_strict(mo.LC_ADD, fam):
        problems.append("chain is not strictly increasing")
    if len(fam.generators) != 10 or len(verdicts) != 45:
        problems.append(f"{len(fam.generators)} subgroups, {len(verdicts)} pairs")
    if any(v.verdict != "exact-disjoint" for v in verdicts):
        problems.append("a pair is not exact-disjoint")
    if not rep.ok:
        problems.append("hyperspace certificate rejected")
    if elapsed >= THEOREM_BUDGET_S:
        problems.append(f"took {elapsed:.2f}s")
    return report(6, f"disjoint cyclic subgroups at depth 10 ({elapsed:.2f}s)", problems)


def criterion_7():
    problems = []

    def audit(name):
        return {r.claim: r for r in mo.audit_claims(mo.get_instance(name))}

    nat = audit("nat-add")
    for claim in ("Lemma4.1", "Lemma4.2", "Corollary4.1"):
        if nat[claim].verdict != "supported":
            problems.append(f"nat-add {claim}: {nat[claim].verdict}")
    if audit("lc-add")["Theorem4.1"].verdict != "supported":
        problems.append("lc-add Theorem4.1 not supported")
    lex = audit("lex-z2")["Lemma4.1"]
    if lex.verdict != "counterexample" or lex.witnesses != {"u": (1, 0), "x": (0, 1), "y": (1, 0)}:
        problems.append(f"lex-z2 Lemma4.1: {lex.verdict} {lex.witnesses}")
    elif not mo.replay(mo.ClaimReport.from_json(json.loads(json.dumps(lex.to_json())))):
        problems.append("lex-z2 witnesses do not replay")
    code, out, _ = run(["monoid-audit", "lex-z2"])
    if code != 2 or "Lemma4.1 [lex-z2]: counterexample" not in out:
        problems.append(f"CLI exit {code} for lex-z2")
    return report(7, "claims audit incl. lex-z2 Lemma4.1 counterexample", problems)


def criterion_8():
    problems = []
    with open(os.path.join(os.path.dirname(os.path.abspath(__file__)), "data", "magma_golden.json")) as fh:
        golden = json.load(fh)["sizes"]
    rng = random.Random(8)
    for code in rng.sample(range(3**9), 25):
        if brute_largest_family(table_from_code(code, 3)) != int(golden["3"][code]):
            problems.append(f"golden entry {code} disagrees with the oracle")
            break
    count = 0
    for n in (1, 2, 3):
        for code, want in enumerate(golden[str(n)]):
            rep = hs.finite_magma_scan(hs.FiniteMagma.from_rows(table_from_code(code, n)))
            count += 1
            if rep.size != int(want):
                problems.append(f"size-{n} magma {code}: {rep.size} != {want}")
                break
            if "infinite family" not in rep.note or rep.to_json()["hyperspace"] is not False:
                problems.append("report omits the infinite-family requirement")
                break
    if count != 1 + 16 + 19683:
        problems.append(f"scanned {count} magmas")
    return report(8, f"finite magma scan on {count} golden magmas", problems)


def criterion_9():
    problems = []
    rng = random.Random(9)
    for i in range(SAMPLES):
        tree = random_expr(rng, 4, seq=i % 2 == 1)
        if parse_expression(format_expression(tree), allow_sequence=True) != tree:
            problems.append(f"round trip fails on {format_expression(tree)}")
            break
    for _ in range(200):
        a = mo.random_lc(rng)
        if parse_lc(str(a)) != a:
            problems.append(f"value round trip fails on {a}")
            break
    for case in load_cli_corpus():
        code, out, err = run(case["args"])
        if code != case["exit"] or case.get("stdout", "") not in out or case.get("stderr", "") not in err:
            problems.append(f"golden command {' '.join(case['args'])} gave exit {code}")
    for name in mo.instance_names():
        code, out, _ = run(["monoid-audit", name, "--json"])
        verdicts = [r["verdict"] for r in json.loads(out)["reports"]]
        want = 2 if "counterexample" in verdicts else 3 if "bounded-evidence" in verdicts else 0
        if code != want:
            problems.append(f"monoid-audit {name} exit {code}, reports say {want}")
    for base, exps in (("eps", "1,5/4,3/2,2,7/2,5"), ("1/eps", "1,3/2,5"), ("3*eps^2", "1,2,3")):
        _, cert, _ = run(["hyper-build-powers", "--base", base, "--exponents", exps])
        code, out, _ = run(["hyper-verify", "-", "--json"], stdin=cert)
        rep = json.loads(out)
        if code != 0 or not rep["round_trip_identical"] or hs.dumps_json(rep["certificate"]) != cert:
            problems.append(f"certificate for base {base} changed through hyper-verify")
    return report(9, "expression round trip, CLI exit codes, certificate round trip", problems)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 10)])
def test_criterion(criterion):
    assert criterion()


def test_suite_budget():
    elapsed = time.perf_counter() - _started
    print(f"[{'PASS' if elapsed < SUITE_BUDGET_S else 'FAIL'}] acceptance runtime {elapsed:.1f}s < {SUITE_BUDGET_S:.0f}s")
    assert elapsed < SUITE_BUDGET_S


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed in {time.perf_counter() - _started:.1f}s")
    sys.exit(0 if all(results) else 1)
