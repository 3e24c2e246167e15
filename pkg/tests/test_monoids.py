import json
import random
import time

import pytest

from infinitesimals import monoids as mo
from infinitesimals.errors import NotLinear, OracleMissing, PartialOrderOnly
from infinitesimals.lc import EPS, LCNumber


@pytest.mark.parametrize("name", mo.instance_names())
def test_laws_hold_on_random_samples(name):
    E = mo.get_instance(name)
    samples = 200 if name == "seq-add-pointwise" else 1000
    assert mo.check_laws(E, random.Random(0), samples) == []


def test_nfold_matches_repeated_addition():
    for E in (mo.NAT_ADD, mo.LEX_Z3, mo.LC_ADD):
        u = E.sampler(random.Random(4))
        acc = E.neutral
        for n in range(30):
            assert mo.nfold(E, u, n) == acc
            acc = E.op(acc, u)


def test_check_42_exact_and_bounded():
    r = mo.check_42(mo.NAT_ADD, 3, [0, 10, 999], 100)
    assert r.verdict == "witness-holds" and r.n_values == (0, 4, 333) and r.universal
    r = mo.check_42(mo.LC_ADD, EPS, [LCNumber.rational(1)], 10**6)
    assert r.verdict == "fails-at" and r.certified
    with pytest.raises(PartialOrderOnly):
        mo.check_42(mo.SEQ_ADD, mo.SEQ_ADD.probes[1], [], 10)


def test_check_44_agrees_with_brute_force():
    rng = random.Random(1)
    for E in (mo.NAT_ADD, mo.LEX_Z2, mo.LC_ADD):
        for _ in range(60):
            x, y = mo._positive_part(E, E.sampler(rng)), mo._positive_part(E, E.sampler(rng))
            if not (E.is_positive(x) and E.is_positive(y)):
                continue
            r = mo.check_44(E, x, y, 2000)
            if r.verdict == "escapes-at":
                assert not E.leq(mo.nfold(E, x, r.n), y)
                assert r.n == 0 or E.leq(mo.nfold(E, x, r.n - 1), y)
            else:
                assert all(E.leq(mo.nfold(E, x, n), y) for n in range(0, 2001, 97))


def test_lex_orbit_is_bounded():
    r = mo.check_44(mo.LEX_Z2, (0, 1), (1, 0), 10**6)
    assert r.verdict == "bounded-orbit-evidence" and r.certified


def test_theorem41_chain_and_disjointness():
    t0 = time.perf_counter()
    fam = mo.theorem41_construct(mo.LC_ADD, EPS, depth=10)
    verdicts = mo.verify_disjoint(fam)
    assert time.perf_counter() - t0 < 5
    assert mo.chain_is_strict(mo.LC_ADD, fam)
    assert len(verdicts) == 45 and {v.verdict for v in verdicts} == {"exact-disjoint"}
    again = mo.SubgroupFamily.from_json(json.loads(json.dumps(fam.to_json())))
    assert again == fam


def test_theorem41_preconditions():
    with pytest.raises(OracleMissing):
        mo.theorem41_construct(mo.NAT_ADD)
    with pytest.raises(NotLinear):
        mo.theorem41_construct(mo.SEQ_ADD)


def test_commensurable_pairs_overlap():
    fam = mo.SubgroupFamily("lc-add", (EPS, 2 * EPS, 1 / EPS))
    v = {(p.i, p.j): p for p in mo.verify_disjoint(fam)}
    assert v[(0, 1)].verdict == "overlap" and v[(0, 1)].witness == 2 * EPS
    assert v[(0, 2)].verdict == "exact-disjoint"


def verdicts(name):
    return {r.claim: r for r in mo.audit_claims(mo.get_instance(name))}


def test_audit_nat_add():
    r = verdicts("nat-add")
    assert {k: v.verdict for k, v in r.items()} == {
        "Lemma4.1": "supported", "Lemma4.2": "supported",
        "Theorem4.1": "supported", "Corollary4.1": "supported",
    }


def test_audit_lex_counterexample_replays():
    r = verdicts("lex-z2")["Lemma4.1"]
    assert r.verdict == "counterexample"
    assert r.witnesses == {"u": (1, 0), "x": (0, 1), "y": (1, 0)}
    again = mo.ClaimReport.from_json(json.loads(json.dumps(r.to_json())))
    assert mo.replay(again)
    assert verdicts("lex-z3")["Lemma4.1"].verdict == "counterexample"


def test_audit_lc_and_seq():
    r = verdicts("lc-add")
    assert r["Theorem4.1"].verdict == "supported" and mo.replay(r["Theorem4.1"])
    for rep in verdicts("seq-add-pointwise").values():
        assert rep.verdict == "supported"
        assert any("vacuous" in t or "certified" in t for t in rep.transcript)
