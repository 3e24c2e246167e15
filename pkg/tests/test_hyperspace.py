import itertools
import json
import os
import random
from fractions import Fraction

import pytest

from infinitesimals import hyperspace as hs
from infinitesimals import monoids as mo
from infinitesimals.errors import ExponentBelowOne, NotProper, TooLarge, WrongKind
from infinitesimals.lc import EPS, LCNumber

from oracles import brute_largest_family, table_from_code

GOLDEN = os.path.join(os.path.dirname(__file__), "data", "magma_golden.json")
EXPONENTS = [1, Fraction(5, 4), Fraction(3, 2), 2, Fraction(7, 2), 5]


def golden():
    with open(GOLDEN) as fh:
        return json.load(fh)["sizes"]


@pytest.mark.parametrize("base,kind", [(EPS, "infinitesimal"), (1 / EPS, "infinite"), (3 * EPS**2, "infinitesimal")])
def test_power_family_is_exactly_disjoint(base, kind):
    cert = hs.build_family_powers(base, EXPONENTS, kind)
    assert len(cert.pairs) == 15
    assert {p.reason for p in cert.pairs} == {"exponent-mismatch"}
    rep = hs.verify_certificate(cert)
    assert rep.ok and not rep.downgraded and not rep.overlaps


def test_power_family_preconditions():
    with pytest.raises(WrongKind):
        hs.build_family_powers(EPS, [1, 2], "infinite")
    with pytest.raises(ExponentBelowOne):
        hs.build_family_powers(EPS, [Fraction(1, 2), 2], "infinitesimal")
    with pytest.raises(ValueError):
        hs.build_family_powers(EPS + EPS**2, [1, Fraction(3, 2)], "infinitesimal")


def test_certificate_round_trip_is_byte_identical():
    cert = hs.build_family_powers(EPS, EXPONENTS, "infinitesimal")
    text = cert.dumps()
    again = hs.DisjointFamilyCertificate.from_json(json.loads(text))
    assert again.dumps() == text


def test_tampered_certificate_is_rejected():
    data = json.loads(hs.build_family_powers(EPS, [1, 2, 3], "infinitesimal").dumps())
    data["members"][1]["generator"] = data["members"][0]["generator"]
    rep = hs.verify_certificate(hs.DisjointFamilyCertificate.from_json(data))
    assert not rep.ok and rep.overlaps
    data = json.loads(hs.build_family_powers(EPS, [1, 2], "infinitesimal").dumps())
    data["F"]["name"] = "field"
    assert not hs.verify_certificate(hs.DisjointFamilyCertificate.from_json(data)).ok


def test_scalar_only_instance_has_no_proper_lines():
    with pytest.raises(NotProper, match="whole carrier"):
        hs.build_line_family("q-add", [1, 2])


def test_theorem41_family_certificate():
    fam = mo.theorem41_construct(mo.LC_ADD, EPS, depth=10)
    rep = hs.verify_certificate(hs.certificate_from_family(fam))
    assert rep.ok


def test_idempotent_convention_in_sequence_ambient():
    e, f = hs.SubStructure("cyclic", (mo.SEQ_ADD.probes[4],)), hs.cyclic(mo.SEQ_ADD.probes[1])
    assert hs.is_idempotent("seq-mul", mo.SEQ_ADD.probes[4])
    v = hs.disjoint_up_to_idempotents("seq-add-pointwise", e, f, bound=50)
    assert v.verdict in ("disjoint-bounded", "exact-disjoint")


def test_small_magma_examples():
    assert hs.finite_magma_scan(hs.FiniteMagma.from_rows([[0, 1], [1, 0]])).size == 1
    assert hs.finite_magma_scan(hs.FiniteMagma.from_rows([[0, 0], [0, 1]])).size == 2
    right_zero = hs.FiniteMagma.from_rows([[0, 1, 2]] * 3)
    assert hs.finite_magma_scan(right_zero).size == 6  # every element is idempotent
    with pytest.raises(TooLarge):
        hs.finite_magma_scan(hs.FiniteMagma.from_rows([[0] * 7] * 7))


def test_golden_corpus_matches_oracle_spot_check():
    g = golden()
    rng = random.Random(2)
    for code in rng.sample(range(3**9), 40):
        assert int(g["3"][code]) == brute_largest_family(table_from_code(code, 3))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_scan_reproduces_golden_corpus(n):
    digits = golden()[str(n)]
    assert len(digits) == n ** (n * n)
    for code, want in enumerate(digits):
        rep = hs.finite_magma_scan(hs.FiniteMagma.from_rows(table_from_code(code, n)))
        assert rep.size == int(want), code
        assert "infinite family" in rep.note


def test_scan_is_isomorphism_invariant_and_sane():
    rng = random.Random(9)
    for _ in range(200):
        M = hs.FiniteMagma.from_rows(table_from_code(rng.randrange(3**9), 3))
        rep = hs.finite_magma_scan(M)
        for perm in itertools.permutations(range(3)):
            assert hs.finite_magma_scan(M.relabel(perm)).size == rep.size
        idem = M.idempotents()
        for a, b in itertools.combinations(rep.family, 2):
            assert a & b <= idem
        assert rep.union <= frozenset(range(3))
        assert all(M.is_closed(s) and len(s) < 3 for s in rep.family)
        assert rep.to_json()["hyperspace"] is False
