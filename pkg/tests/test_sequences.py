import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infinitesimals import sequences as sq
from infinitesimals.errors import UndefinedAt
from infinitesimals.expr import parse_seq
from infinitesimals.sequences import SeqKind, SymbolicSequence as S

ALT = S.piecewise([S.constant(1), S.constant(-1)])
N = S.index()


def brute(s, upto=200):
    return [sq.eval_seq(s, n) for n in range(upto)]


def test_chain_witnesses():
    kinds = [sq.classify_seq(s).kind for s in (S.constant(0), sq.embed(1), ALT, N)]
    assert kinds == [SeqKind.NULL, SeqKind.CONVERGENT, SeqKind.BOUNDED_DIVERGENT, SeqKind.UNBOUNDED]
    assert sq.classify_seq(sq.embed(Fraction(3, 2))).limit == Fraction(3, 2)


def test_non_implications():
    # nonzero null sequence whose inverse is undefined
    s = S.piecewise([S.constant(0), S.ratfn([1], [1, 1])])
    assert not s.is_zero() and sq.classify_seq(s).is_null
    with pytest.raises(UndefinedAt) as info:
        sq.pointwise_invert(s)
    assert info.value.n == 0
    # null sequence whose inverse exists and is unbounded
    t = S.ratfn([1], [1, 1])
    assert sq.classify_seq(sq.pointwise_invert(t)).kind is SeqKind.UNBOUNDED


def test_minimal_period():
    s = S.piecewise([S.constant(1), S.constant(2), S.constant(1), S.constant(2)])
    assert s.modulus == 2
    t = S.piecewise([S.constant(1), S.constant(2)]) + S.piecewise([S.constant(0)] * 2 + [S.constant(1)])
    assert t.modulus == 6


def test_undefined_construction():
    with pytest.raises(UndefinedAt) as info:
        S.ratfn([1], [-3, 1])
    assert info.value.n == 3
    # root in the other residue class is harmless
    s = S([([1], [-3, 1]), ([1], [1])])
    assert s(3) == 1 and s(2) == -1


def test_leq_and_idempotents():
    assert sq.leq(S.constant(0), N)
    assert not sq.leq(N, S.constant(5))
    assert sq.leq(S.ratfn([1], [1, 1]), S.constant(1))
    assert not sq.leq(N - 3, N * N - 5 * N + 3)  # fails at n = 2
    e = sq.indicator(3, [0, 2])
    assert sq.is_idempotent(e) and not sq.is_idempotent(ALT)


@st.composite
def sequences(draw):
    m = draw(st.integers(1, 3))
    parts = []
    for _ in range(m):
        p = draw(st.lists(st.integers(-4, 4), min_size=1, max_size=3))
        root_free = draw(st.sampled_from([[1], [1, 1], [2, 0, 1], [3, 2]]))
        parts.append(S.ratfn(p, root_free))
    return S.piecewise(parts)


@settings(max_examples=100, deadline=None)
@given(sequences(), sequences())
def test_ring_operations_are_pointwise(a, b):
    va, vb = brute(a, 40), brute(b, 40)
    assert brute(a + b, 40) == [x + y for x, y in zip(va, vb)]
    assert brute(a * b, 40) == [x * y for x, y in zip(va, vb)]
    assert brute(a - b, 40) == [x - y for x, y in zip(va, vb)]


@settings(max_examples=100, deadline=None)
@given(sequences())
def test_classification_matches_samples(s):
    big = [sq.eval_seq(s, n) for n in range(10**4, 10**4 + 12)]
    c = sq.classify_seq(s)
    if c.kind is SeqKind.UNBOUNDED:
        assert max(abs(x) for x in big) > 50
    else:
        assert max(abs(x) for x in big) < 50
    if c.is_null:
        assert max(abs(x) for x in big) < Fraction(1, 100)


@settings(max_examples=100, deadline=None)
@given(sequences())
def test_inversion_is_total_or_reports_the_first_zero(s):
    vals = brute(s, 60)
    try:
        inv = sq.pointwise_invert(s)
    except UndefinedAt as exc:
        assert sq.eval_seq(s, exc.n) == 0
        assert all(v != 0 for v in vals[: min(exc.n, 60)])
        return
    assert brute(inv, 60) == [1 / v for v in vals]


@settings(max_examples=100, deadline=None)
@given(sequences())
def test_json_and_text_round_trip(s):
    assert S.from_json(s.to_json()) == s
    assert parse_seq(str(s)) == s


def test_embed_homomorphism():
    rng = random.Random(3)
    for _ in range(100):
        x = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        y = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        assert sq.embed(x) + sq.embed(y) == sq.embed(x + y)
        assert sq.embed(x) * sq.embed(y) == sq.embed(x * y)
