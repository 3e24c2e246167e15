"""Generators and runners shared by several test modules."""

import io
import json
import os
import sys

from infinitesimals.cli import main
from infinitesimals.expr import Alt, BinOp, Num, Pow, RatFn, Sym, Unary

DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


def random_expr(rng, depth, seq=False):
    if depth == 0 or rng.random() < 0.25:
        leaves = [Num(rng.randint(0, 9)), Sym("eps" if not seq else "n")]
        return rng.choice(leaves)
    k = rng.randrange(5 if seq else 3)
    if k == 0:
        return Unary(rng.choice("+-"), random_expr(rng, depth - 1, seq))
    if k == 1:
        return BinOp(rng.choice("+-*/"), random_expr(rng, depth - 1, seq), random_expr(rng, depth - 1, seq))
    if k == 2:
        e = Num(rng.randint(0, 3))
        if rng.random() < 0.5:
            e = BinOp("/", Unary("-", e), Num(rng.randint(1, 4)))
        return Pow(random_expr(rng, depth - 1, seq), e)
    if k == 3:
        return RatFn(random_expr(rng, depth - 1, seq), random_expr(rng, depth - 1, seq))
    m = rng.randint(1, 3)
    return Alt(m, tuple((r, random_expr(rng, depth - 1, seq)) for r in range(m)))


def run(args, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdin
    if stdin is not None:
        sys.stdin = io.StringIO(stdin)
    try:
        code = main(args, stdout=out, stderr=err)
    finally:
        sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def load_cli_corpus():
    with open(os.path.join(DATA, "cli_golden.json")) as fh:
        return json.load(fh)
