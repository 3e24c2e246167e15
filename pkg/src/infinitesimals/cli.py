"""Command-line front end.

Exit codes: 0 success or supported, 2 counterexample or overlap found,
3 bounded evidence only, 1 usage, parse or precondition error.

Expression arguments may be given inline or as ``@path`` to read a file.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import hyperspace as hs
from . import lc
from . import monoids as mo
from . import sequences as sq
from .errors import InfinitesimalsError, UndefinedAt
from .expr import parse_lc, parse_seq

EXIT_OK, EXIT_USAGE, EXIT_COUNTEREXAMPLE, EXIT_BOUNDED = 0, 1, 2, 3

COMMANDS = (
    "classify",
    "stdpart",
    "series",
    "line-member",
    "same-line",
    "seq-classify",
    "seq-invert",
    "monoid-audit",
    "monoid-theorem41",
    "hyper-build-powers",
    "hyper-verify",
    "hyper-scan",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _text(arg: str) -> str:
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            return fh.read().strip()
    return arg


def _schema(cmd: str) -> str:
    return f"infinitesimals.cli.{cmd}/1"


def _rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class _Out:
    def __init__(self, as_json: bool, stream):
        self.as_json = as_json
        self.stream = stream

    def emit(self, text: str, data: dict) -> None:
        if self.as_json:
            self.stream.write(hs.dumps_json(data))
        else:
            self.stream.write(text.rstrip("\n") + "\n")


def _cmd_classify(args, out):
    a = parse_lc(_text(args.expr))
    c = lc.classify(a)
    out.emit(
        c.value,
        {
            "schema": _schema("classify"),
            "value": a.to_json(),
            "text": str(a),
            "classification": c.value,
            "in_monad": c.in_monad,
            "finite": c.is_finite,
        },
    )
    return EXIT_OK


def _cmd_stdpart(args, out):
    a = parse_lc(_text(args.expr))
    s = lc.standard_part(a)
    out.emit(_rat(s), {"schema": _schema("stdpart"), "value": a.to_json(), "standard_part": _rat(s)})
    return EXIT_OK


def _cmd_series(args, out):
    a = parse_lc(_text(args.expr))
    order = Fraction(args.order)
    p = lc.truncated_series(a, order)
    out.emit(
        str(p),
        {"schema": _schema("series"), "value": a.to_json(), "order": _rat(order), "series": p.to_json(), "text": str(p)},
    )
    return EXIT_OK


def _cmd_line_member(args, out):
    a = parse_lc(_text(args.expr))
    mono = lc.is_monomial(a)
    if mono is None:
        text = "not a monomial"
        data = {"schema": _schema("line-member"), "value": a.to_json(), "monomial": None}
    else:
        e, c = mono
        text = f"line Q*eps^({_rat(e)}), coefficient {_rat(c)}"
        data = {
            "schema": _schema("line-member"),
            "value": a.to_json(),
            "monomial": {"exponent": _rat(e), "coefficient": _rat(c)},
        }
    out.emit(text, data)
    return EXIT_OK


def _cmd_same_line(args, out):
    a, b = parse_lc(_text(args.a)), parse_lc(_text(args.b))
    same = lc.same_line(a, b)
    ratio = lc.line_ratio(a, b)
    out.emit(
        "true" if same else "false",
        {
            "schema": _schema("same-line"),
            "a": a.to_json(),
            "b": b.to_json(),
            "same_line": same,
            "ratio": None if ratio is None else _rat(ratio),
        },
    )
    return EXIT_OK


def _cmd_seq_classify(args, out):
    s = parse_seq(_text(args.expr))
    c = sq.classify_seq(s)
    out.emit(
        str(c),
        {
            "schema": _schema("seq-classify"),
            "sequence": s.to_json(),
            "text": str(s),
            "class": c.kind.value,
            "limit": None if c.limit is None else _rat(c.limit),
        },
    )
    return EXIT_OK


def _cmd_seq_invert(args, out):
    s = parse_seq(_text(args.expr))
    try:
        inv = sq.pointwise_invert(s)
    except UndefinedAt as exc:
        out.emit(
            f"undefined at n={exc.n}",
            {"schema": _schema("seq-invert"), "sequence": s.to_json(), "defined": False, "undefined_at": exc.n},
        )
        return EXIT_COUNTEREXAMPLE
    out.emit(
        str(inv),
        {
            "schema": _schema("seq-invert"),
            "sequence": s.to_json(),
            "defined": True,
            "inverse": inv.to_json(),
            "text": str(inv),
            "class": sq.classify_seq(inv).kind.value,
        },
    )
    return EXIT_OK


def _instance_name(args) -> str:
    name = args.instance or args.name
    if not name:
        raise UsageError("an instance name is required (positional or --instance)")
    return name


def _bounds(args) -> mo.Bounds:
    defaults = mo.Bounds()
    return mo.Bounds(
        sample_size=args.samples if args.samples is not None else defaults.sample_size,
        n_bound=args.bound if args.bound is not None else defaults.n_bound,
        pair_bound=args.pair_bound if args.pair_bound is not None else defaults.pair_bound,
        depth=args.depth if args.depth is not None else defaults.depth,
    )


def _verdict_exit(verdicts: List[str]) -> int:
    if "counterexample" in verdicts or "overlap" in verdicts:
        return EXIT_COUNTEREXAMPLE
    if "bounded-evidence" in verdicts or "disjoint-bounded" in verdicts:
        return EXIT_BOUNDED
    return EXIT_OK


def _cmd_monoid_audit(args, out):
    E = mo.get_instance(_instance_name(args))
    reports = mo.audit_claims(E, _bounds(args))
    lines = []
    for r in reports:
        lines.append(f"{r.claim} [{E.name}]: {r.verdict}")
        for k, v in r.witnesses.items():
            lines.append(f"  witness {k} = {E.format(v)}")
        lines.extend(f"  - {t}" for t in r.transcript if t)
    out.emit(
        "\n".join(lines),
        {"schema": _schema("monoid-audit"), "instance": E.name, "reports": [r.to_json() for r in reports]},
    )
    return _verdict_exit([r.verdict for r in reports])


def _cmd_monoid_theorem41(args, out):
    E = mo.get_instance(_instance_name(args))
    u1 = None
    if args.u1 is not None:
        u1 = E.from_json(json.loads(args.u1)) if E.name != "lc-add" else parse_lc(_text(args.u1))
    depth = args.depth if args.depth is not None else 3
    family = mo.theorem41_construct(E, u1, depth)
    verdicts = mo.verify_disjoint(family, args.pair_bound or 1000)
    strict = mo.chain_is_strict(E, family)
    lines = [f"chain (strictly increasing: {strict}):"]
    for i, (u, x) in enumerate(zip(family.generators, family.dominators)):
        lines.append(f"  u{i + 1} = {E.format(u)}")
        lines.append(f"  x{i + 1} = {E.format(x)}")
    for v in verdicts:
        lines.append(f"  pair ({v.i + 1},{v.j + 1}): {v.verdict} [{v.reason}]")
    out.emit(
        "\n".join(lines),
        {
            "schema": _schema("monoid-theorem41"),
            "family": family.to_json(),
            "chain_strict": strict,
            "pairs": [v.to_json(E) for v in verdicts],
        },
    )
    codes = [v.verdict for v in verdicts] + ([] if strict else ["counterexample"])
    return _verdict_exit(codes)


def _cmd_hyper_build_powers(args, out):
    base = parse_lc(_text(args.base))
    exponents = [Fraction(e.strip()) for e in args.exponents.split(",") if e.strip()]
    kind = args.kind
    if kind == "auto":
        kind = "infinite" if lc.classify(base) is lc.Classification.INFINITE else "infinitesimal"
    cert = hs.build_family_powers(base, exponents, kind)
    text = cert.dumps()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    # the certificate JSON is the report in both modes
    out.stream.write(text)
    return EXIT_OK


def _cmd_hyper_verify(args, out):
    raw = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    cert = hs.DisjointFamilyCertificate.from_json(json.loads(raw))
    rep = hs.verify_certificate(cert, args.bound or 1000)
    lines = [f"certificate {'passed' if rep.ok else 'FAILED'}"]
    lines += [f"  [{'ok' if p else 'FAIL'}] {c}: {d}" for c, p, d in rep.checks]
    data = rep.to_json(cert.ambient)
    data["certificate"] = cert.to_json()
    data["round_trip_identical"] = hs.dumps_json(cert.to_json()) == hs.dumps_json(json.loads(raw))
    out.emit("\n".join(lines), data)
    if not rep.ok:
        return EXIT_COUNTEREXAMPLE
    return EXIT_BOUNDED if rep.downgraded else EXIT_OK


def _parse_table(text: str) -> hs.FiniteMagma:
    rows = [[int(c) for c in row.split(",")] for row in text.strip().split(";") if row.strip()]
    return hs.FiniteMagma.from_rows(rows)


def _cmd_hyper_scan(args, out):
    if args.table:
        M = _parse_table(args.table)
    elif args.file:
        data = json.load(open(args.file, encoding="utf-8"))
        M = hs.FiniteMagma.from_rows(data["table"])
    else:
        raise UsageError("hyper-scan needs --table or a JSON file")
    rep = hs.finite_magma_scan(M, args.max_size)
    lines = [
        f"proper sub-magmas: {len(rep.submagmas)}",
        f"largest family pairwise disjoint up to idempotents: {rep.size}",
        "  " + " ".join("{" + ",".join(map(str, sorted(s))) + "}" for s in rep.family),
        rep.note,
    ]
    out.emit("\n".join(lines), rep.to_json())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON reports")
    p = _Parser(prog="infinitesimals", description=__doc__, parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    cmd("classify", _cmd_classify, "zero / infinitesimal / appreciable / infinite").add_argument("expr")
    cmd("stdpart", _cmd_stdpart, "standard part of a finite value").add_argument("expr")
    sp = cmd("series", _cmd_series, "truncated series expansion")
    sp.add_argument("expr")
    sp.add_argument("--order", default="0")
    cmd("line-member", _cmd_line_member, "monomial line containing a value").add_argument("expr")
    sp = cmd("same-line", _cmd_same_line, "do two values span the same scalar line")
    sp.add_argument("a")
    sp.add_argument("b")
    cmd("seq-classify", _cmd_seq_classify, "null / convergent / bounded-divergent / unbounded").add_argument("expr")
    cmd("seq-invert", _cmd_seq_invert, "pointwise inverse of a sequence").add_argument("expr")
    for name, fn, help_ in (
        ("monoid-audit", _cmd_monoid_audit, "audit claims Lemma4.1, Lemma4.2, Theorem4.1, Corollary4.1"),
        ("monoid-theorem41", _cmd_monoid_theorem41, "run the disjoint cyclic subgroup construction"),
    ):
        sp = cmd(name, fn, help_)
        sp.add_argument("name", nargs="?")
        sp.add_argument("--instance")
        sp.add_argument("--bound", type=int, help="n bound for orbit searches")
        sp.add_argument("--samples", type=int)
        sp.add_argument("--pair-bound", type=int)
        sp.add_argument("--depth", type=int)
        if name == "monoid-theorem41":
            sp.add_argument("--u1", help="first generator (expression for lc-add, JSON otherwise)")
    sp = cmd("hyper-build-powers", _cmd_hyper_build_powers, "certificate for lines Q*base^a")
    sp.add_argument("--base", required=True)
    sp.add_argument("--exponents", required=True, help="comma separated rationals, e.g. 1,3/2,5")
    sp.add_argument("--kind", choices=("auto", "infinitesimal", "infinite"), default="auto")
    sp.add_argument("--output", help="also write the certificate to this file")
    sp = cmd("hyper-verify", _cmd_hyper_verify, "re-verify a certificate JSON file ('-' for stdin)")
    sp.add_argument("file")
    sp.add_argument("--bound", type=int)
    sp = cmd("hyper-scan", _cmd_hyper_scan, "largest disjoint family of sub-magmas")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--table", help="rows separated by ';', entries by ',', e.g. '0,0;1,1'")
    sp.add_argument("--max-size", type=int, default=6)
    return p


def main(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args, _Out(args.json, stdout))
    except (UsageError, InfinitesimalsError, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        stderr.write(f"error: {msg}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
