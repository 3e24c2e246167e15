"""Parser and printer for field and sequence expressions.

Field expressions use rational literals, the symbol ``eps``, ``+ - * /``,
parentheses and ``^`` with a rational literal exponent::

    eps^2 / (1 + eps)
    (3 + 1*eps^(1))/(1 + 1*eps^(1))

Sequence expressions add the index symbol ``n``, ``ratfn(p, q)`` and the
piecewise form ``alt(m){0: f0; 1: f1; ...}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .errors import DivisionByZero, ExprSyntaxError, SemanticError, UndefinedAt
from .lc import EPS, LCNumber
from .sequences import SymbolicSequence


# -- abstract syntax ------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Sym:
    name: str
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expression"
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expression"
    right: "Expression"
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Pow:
    base: "Expression"
    exponent: "Expression"
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class RatFn:
    num: "Expression"
    den: "Expression"
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Alt:
    modulus: int
    cases: Tuple[Tuple[int, "Expression"], ...]
    pos: int = field(default=0, compare=False)


Expression = Union[Num, Sym, Unary, BinOp, Pow, RatFn, Alt]

KEYWORDS = {"eps", "n", "ratfn", "alt"}

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


@dataclass
class _Token:
    kind: str  # "num", "ident", "sym", "end"
    text: str
    pos: int


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(_Token("num", m.group(1), start))
        elif m.group(2):
            tokens.append(_Token("ident", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^(),{}:;":
                raise ExprSyntaxError(start, ["operator", "number", "symbol"], text)
            tokens.append(_Token("sym", ch, start))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, allow_sequence: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.allow_sequence = allow_sequence

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def fail(self, expected) -> ExprSyntaxError:
        return ExprSyntaxError(self.tok.pos, expected, self.text)

    def take(self, text: str) -> _Token:
        if self.tok.text != text or self.tok.kind not in ("sym", "ident"):
            raise self.fail([repr(text)])
        tok = self.tok
        self.i += 1
        return tok

    def at(self, *texts: str) -> bool:
        return self.tok.kind == "sym" and self.tok.text in texts

    def parse(self) -> Expression:
        node = self.expr()
        if self.tok.kind != "end":
            raise self.fail(["operator", "end of input"])
        return node

    def expr(self) -> Expression:
        node = self.term()
        while self.at("+", "-"):
            op = self.tok
            self.i += 1
            node = BinOp(op.text, node, self.term(), op.pos)
        return node

    def term(self) -> Expression:
        node = self.unary()
        while self.at("*", "/"):
            op = self.tok
            self.i += 1
            node = BinOp(op.text, node, self.unary(), op.pos)
        return node

    def unary(self) -> Expression:
        if self.at("+", "-"):
            op = self.tok
            self.i += 1
            return Unary(op.text, self.unary(), op.pos)
        return self.power()

    def power(self) -> Expression:
        node = self.atom()
        if self.at("^"):
            op = self.tok
            self.i += 1
            node = Pow(node, self.unary(), op.pos)
        return node

    def atom(self) -> Expression:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Num(int(tok.text), tok.pos)
        if self.at("("):
            self.i += 1
            node = self.expr()
            self.take(")")
            return node
        expected = ["number", "'('", "'eps'"]
        if self.allow_sequence:
            expected += ["'n'", "'ratfn'", "'alt'"]
        if tok.kind == "ident" and tok.text in KEYWORDS:
            if tok.text in ("eps", "n"):
                self.i += 1
                return Sym(tok.text, tok.pos)
            if tok.text == "ratfn":
                self.i += 1
                self.take("(")
                num = self.expr()
                self.take(",")
                den = self.expr()
                self.take(")")
                return RatFn(num, den, tok.pos)
            if tok.text == "alt":
                return self.alt()
        raise self.fail(expected)

    def alt(self) -> Alt:
        start = self.take("alt")
        self.take("(")
        modulus = self.integer()
        self.take(")")
        self.take("{")
        cases = []
        while True:
            residue = self.integer()
            self.take(":")
            cases.append((residue, self.expr()))
            if self.at(";"):
                self.i += 1
                if self.at("}"):
                    break
                continue
            break
        self.take("}")
        return Alt(modulus, tuple(cases), start.pos)

    def integer(self) -> int:
        if self.tok.kind != "num":
            raise self.fail(["integer"])
        value = int(self.tok.text)
        self.i += 1
        return value


def parse_expression(text: str, allow_sequence: bool = False) -> Expression:
    return _Parser(text, allow_sequence).parse()


# -- evaluation ---------------------------------------------------------------


def _signed_int(node: Expression) -> Optional[int]:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Unary):
        inner = _signed_int(node.operand)
        if inner is not None:
            return -inner if node.op == "-" else inner
    return None


def literal_exponent(node: Expression) -> Optional[Fraction]:
    """Value of a rational literal such as ``3``, ``-1``, ``3/2`` or ``-3/2``."""
    whole = _signed_int(node)
    if whole is not None:
        return Fraction(whole)
    if isinstance(node, Unary):
        inner = literal_exponent(node.operand)
        if inner is None:
            return None
        return -inner if node.op == "-" else inner
    if isinstance(node, BinOp) and node.op == "/":
        num, den = _signed_int(node.left), _signed_int(node.right)
        if num is not None and den:
            return Fraction(num, den)
    return None


def _exponent(node: Pow) -> Fraction:
    q = literal_exponent(node.exponent)
    if q is None:
        raise SemanticError(
            "exponent must be a rational literal", getattr(node.exponent, "pos", node.pos)
        )
    return q


def eval_lc(node: Expression) -> LCNumber:
    if isinstance(node, Num):
        return LCNumber.rational(node.value)
    if isinstance(node, Sym):
        if node.name == "eps":
            return EPS
        raise SemanticError(f"symbol {node.name!r} is not allowed in a field expression", node.pos)
    if isinstance(node, Unary):
        v = eval_lc(node.operand)
        return -v if node.op == "-" else v
    if isinstance(node, BinOp):
        a, b = eval_lc(node.left), eval_lc(node.right)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        try:
            return a / b
        except DivisionByZero:
            raise SemanticError("division by zero", node.pos) from None
    if isinstance(node, Pow):
        q = _exponent(node)
        base = eval_lc(node.base)
        try:
            if q.denominator == 1:
                return base ** int(q)
            return base.rational_power(q)
        except (ValueError, DivisionByZero) as exc:
            raise SemanticError(str(exc), node.pos) from None
    raise SemanticError("sequence syntax is not allowed in a field expression", node.pos)


def eval_seq_expr(node: Expression) -> SymbolicSequence:
    S = SymbolicSequence
    if isinstance(node, Num):
        return S.constant(node.value)
    if isinstance(node, Sym):
        if node.name == "n":
            return S.index()
        raise SemanticError(f"symbol {node.name!r} is not allowed in a sequence expression", node.pos)
    if isinstance(node, Unary):
        v = eval_seq_expr(node.operand)
        return -v if node.op == "-" else v
    if isinstance(node, (BinOp, RatFn)):
        if isinstance(node, RatFn):
            op, left, right = "/", node.num, node.den
        else:
            op, left, right = node.op, node.left, node.right
        a, b = eval_seq_expr(left), eval_seq_expr(right)
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        try:
            return a / b
        except UndefinedAt as exc:
            raise SemanticError(
                f"denominator vanishes at n={exc.n}", node.pos, index=exc.n
            ) from None
    if isinstance(node, Pow):
        q = _exponent(node)
        if q.denominator != 1:
            raise SemanticError("sequence powers must be integers", node.pos)
        try:
            return eval_seq_expr(node.base) ** int(q)
        except UndefinedAt as exc:
            raise SemanticError(f"undefined at n={exc.n}", node.pos, index=exc.n) from None
    if isinstance(node, Alt):
        residues = [r for r, _ in node.cases]
        if node.modulus < 1 or sorted(residues) != list(range(node.modulus)):
            raise SemanticError(
                f"alt({node.modulus}) needs exactly one case for each residue 0..{node.modulus - 1}",
                node.pos,
            )
        parts = dict((r, eval_seq_expr(e)) for r, e in node.cases)
        return S.piecewise([parts[r] for r in range(node.modulus)])
    raise SemanticError("unsupported expression", getattr(node, "pos", 0))


def parse_lc(text: str) -> LCNumber:
    return eval_lc(parse_expression(text, allow_sequence=False))


def parse_seq(text: str) -> SymbolicSequence:
    return eval_seq_expr(parse_expression(text, allow_sequence=True))


# -- printing -----------------------------------------------------------------


def format_expression(node: Expression) -> str:
    """Fully parenthesized text that parses back to an equal tree."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Unary):
        return f"{node.op}({format_expression(node.operand)})"
    if isinstance(node, BinOp):
        return f"({format_expression(node.left)} {node.op} {format_expression(node.right)})"
    if isinstance(node, Pow):
        return f"({format_expression(node.base)})^({format_expression(node.exponent)})"
    if isinstance(node, RatFn):
        return f"ratfn({format_expression(node.num)}, {format_expression(node.den)})"
    if isinstance(node, Alt):
        body = "; ".join(f"{r}: {format_expression(e)}" for r, e in node.cases)
        return f"alt({node.modulus}){{{body}}}"
    raise TypeError(f"not an expression node: {node!r}")
