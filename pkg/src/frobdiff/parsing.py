"""Polynomial expressions: tokenizer, recursive-descent parser and evaluator.

Grammar, loosest binding first::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

Juxtaposition is rejected, so ``2x`` must be written ``2*x``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import ParseError
from .ff import Prime
from .poly import MAX_EXPONENT, MultiPoly, Ring

__all__ = ["Num", "Var", "Neg", "BinOp", "Pow", "PolyExpr", "parse_expr", "parse_polynomial", "evaluate"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: "PolyExpr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "PolyExpr"
    right: "PolyExpr"


@dataclass(frozen=True)
class Pow:
    base: "PolyExpr"
    exponent: int


PolyExpr = Union[Num, Var, Neg, BinOp, Pow]


def _tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m.end() == pos or not m.group(0).strip():
            break
        start = m.end() - len(m.group(0).lstrip())
        num, name, sym = m.groups()
        if num is not None:
            tokens.append(("int", int(num), start))
        elif name is not None:
            tokens.append(("name", name, start))
        elif sym in "+-*^()":
            tokens.append((sym, sym, start))
        else:
            raise ParseError(f"unexpected character {sym!r}", start)
        pos = m.end()
    tokens.append(("end", None, len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, got {got}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "*":
            self.take()
            node = BinOp("*", node, self.unary())
        return node

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                raise ParseError("exponent must be a non-negative integer literal", tok[2])
            self.take()
            if tok[1] > MAX_EXPONENT:
                raise ParseError(f"exponent {tok[1]} too large", tok[2])
            node = Pow(node, tok[1])
            if self.peek()[0] == "^":
                raise ParseError("chained '^' is ambiguous; use parentheses", self.peek()[2])
        return node

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            return Num(value)
        if kind == "name":
            self.take()
            return Var(value, pos)
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        got = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"unexpected {got}", pos)


def parse_expr(src: str) -> PolyExpr:
    parser = _Parser(src)
    node = parser.expr()
    tok = parser.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])
    return node


def evaluate(node: PolyExpr, ring: Ring) -> MultiPoly:
    if isinstance(node, Num):
        return ring.const(node.value)
    if isinstance(node, Var):
        if node.name not in ring.names:
            raise ParseError(f"unknown variable {node.name!r}", node.pos)
        return ring.gen(node.name)
    if isinstance(node, Neg):
        return -evaluate(node.operand, ring)
    if isinstance(node, Pow):
        return evaluate(node.base, ring) ** node.exponent
    left, right = evaluate(node.left, ring), evaluate(node.right, ring)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    return left * right


def parse_polynomial(src: str, p, names: Sequence[str]) -> MultiPoly:
    """Parse ``src`` into a polynomial over F_p in the declared variables."""
    names = tuple(names)
    if not names:
        raise ValueError("at least one variable is required")
    for name in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
            raise ValueError(f"invalid variable name {name!r}")
    if len(set(names)) != len(names):
        raise ValueError("variable names must be distinct")
    ring = Ring(Prime(p), names)
    return evaluate(parse_expr(src), ring)
