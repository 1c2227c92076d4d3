"""Recursive-descent parser for Grassmannian class expressions.

    expr   := term { "+" term }
    term   := factor { "*" factor }
    factor := atom [ "^" nat ]
    atom   := "xi" "(" nat ")" | "e" "(" nat ")" | "h" "(" nat ")"
            | "cqe" "(" nat "," nat ")" | "e1" | "s" "[" nat { "," nat } "]"
            | nat | "(" expr ")"
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .grchow import (
    GrClass,
    GrContext,
    chern_sym_power,
    class_e,
    class_e1_pow,
    class_schur,
    class_xi,
    gr_mul,
    gr_pow,
    scalar_class,
)


class ExprError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class ExprSyntaxError(ExprError):
    pass


class UnknownSymbol(ExprError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "nat", "op", "end"
    text: str
    offset: int


_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<nat>\d+)|(?P<op>[-+*^()\[\],]))")


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            rest = text[pos:]
            stripped = rest.lstrip()
            if not stripped:
                break
            offset = pos + len(rest) - len(stripped)
            raise ExprSyntaxError(f"unexpected character {stripped[0]!r}", offset)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


_FUNCTIONS = {"xi": 1, "e": 1, "h": 1, "cqe": 2}


class _Parser:
    def __init__(self, ctx: GrContext, text: str):
        self.ctx = ctx
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.tok
        if tok.text != text or tok.kind not in ("op",):
            found = tok.text or "end of input"
            raise ExprSyntaxError(f"expected {text!r}, found {found!r}", tok.offset)
        return self.advance()

    def nat(self) -> int:
        tok = self.tok
        if tok.kind == "op" and tok.text == "-":
            raise ExprSyntaxError("negative numbers are not allowed", tok.offset)
        if tok.kind != "nat":
            found = tok.text or "end of input"
            raise ExprSyntaxError(f"expected a nonnegative integer, found {found!r}", tok.offset)
        self.advance()
        return int(tok.text)

    def parse(self) -> GrClass:
        value = self.expr()
        if self.tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {self.tok.text!r}", self.tok.offset)
        return value

    def expr(self) -> GrClass:
        value = self.term()
        while self.tok.kind == "op" and self.tok.text == "+":
            self.advance()
            value = value + self.term()
        return value

    def term(self) -> GrClass:
        factors = [self.factor()]
        while self.tok.kind == "op" and self.tok.text == "*":
            self.advance()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else gr_mul(self.ctx, factors)

    def factor(self) -> GrClass:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            if self.tok.kind == "op" and self.tok.text == "-":
                raise ExprSyntaxError("negative exponent", self.tok.offset)
            k = self.nat()
            if base.shadow == ((1, (("e1", 1),)),):
                return class_e1_pow(self.ctx, k)
            return gr_pow(base, k)
        return base

    def atom(self) -> GrClass:
        tok = self.tok
        if tok.kind == "nat":
            self.advance()
            return scalar_class(self.ctx, int(tok.text))
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        if tok.kind == "name":
            return self.named(tok)
        found = tok.text or "end of input"
        raise ExprSyntaxError(f"unexpected {found!r}", tok.offset)

    def named(self, tok: Token) -> GrClass:
        name = tok.text
        self.advance()
        if name == "e1":
            return class_e1_pow(self.ctx, 1)
        if name == "s":
            self.expect("[")
            parts = [self.nat()]
            while self.tok.kind == "op" and self.tok.text == ",":
                self.advance()
                parts.append(self.nat())
            self.expect("]")
            if any(b > a for a, b in zip(parts, parts[1:])):
                raise ExprSyntaxError("Schur index must be weakly decreasing", tok.offset)
            return class_schur(self.ctx, parts)
        if name not in _FUNCTIONS:
            raise UnknownSymbol(f"unknown symbol {name!r}", tok.offset)
        self.expect("(")
        args = [self.nat()]
        for _ in range(_FUNCTIONS[name] - 1):
            self.expect(",")
            args.append(self.nat())
        self.expect(")")
        if name in ("xi", "h"):
            return class_xi(self.ctx, args[0])
        if name == "e":
            return class_e(self.ctx, args[0])
        d, j = args
        if d < 1:
            raise ExprSyntaxError("cqe degree must be at least 1", tok.offset)
        return chern_sym_power(self.ctx, d, j)


def parse_class_expr(ctx: GrContext, text: str) -> GrClass:
    return _Parser(ctx, text).parse()
