"""Recursive-descent parser for integer polynomials in one variable ``x``.

Grammar (whitespace ignored, juxtaposition is multiplication, so ``7x`` works)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*')? unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | 'x' | '(' expr ')'
"""

from __future__ import annotations

import re

from .errors import PolyParseError
from .polyring import IntPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, sym = m.groups()
        if num is not None:
            tokens.append(num)
        elif sym in "+-*^()xX":
            tokens.append(sym.lower())
        else:
            raise PolyParseError(f"unexpected character {sym!r} at position {m.start(2)}")
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise PolyParseError("unexpected end of input")
        self.i += 1
        return tok

    def expr(self) -> IntPoly:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> IntPoly:
        value = self.unary()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
            elif not (tok is not None and (tok.isdigit() or tok in ("x", "("))):
                return value
            value = value * self.unary()

    def unary(self) -> IntPoly:
        tok = self.peek()
        if tok == "-":
            self.take()
            return -self.unary()
        if tok == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> IntPoly:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exp = self.take()
            if not exp.isdigit():
                raise PolyParseError(f"exponent must be a nonnegative integer, got {exp!r}")
            return base ** int(exp)
        return base

    def atom(self) -> IntPoly:
        tok = self.take()
        if tok.isdigit():
            return IntPoly([int(tok)])
        if tok == "x":
            return IntPoly.x()
        if tok == "(":
            value = self.expr()
            if self.take() != ")":
                raise PolyParseError("missing ')'")
            return value
        raise PolyParseError(f"unexpected token {tok!r}")


def parse_poly(text: str) -> IntPoly:
    """Parse e.g. ``"x^7 - 7x + 3"`` into an :class:`IntPoly`."""
    tokens = _tokenize(text)
    if not tokens:
        raise PolyParseError("empty polynomial")
    parser = _Parser(tokens)
    value = parser.expr()
    if parser.peek() is not None:
        raise PolyParseError(f"trailing input at token {parser.peek()!r}")
    return value
