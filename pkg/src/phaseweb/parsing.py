"""Recursive-descent parser for multivector expressions.

Grammar (whitespace is insignificant)::

    expr   := term ('+' term)*
    term   := factor ('*'? factor)*        juxtaposition binds tighter than '+'
    factor := SENSOR | '~' SENSOR | INT | '(' expr ')'
    SENSOR := 's' digits
    INT    := '0' | '1' | '2' | '-1'
"""

from __future__ import annotations

import re
from typing import NamedTuple, Optional

from .algebra import Multivector, SigLike, as_signature, geometric_product
from .errors import ParseError

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<sensor>~?s\d+)
  | (?P<int>-1|\d+)
  | (?P<op>[+*()])
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            nl = chunk.count("\n")
            if nl:
                line += nl
                line_start = pos + chunk.rfind("\n") + 1
        else:
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


def _sensor_index(tok: Token) -> int:
    return int(tok.text.lstrip("~")[1:])


class _Parser:
    def __init__(self, tokens, n, sig):
        self.toks = tokens
        self.i = 0
        self.n = n
        self.sig = sig

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, msg, tok=None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def starts_factor(self) -> bool:
        t = self.tok
        return t.kind in ("sensor", "int") or (t.kind == "op" and t.text == "(")

    def expr(self) -> Multivector:
        acc = self.term()
        while self.tok.kind == "op" and self.tok.text == "+":
            self.advance()
            acc = acc + self.term()
        return acc

    def term(self) -> Multivector:
        acc = self.factor()
        while True:
            if self.tok.kind == "op" and self.tok.text == "*":
                self.advance()
            elif not self.starts_factor():
                return acc
            acc = geometric_product(acc, self.factor(), self.sig)

    def factor(self) -> Multivector:
        t = self.tok
        if t.kind == "sensor":
            self.advance()
            i = _sensor_index(t)
            if not 1 <= i <= self.n:
                self.fail(f"unknown sensor {t.text.lstrip('~')!r} (universe is s1..s{self.n})", t)
            return Multivector(self.n, {(i,): 2 if t.text.startswith("~") else 1}, _trusted=True)
        if t.kind == "int":
            if t.text not in ("0", "1", "2", "-1"):
                self.fail(f"integer literal {t.text!r} not in 0, 1, 2, -1", t)
            self.advance()
            return Multivector.scalar(self.n, int(t.text))
        if t.kind == "op" and t.text == "(":
            self.advance()
            inner = self.expr()
            if not (self.tok.kind == "op" and self.tok.text == ")"):
                self.fail("expected ')'")
            self.advance()
            return inner
        if t.kind == "eof":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {t.text!r}")


def parse_expression(text: str, sig: SigLike = 1, n: Optional[int] = None) -> Multivector:
    """Parse ``text`` into a multivector over ``n`` sensors.

    If ``n`` is omitted the universe is the largest sensor index mentioned.
    """
    tokens = tokenize(text)
    if n is None:
        n = max((_sensor_index(t) for t in tokens if t.kind == "sensor"), default=0)
    p = _Parser(tokens, n, as_signature(sig, n))
    result = p.expr()
    if p.tok.kind != "eof":
        p.fail(f"unexpected {p.tok.text!r}")
    return result
