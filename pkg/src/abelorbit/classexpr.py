"""Tiny parser for cohomology classes typed on the command line.

Grammar::

    expr     := sign? term (('+' | '-') term)*
    term     := rational | rational? atom ('^' atom)*
    atom     := 'e' INT | 'f' INT
    rational := INT ('/' INT)?

``^`` is the wedge product, e.g. ``"1/2 e1^e2 - f1^f2 + 3"``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .cohomology import GroundMismatch, GroundSpace, Multivector

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<atom>[ef]\d+)|(?P<op>[+\-^/]))")


class ClassExprError(ValueError):
    code = "E007"

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _tokenize(text: str):
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        if text[pos] == "\n":
            line, line_start = line + 1, pos + 1
            pos += 1
            continue
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ClassExprError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        start = m.start(m.lastgroup)
        tokens.append((m.lastgroup, m.group(m.lastgroup), line, start - line_start + 1))
        pos = m.end()
    tokens.append(("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, ground: GroundSpace):
        self.toks = _tokenize(text)
        self.i = 0
        self.ground = ground

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ClassExprError(msg, tok[2], tok[3])

    def expr(self) -> Multivector:
        sign = 1
        if self.peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        total = self.term() * sign
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
            total = total + self.term() * sign
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return total

    def term(self) -> Multivector:
        coeff = Fraction(1)
        has_coeff = False
        if self.peek()[0] == "int":
            coeff = Fraction(int(self.take()[1]))
            has_coeff = True
            if self.peek()[:2] == ("op", "/"):
                self.take()
                tok = self.peek()
                if tok[0] != "int":
                    self.fail("expected a denominator")
                den = int(self.take()[1])
                if den == 0:
                    self.fail("zero denominator", tok)
                coeff /= den
        if self.peek()[0] != "atom":
            if has_coeff:
                return Multivector.scalar(self.ground, coeff)
            self.fail("expected a number or a generator such as e1")
        value = self.atom()
        while self.peek()[:2] == ("op", "^"):
            self.take()
            if self.peek()[0] != "atom":
                self.fail("expected a generator after '^'")
            value = value ^ self.atom()
        return value * coeff

    def atom(self) -> Multivector:
        tok = self.take()
        try:
            return Multivector.generator(self.ground, tok[1])
        except GroundMismatch:
            raise ClassExprError(f"generator {tok[1]!r} is not in {list(self.ground.labels)}",
                                 tok[2], tok[3]) from None


def parse_class(text: str, ground: GroundSpace) -> Multivector:
    if not text.strip():
        raise ClassExprError("empty expression", 1, 1)
    return _Parser(text, ground).expr()
