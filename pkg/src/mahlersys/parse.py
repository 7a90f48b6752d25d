"""Text format for matrices of rational functions in ``z``.

    matrix := row (';' row)*
    row    := expr (',' expr)*
    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' exponent)?
    exponent := ('+' | '-')? INT | '(' ('+' | '-')? INT ')'
    atom   := INT | 'z' | '(' expr ')'

``^`` binds tighter than unary minus, so ``-z^2`` is ``-(z^2)``.
Whitespace, including newlines, is ignored.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .exact import RatFun, ratfun_to_str


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Token:
    kind: str  # INT, Z, OP, END
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(r"\s+|(\d+)|(z)|([-+*/^(),;])")


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        col = pos - line_start + 1
        if m.group(1):
            tokens.append(_Token("INT", m.group(1), line, col))
        elif m.group(2):
            tokens.append(_Token("Z", "z", line, col))
        elif m.group(3):
            tokens.append(_Token("OP", m.group(3), line, col))
        else:
            for i, ch in enumerate(m.group(0)):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        pos = m.end()
    tokens.append(_Token("END", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: _Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def accept(self, op: str) -> bool:
        if self.tok.kind == "OP" and self.tok.text == op:
            self.i += 1
            return True
        return False

    def expect(self, op: str) -> None:
        if not self.accept(op):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {op!r}, found {found!r}")

    def matrix(self) -> list[list[RatFun]]:
        rows = [self.row()]
        while self.accept(";"):
            rows.append(self.row())
        if self.tok.kind != "END":
            raise self.error(f"unexpected {self.tok.text!r}")
        return rows

    def row(self) -> list[RatFun]:
        entries = [self.expr()]
        while self.accept(","):
            entries.append(self.expr())
        return entries

    def expr(self) -> RatFun:
        value = self.term()
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> RatFun:
        value = self.unary()
        while True:
            if self.accept("*"):
                value = value * self.unary()
            elif self.tok.kind == "OP" and self.tok.text == "/":
                tok = self.tok
                self.i += 1
                divisor = self.unary()
                if divisor.is_zero():
                    raise self.error("division by zero", tok)
                value = value / divisor
            else:
                return value

    def unary(self) -> RatFun:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> RatFun:
        base = self.atom()
        tok = self.tok
        if not self.accept("^"):
            return base
        n = self.exponent()
        if n < 0 and base.is_zero():
            raise self.error("zero raised to a negative power", tok)
        if self.tok.kind == "OP" and self.tok.text == "^":
            raise self.error("chained '^' is ambiguous; use parentheses")
        return base ** n

    def exponent(self) -> int:
        paren = self.accept("(")
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        if self.tok.kind != "INT":
            raise self.error("exponent must be an integer")
        n = sign * int(self.tok.text)
        self.i += 1
        if paren:
            self.expect(")")
        return n

    def atom(self) -> RatFun:
        tok = self.tok
        if tok.kind == "INT":
            self.i += 1
            value = RatFun.const(int(tok.text))
        elif tok.kind == "Z":
            self.i += 1
            value = RatFun.z()
        elif self.accept("("):
            value = self.expr()
            self.expect(")")
        else:
            raise self.error(f"expected a number, 'z' or '(', found {tok.text or 'end of input'!r}")
        nxt = self.tok
        if nxt.kind in ("INT", "Z") or (nxt.kind == "OP" and nxt.text == "("):
            raise self.error("missing operator (write '*' for products)")
        return value


def parse_matrix(text: str) -> list[list[RatFun]]:
    """Parse a square matrix. Raises :class:`ParseError` on bad syntax or shape."""
    rows = _Parser(text).matrix()
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ParseError(f"ragged rows: lengths {sorted(widths)}", 1, 1)
    if widths.pop() != len(rows):
        raise ParseError(f"matrix is {len(rows)}x{len(rows[0])}, not square", 1, 1)
    return rows


def serialize_matrix(rows: Sequence[Sequence[RatFun]]) -> str:
    return "; ".join(", ".join(ratfun_to_str(f) for f in row) for row in rows)
