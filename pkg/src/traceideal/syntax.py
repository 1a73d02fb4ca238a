"""Tokenizer and polynomial grammar shared by the library and the session DSL.

Polynomial text: terms joined by ``+``/``-``; a term is ``coef*mono``,
``mono`` or ``coef``; monomials are ``x^2*y``; coefficients are integers
or ``a/b``.  Whitespace is insignificant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import TraceIdealError

MAX_EXPONENT = 1000

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<sym>[-+*/^()\[\],;=])
    """,
    re.VERBOSE,
)


class ParseError(TraceIdealError):
    """Base for errors found while reading text; carries a 1-based location."""

    kind = "ParseError"

    def __init__(self, line: int, col: int, message: str, expected: Iterable[str] = ()):
        self.line = line
        self.col = col
        self.message = message
        self.expected = tuple(sorted(set(expected)))
        super().__init__(str(self))

    def __str__(self):
        text = f"{self.kind} at {self.line}:{self.col}: {self.message}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        return text


class SessionSyntaxError(ParseError):
    kind = "SyntaxError"


class UndefinedIdentifier(ParseError):
    kind = "UndefinedIdentifier"


class DuplicateIdentifier(ParseError):
    kind = "DuplicateIdentifier"


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", a symbol character, or "eof"
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise SessionSyntaxError(line, pos - line_start + 1, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("int", "ident"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        elif kind == "sym":
            tokens.append(Token(m.group(), m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class TokenStream:
    def __init__(self, tokens: list):
        self.tokens = tokens
        self.i = 0

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind != "eof":
            self.i += 1
        return tok

    def at(self, *kinds: str) -> bool:
        return self.peek().kind in kinds

    def accept(self, kind: str):
        if self.peek().kind == kind:
            return self.next()
        return None

    def expect(self, *kinds: str) -> Token:
        tok = self.peek()
        if tok.kind not in kinds:
            shown = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise SessionSyntaxError(tok.line, tok.col, f"unexpected {shown}", kinds)
        return self.next()

    def fail(self, message: str, expected: Iterable[str] = ()):
        tok = self.peek()
        raise SessionSyntaxError(tok.line, tok.col, message, expected)


@dataclass(frozen=True)
class PolyExpr:
    """Ring-independent polynomial syntax tree: ``(coefficient, ((var, exp), ...))`` terms."""

    terms: tuple
    line: int
    col: int

    def variables(self) -> set:
        return {v for _, powers in self.terms for v, _ in powers}


def _int_token(stream: TokenStream) -> int:
    tok = stream.expect("int")
    try:
        return int(tok.text)
    except ValueError:  # longer than the interpreter's digit limit
        raise SessionSyntaxError(tok.line, tok.col, "integer literal too long") from None


def _factor(stream: TokenStream):
    tok = stream.peek()
    if tok.kind == "int":
        num = _int_token(stream)
        if stream.accept("/"):
            den_tok = stream.peek()
            den = _int_token(stream)
            if den == 0:
                raise SessionSyntaxError(den_tok.line, den_tok.col, "zero denominator")
            return Fraction(num, den), None
        return Fraction(num), None
    if tok.kind == "ident":
        stream.next()
        exp = 1
        if stream.accept("^"):
            exp_tok = stream.peek()
            exp = _int_token(stream)
            if not 1 <= exp <= MAX_EXPONENT:
                raise SessionSyntaxError(
                    exp_tok.line, exp_tok.col, f"exponent must be between 1 and {MAX_EXPONENT}"
                )
        return Fraction(1), (tok.text, exp, tok.line, tok.col)
    stream.fail("expected a coefficient or variable", ("int", "ident"))


def parse_poly_expr(stream: TokenStream) -> PolyExpr:
    start = stream.peek()
    terms = []
    sign = 1
    if stream.at("-", "+"):
        sign = -1 if stream.next().kind == "-" else 1
    while True:
        coef = Fraction(sign)
        powers: dict = {}
        while True:
            c, var = _factor(stream)
            coef *= c
            if var is not None:
                powers[var[0]] = powers.get(var[0], 0) + var[1]
                if powers[var[0]] > MAX_EXPONENT:
                    raise SessionSyntaxError(var[2], var[3], f"exponent exceeds {MAX_EXPONENT}")
            if not stream.accept("*"):
                break
        terms.append((coef, tuple(sorted(powers.items()))))
        if stream.at("+", "-"):
            sign = -1 if stream.next().kind == "-" else 1
        else:
            break
    return PolyExpr(tuple(terms), start.line, start.col)


def parse_poly_list(stream: TokenStream) -> list:
    """``( poly, poly, ... )``; the empty list ``()`` is allowed."""
    stream.expect("(")
    out = []
    if stream.accept(")"):
        return out
    while True:
        out.append(parse_poly_expr(stream))
        if stream.accept(")"):
            return out
        stream.expect(",", ")")


def realize(expr: PolyExpr, ring):
    """Turn a syntax tree into a Polynomial of ``ring``."""
    from .core import Polynomial

    index = {name: i for i, name in enumerate(ring.variables)}
    f = ring.field
    out: dict = {}
    for coef, powers in expr.terms:
        exps = [0] * ring.nvars
        for name, e in powers:
            if name not in index:
                raise UndefinedIdentifier(expr.line, expr.col, f"unknown variable {name!r} in {ring}")
            exps[index[name]] += e
        m = tuple(exps)
        out[m] = f.add(out.get(m, 0), f.coerce(coef))
    return Polynomial(ring, out)


def parse_polynomial(text: str, ring):
    stream = TokenStream(tokenize(text))
    expr = parse_poly_expr(stream)
    stream.expect("eof")
    return realize(expr, ring)
