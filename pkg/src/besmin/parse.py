"""Recursive-descent parser for the concrete equation-system text format.

Grammar::

    bes      := (equation)*
    equation := ("mu"|"nu") IDENT "=" formula ";"
    formula  := disj
    disj     := conj ("||" conj)*
    conj     := atom ("&&" atom)*
    atom     := "true" | "false" | IDENT | "(" formula ")"
              | ("AND"|"OR") "{" IDENT ("," IDENT)* "}"

Identifiers start with a letter or underscore, followed by letters,
digits, underscores and primes.  "//" starts a line comment.  Chained
same-operator formulas parse to a left-nested binary AST; parentheses
are preserved as explicit nesting.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, WellFormednessError
from .syntax import (
    And,
    AndSet,
    Const,
    Equation,
    EquationSystem,
    Fixpoint,
    Formula,
    Or,
    OrSet,
    Var,
)

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>[ \t\r\n]+)
    | (?P<comment>//[^\n]*)
    | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
    | (?P<op>&&|\|\||[=;(){},])
    """,
    re.VERBOSE,
)

_KEYWORDS = {"mu", "nu", "true", "false", "AND", "OR"}


@dataclass(frozen=True)
class _Token:
    kind: str  # 'ident', keyword itself, or the operator text; 'eof'
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        column = pos - line_start + 1
        if m.lastgroup == "ident":
            word = m.group()
            kind = word if word in _KEYWORDS else "ident"
            tokens.append(_Token(kind, word, line, column))
        elif m.lastgroup == "op":
            tokens.append(_Token(m.group(), m.group(), line, column))
        elif m.lastgroup == "ws":
            chunk = m.group()
            newlines = chunk.count("\n")
            if newlines:
                line += newlines
                line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, len(text) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.current
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.current
        if tok.kind != kind:
            raise ParseError(
                f"expected {kind!r}, got {tok.text or 'end of input'!r}",
                tok.line,
                tok.column,
            )
        return self.advance()

    def parse_system(self) -> EquationSystem:
        equations = []
        bound = {}
        while self.current.kind != "eof":
            tok = self.current
            if tok.kind not in ("mu", "nu"):
                raise ParseError(
                    f"expected 'mu' or 'nu', got {tok.text or 'end of input'!r}",
                    tok.line,
                    tok.column,
                )
            self.advance()
            sign = Fixpoint.MU if tok.kind == "mu" else Fixpoint.NU
            name_tok = self.expect("ident")
            if name_tok.text in bound:
                raise WellFormednessError(
                    f"variable {name_tok.text} is bound by more than one "
                    f"equation (line {name_tok.line})"
                )
            bound[name_tok.text] = True
            self.expect("=")
            rhs = self.parse_formula()
            self.expect(";")
            equations.append(Equation(sign, name_tok.text, rhs))
        return EquationSystem(tuple(equations))

    def parse_formula(self) -> Formula:
        f = self.parse_conj()
        while self.current.kind == "||":
            self.advance()
            f = Or(f, self.parse_conj())
        return f

    def parse_conj(self) -> Formula:
        f = self.parse_atom()
        while self.current.kind == "&&":
            self.advance()
            f = And(f, self.parse_atom())
        return f

    def parse_atom(self) -> Formula:
        tok = self.current
        if tok.kind == "true":
            self.advance()
            return Const(True)
        if tok.kind == "false":
            self.advance()
            return Const(False)
        if tok.kind == "ident":
            self.advance()
            return Var(tok.text)
        if tok.kind == "(":
            self.advance()
            f = self.parse_formula()
            self.expect(")")
            return f
        if tok.kind in ("AND", "OR"):
            self.advance()
            self.expect("{")
            members = [self.expect("ident").text]
            while self.current.kind == ",":
                self.advance()
                members.append(self.expect("ident").text)
            self.expect("}")
            cls = AndSet if tok.kind == "AND" else OrSet
            return cls(frozenset(members))
        raise ParseError(
            f"expected a formula, got {tok.text or 'end of input'!r}",
            tok.line,
            tok.column,
        )


def parse_bes(text: str) -> EquationSystem:
    return _Parser(_tokenize(text)).parse_system()


def parse_formula(text: str) -> Formula:
    parser = _Parser(_tokenize(text))
    f = parser.parse_formula()
    tok = parser.current
    if tok.kind != "eof":
        raise ParseError(
            f"trailing input after formula: {tok.text!r}", tok.line, tok.column
        )
    return f
