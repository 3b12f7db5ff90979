"""Concrete text syntax for Pi programs, types and values.

Grammar (``--`` starts a line comment)::

    program  ::= comb [ ':' type '<->' type ]
    comb     ::= sumc { ';' sumc }                 -- left associative
    sumc     ::= prodc { '+' prodc }
    prodc    ::= unary { '*' unary }
    unary    ::= 'inv' unary | atom
    atom     ::= PRIM | '(' comb [ ':' type '<->' type ] ')'
    type     ::= tprod { '+' tprod }
    tprod    ::= tatom { '*' tatom }
    tatom    ::= '0' | '1' | '(' type ')'
    value    ::= '()' | 'inl' value | 'inr' value | '(' value ',' value ')' | '(' value ')'

``print_comb`` emits the normalized form, so ``print_comb(parse(text))`` is
stable and ``parse(print_comb(c)) == c`` for every AST.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    DUALS,
    ONE,
    UNIT,
    ZERO,
    Ascribe,
    Comb,
    InL,
    InR,
    Inv,
    Pair,
    Prim,
    Prod,
    ProdC,
    Seq,
    Sum,
    SumC,
    Value,
    ValueType,
    format_type,
)


class PiSyntaxError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # 'prim', 'kw', 'sym', 'eof'
    text: str
    line: int
    column: int


# longest first so that e.g. ``swapx`` wins over a shorter prefix
_PRIM_NAMES = sorted(DUALS, key=len, reverse=True)
_KEYWORDS = ("inv", "inl", "inr")
_SYMBOLS = ("<->", "(", ")", ";", "+", "*", ":", ",", "0", "1")
_WORD_CHAR = re.compile(r"[A-Za-z0-9_'+]")


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if ch.isspace():
            col, i = col + 1, i + 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        matched = None
        if ch.isalpha():
            for name in _KEYWORDS:
                if text.startswith(name, i) and not _is_word_char(text, i + len(name)):
                    matched = Token("kw", name, line, col)
                    break
            if matched is None:
                for name in _PRIM_NAMES:
                    end = i + len(name)
                    if text.startswith(name, i) and not (
                        end < n and text[end].isalnum()
                    ):
                        matched = Token("prim", name, line, col)
                        break
            if matched is None:
                m = re.compile(r"[A-Za-z0-9_'+]+").match(text, i)
                raise PiSyntaxError(f"unknown identifier {m.group(0)!r}", line, col)
        else:
            for sym in _SYMBOLS:
                if text.startswith(sym, i):
                    matched = Token("sym", sym, line, col)
                    break
            if matched is None:
                raise PiSyntaxError(f"unexpected character {ch!r}", line, col)
        tokens.append(matched)
        i += len(matched.text)
        col += len(matched.text)
    tokens.append(Token("eof", "", line, col))
    return tokens


def _is_word_char(text: str, i: int) -> bool:
    return i < len(text) and bool(_WORD_CHAR.match(text[i])) and text[i] != "+"


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "kw") and self.tok.text == text

    def advance(self) -> Token:
        t = self.tok
        self.pos += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        return self.advance()

    def fail(self, message: str):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise PiSyntaxError(f"{message}, found {found}", t.line, t.column)

    def finish(self) -> None:
        if self.tok.kind != "eof":
            self.fail("expected end of input")

    # combinators

    def program(self) -> Comb:
        c = self.comb()
        if self.at(":"):
            c = self.ascription(c)
        return c

    def ascription(self, c: Comb) -> Comb:
        self.expect(":")
        dom = self.type_()
        self.expect("<->")
        cod = self.type_()
        return Ascribe(c, dom, cod)

    def comb(self) -> Comb:
        c = self.sumc()
        while self.at(";"):
            self.advance()
            c = Seq(c, self.sumc())
        return c

    def sumc(self) -> Comb:
        c = self.prodc()
        while self.at("+"):
            self.advance()
            c = SumC(c, self.prodc())
        return c

    def prodc(self) -> Comb:
        c = self.unary()
        while self.at("*"):
            self.advance()
            c = ProdC(c, self.unary())
        return c

    def unary(self) -> Comb:
        if self.at("inv"):
            self.advance()
            return Inv(self.unary())
        if self.tok.kind == "prim":
            return Prim(self.advance().text)
        if self.at("("):
            self.advance()
            c = self.comb()
            if self.at(":"):
                c = self.ascription(c)
            self.expect(")")
            return c
        self.fail("expected a combinator")

    # types

    def type_(self) -> ValueType:
        b = self.tprod()
        while self.at("+"):
            self.advance()
            b = Sum(b, self.tprod())
        return b

    def tprod(self) -> ValueType:
        b = self.tatom()
        while self.at("*"):
            self.advance()
            b = Prod(b, self.tatom())
        return b

    def tatom(self) -> ValueType:
        if self.at("0"):
            self.advance()
            return ZERO
        if self.at("1"):
            self.advance()
            return ONE
        if self.at("("):
            self.advance()
            b = self.type_()
            self.expect(")")
            return b
        self.fail("expected a type")

    # values

    def value(self) -> Value:
        if self.at("inl"):
            self.advance()
            return InL(self.value())
        if self.at("inr"):
            self.advance()
            return InR(self.value())
        if self.at("("):
            self.advance()
            if self.at(")"):
                self.advance()
                return UNIT
            v = self.value()
            if self.at(","):
                self.advance()
                w = self.value()
                self.expect(")")
                return Pair(v, w)
            self.expect(")")
            return v
        self.fail("expected a value")


def parse(text: str) -> Comb:
    """Parse a program: a combinator with an optional top-level ascription."""
    p = _Parser(text)
    c = p.program()
    p.finish()
    return c


def parse_type(text: str) -> ValueType:
    p = _Parser(text)
    b = p.type_()
    p.finish()
    return b


def parse_comb_type(text: str) -> tuple[ValueType, ValueType]:
    """Parse ``b1 <-> b2``."""
    p = _Parser(text)
    dom = p.type_()
    p.expect("<->")
    cod = p.type_()
    p.finish()
    return dom, cod


def parse_value(text: str) -> Value:
    p = _Parser(text)
    v = p.value()
    p.finish()
    return v


def print_type(b: ValueType) -> str:
    return format_type(b)


def print_value(v: Value) -> str:
    return str(v)


# precedence: 0 = ';', 1 = '+', 2 = '*', 3 = unary/atom
def _fmt(c: Comb, prec: int, nested: bool) -> str:
    if isinstance(c, Prim):
        return c.name
    if isinstance(c, Ascribe):
        text = f"{_fmt(c.body, 0, True)} : {format_type(c.dom)} <-> {format_type(c.cod)}"
        return f"({text})" if nested else text
    if isinstance(c, Inv):
        return f"inv {_fmt(c.body, 3, True)}"
    if isinstance(c, Seq):
        text = f"{_fmt(c.first, 0, True)} ; {_fmt(c.second, 1, True)}"
        return f"({text})" if prec > 0 else text
    if isinstance(c, SumC):
        text = f"{_fmt(c.left, 1, True)} + {_fmt(c.right, 2, True)}"
        return f"({text})" if prec > 1 else text
    if isinstance(c, ProdC):
        text = f"{_fmt(c.left, 2, True)} * {_fmt(c.right, 3, True)}"
        return f"({text})" if prec > 2 else text
    raise TypeError(f"not a combinator: {c!r}")


def print_comb(c: Comb) -> str:
    """Normalized text for ``c``; parsing it gives back ``c``."""
    return _fmt(c, 0, False)
