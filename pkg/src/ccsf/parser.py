"""Recursive-descent parser for terms and equations.

    term   := sum
    sum    := par ('+' par)*
    par    := prefix ('||' prefix)*
    prefix := action '.' prefix | atom
    atom   := '0' | ident | 'f' '(' term ',' term ')' | '(' term ')'
    action := 'a' | "a'" | 'tau'
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .terms import NIL, Action, Term, fop, par, plus, prefix, var

_TOKEN = re.compile(r"\s*(?:(\|\|)|([A-Za-z_][A-Za-z0-9_]*'?)|(\d+)|(\S))")
_IDENT = re.compile(r"[a-z][a-z0-9_]*\Z")
RESERVED = {"a", "tau", "f"}


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.message, self.text, self.pos = message, text, pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")


@dataclass
class _Tok:
    kind: str  # 'op', 'word', 'num', 'end'
    value: str
    pos: int


def _tokens(text: str) -> list[_Tok]:
    out = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            break
        if m.end() == i:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1):
            out.append(_Tok("op", "||", start))
        elif m.group(2):
            out.append(_Tok("word", m.group(2), start))
        elif m.group(3):
            out.append(_Tok("num", m.group(3), start))
        elif m.group(4):
            out.append(_Tok("op", m.group(4), start))
        i = m.end()
    out.append(_Tok("end", "", len(text.rstrip())))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok.pos)

    def expect(self, value: str):
        tok = self.next()
        if tok.value != value or tok.kind == "end":
            self.fail(f"expected {value!r}, found {tok.value or 'end of input'!r}", tok)

    def term(self) -> Term:
        parts = [self.par()]
        while self.peek().value == "+" and self.peek().kind == "op":
            self.next()
            parts.append(self.par())
        return plus(*parts)

    def par(self) -> Term:
        t = self.prefix()
        while self.peek().kind == "op" and self.peek().value == "||":
            self.next()
            t = par(t, self.prefix())
        return t

    def prefix(self) -> Term:
        tok = self.peek()
        if tok.kind == "word" and tok.value in ("a", "a'", "tau"):
            self.next()
            if self.peek().value != ".":
                self.fail(f"expected '.' after action {tok.value!r}")
            self.next()
            return prefix(Action(tok.value), self.prefix())
        return self.atom()

    def atom(self) -> Term:
        tok = self.next()
        if tok.kind == "num":
            if tok.value != "0":
                self.fail(f"unexpected number {tok.value!r}", tok)
            return NIL
        if tok.kind == "word":
            if tok.value == "f":
                self.expect("(")
                left = self.term()
                self.expect(",")
                right = self.term()
                self.expect(")")
                return fop(left, right)
            if tok.value in RESERVED or not _IDENT.match(tok.value):
                self.fail(f"invalid identifier {tok.value!r}", tok)
            return var(tok.value)
        if tok.kind == "op" and tok.value == "(":
            t = self.term()
            self.expect(")")
            return t
        if tok.kind == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected {tok.value!r}", tok)

    def done(self):
        if self.peek().kind != "end":
            self.fail(f"unexpected {self.peek().value!r}")


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.done()
    return t


def parse_equation(text: str) -> tuple[Term, Term]:
    """``lhs = rhs``"""
    p = _Parser(text)
    lhs = p.term()
    tok = p.peek()
    if tok.value != "=":
        p.fail("expected '='")
    p.next()
    rhs = p.term()
    p.done()
    return lhs, rhs
