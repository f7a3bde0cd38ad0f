"""Text syntax for binary forms, e.g. ``t^2*v - 3/2*v^3``.

Grammar (recursive descent)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER ('/' NUMBER)? | VAR | '(' expr ')'

Juxtaposition such as ``2t`` is accepted as multiplication.  Every parsed
polynomial must be homogeneous in its two variables.
"""
from __future__ import annotations

import re

from gmpy2 import mpq

from .poly import HPoly, UPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


class PolyParseError(ValueError):
    """Malformed polynomial text; carries a 1-based line and column."""

    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line, self.col = line, col


# a polynomial in two variables, sparse: {(i, j): coef} with x^i y^j
def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i, j), c in a.items():
        for (k, l), d in b.items():
            key = (i + k, j + l)
            out[key] = out.get(key, 0) + c * d
    return {k: c for k, c in out.items() if c}


def _add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + sign * c
    return {k: c for k, c in out.items() if c}


class _Parser:
    def __init__(self, text: str, variables: tuple[str, str]):
        self.text = text
        self.vars = variables
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                break
            start = m.start(m.lastindex) if m.lastindex else m.end()
            if m.group(1):
                self.toks.append(("num", m.group(1), start))
            elif m.group(2):
                self.toks.append(("name", m.group(2), start))
            else:
                self.toks.append(("op", m.group(3), start))
            pos = m.end()
        self.toks.append(("end", "", len(text.rstrip())))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolyParseError(msg, self.text, tok[2])

    def parse(self) -> dict:
        if self.peek()[0] == "end":
            self.fail("empty polynomial")
        e = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self) -> dict:
        acc = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = 1 if self.take()[1] == "+" else -1
            acc = _add(acc, self.term(), sign)
        return acc

    def term(self) -> dict:
        acc = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = _mul(acc, self.unary())
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                acc = _mul(acc, self.unary())
            else:
                return acc

    def unary(self) -> dict:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.unary()
            return inner if val == "+" else {k: -c for k, c in inner.items()}
        return self.power()

    def power(self) -> dict:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.fail("expected an integer exponent", tok)
            out = {(0, 0): mpq(1)}
            for _ in range(int(tok[1])):
                out = _mul(out, base)
            return out
        return base

    def atom(self) -> dict:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            num = mpq(int(val))
            if self.peek()[:2] == ("op", "/"):
                self.take()
                den = self.take()
                if den[0] != "num":
                    self.fail("expected a denominator", den)
                if int(den[1]) == 0:
                    self.fail("zero denominator", den)
                num = num / int(den[1])
            return {(0, 0): num} if num else {}
        if kind == "name":
            if val == self.vars[0]:
                return {(1, 0): mpq(1)}
            if val == self.vars[1]:
                return {(0, 1): mpq(1)}
            self.fail(f"unknown variable {val!r} (expected {self.vars[0]} or {self.vars[1]})", tok)
        if kind == "op" and val == "(":
            e = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                self.fail("expected ')'", close)
            return e
        self.fail(f"unexpected {val!r}" if val else "unexpected end of input", tok)


def parse_hpoly(text: str, variables: tuple[str, str] = ("t", "v"), degree: int | None = None) -> HPoly:
    """Parse a binary form; ``degree`` fixes the degree of the zero form check."""
    terms = _Parser(text, variables).parse()
    if not terms:
        return HPoly.zero()
    degs = {i + j for i, j in terms}
    if len(degs) != 1:
        raise PolyParseError(f"polynomial is not homogeneous (degrees {sorted(degs)})", text, 0)
    d = degs.pop()
    if degree is not None and d != degree:
        raise PolyParseError(f"expected degree {degree}, found {d}", text, 0)
    cs = [mpq(0)] * (d + 1)
    for (i, _), c in terms.items():
        cs[i] = c
    return HPoly(d, cs)


def parse_upoly(text: str, var: str = "t") -> UPoly:
    terms = _Parser(text, (var, "\0")).parse()
    if not terms:
        return UPoly()
    d = max(i for i, _ in terms)
    cs = [mpq(0)] * (d + 1)
    for (i, _), c in terms.items():
        cs[i] = c
    return UPoly(cs)
