"""Expression parser for algebra elements.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := '-' unary | power
    power   := atom ('^' ['-'] INT)?
    atom    := NUMBER ['/' NUMBER] | 'q' | x[i,j] | xi[i,j] | Dm | Dn | '(' expr ')'

``x[i,j]`` names an even generator and ``xi[i,j]`` an odd one. ``Dm``/``Dn`` are
the block determinants; negative powers move into the localization.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .presentation import Element, Presentation
from .scalars import as_rational

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z]+)|(?P<op>[-+*/^()\[\],]))")


class ExprError(ValueError):
    """Syntax error or unknown generator; ``pos`` is the 0-based column."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class UnknownGenerator(ExprError):
    pass


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(src: str) -> list:
    out, i = [], 0
    while i < len(src):
        if src[i].isspace():
            i += 1
            continue
        mt = _TOKEN.match(src, i)
        if not mt:
            raise ExprError(f"unexpected character {src[i]!r}", i)
        kind = mt.lastgroup
        out.append(_Tok(kind, mt.group(kind), mt.start(kind)))
        i = mt.end()
    out.append(_Tok("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, pres: Presentation, src: str):
        self.p = pres
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, text: str | None = None, kind: str | None = None) -> _Tok:
        t = self.peek()
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(t.text) if t.kind != "end" else "end of input"
            raise ExprError(f"expected {want}, got {got}", t.pos)
        self.i += 1
        return t

    def parse(self):
        val = self.expr()
        if self.peek().kind != "end":
            t = self.peek()
            raise ExprError(f"unexpected {t.text!r}", t.pos)
        return val

    def expr(self):
        val = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek().text == "*":
            self.take()
            val = _mul(val, self.unary())
        return val

    def unary(self):
        if self.peek().text == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().text != "^":
            return base
        self.take()
        neg = False
        if self.peek().text == "-":
            self.take()
            neg = True
        tok = self.take(kind="num")
        k = int(tok.text)
        return _power(self.p, base, -k if neg else k, tok.pos)

    def atom(self):
        t = self.peek()
        qm = self.p.qmode
        if t.kind == "num":
            self.take()
            num = as_rational(int(t.text))
            if self.peek().text == "/":
                self.take()
                den = self.take(kind="num")
                if int(den.text) == 0:
                    raise ExprError("division by zero", den.pos)
                num = num / int(den.text)
            return self.p.scalar(qm.coerce(num))
        if t.text == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        if t.kind == "name":
            self.take()
            if t.text == "q":
                return self.p.scalar(qm.qpow(1))
            if t.text in ("Dm", "Dn"):
                which = t.text[1]
                if (self.p.m if which == "m" else self.p.n) == 0:
                    raise UnknownGenerator(f"{t.text} is undefined for this size", t.pos)
                return self.p.loc.det(which)
            if t.text in ("x", "xi"):
                self.take("[")
                i = int(self.take(kind="num").text)
                self.take(",")
                j = int(self.take(kind="num").text)
                self.take("]")
                return self._generator(t, i, j)
            raise UnknownGenerator(f"unknown generator {t.text!r}", t.pos)
        got = repr(t.text) if t.kind != "end" else "end of input"
        raise ExprError(f"unexpected {got}", t.pos)

    def _generator(self, t: _Tok, i: int, j: int):
        p = self.p
        label = f"{t.text}[{i},{j}]"
        if not (1 <= i <= p.N and 1 <= j <= p.N):
            raise UnknownGenerator(f"unknown generator {label} for (m,n)=({p.m},{p.n})", t.pos)
        odd = (p.p(i) + p.p(j)) % 2 == 1
        if odd != (t.text == "xi"):
            right = "xi" if odd else "x"
            raise UnknownGenerator(f"{label} has the wrong parity; use {right}[{i},{j}]", t.pos)
        return p.gen(i, j)


def _mul(a, b):
    return a * b


def _power(p: Presentation, base, k: int, pos: int):
    from .localization import LocElement, NilpotencyError

    if k >= 0:
        out = p.one_element()
        for _ in range(k):
            out = out * base
        return out
    if isinstance(base, Element):
        if set(base.terms) == {()}:
            c = base.terms[()]
            try:
                return p.scalar(c ** k)
            except (ValueError, ZeroDivisionError) as exc:
                raise ExprError(f"scalar is not invertible ({exc})", pos) from exc
        base = p.loc.from_element(base)
    if not isinstance(base, LocElement):
        raise ExprError("negative power of a non-element", pos)
    try:
        return base ** k
    except (NilpotencyError, ArithmeticError, ValueError) as exc:
        raise ExprError(f"element is not invertible in the localization ({exc})", pos) from exc


def parse_expression(pres: Presentation, src: str):
    """Parse into an Element, or a LocElement when inverses are involved."""
    return _Parser(pres, src).parse()
