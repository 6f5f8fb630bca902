"""Exact coefficients: rationals and Laurent polynomials in the deformation parameter q."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC

from gmpy2 import mpq

# gmpy2 rationals: exact, and far faster than fractions.Fraction in hot loops
Rational = mpq
_RATIONAL_TYPES = (int, Fraction, type(mpq(1)))


def as_rational(value) -> mpq:
    if isinstance(value, type(mpq(1))):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, _RationalABC)):
        return mpq(value)
    if isinstance(value, str):
        text = value.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
            raise ValueError(f"not a rational: {value!r}")
        return mpq(text)
    raise TypeError(f"cannot convert {value!r} to a rational")


def _tidy(c):
    """Integral rationals are kept as int, which is much faster to multiply."""
    if not isinstance(c, int) and c.denominator == 1:
        return int(c.numerator)
    return c


class LaurentScalar:
    """A Laurent polynomial sum c_e q^e with rational coefficients.

    Instances are immutable and hashable. The canonical form stores no zero
    coefficients, so the zero scalar has an empty term map.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = _tidy(as_rational(c))
                if c:
                    clean[int(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> LaurentScalar:
        return cls({0: c})

    @classmethod
    def q(cls, power: int = 1) -> LaurentScalar:
        return cls._raw({power: 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def constant(self) -> mpq:
        return mpq(self._terms.get(0, 0))

    def degrees(self) -> tuple[int, int]:
        if not self._terms:
            return (0, 0)
        return min(self._terms), max(self._terms)

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentScalar):
            return other
        if isinstance(other, int):
            return LaurentScalar._raw({0: other} if other else {})
        if isinstance(other, _RATIONAL_TYPES):
            other = as_rational(other)
            return LaurentScalar._raw({0: _tidy(other)} if other else {})
        return NotImplemented

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self):
        return LaurentScalar._raw({e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentScalar._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentScalar._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials c*q^e are units of the Laurent ring")
            (e, c), = self._terms.items()
            return LaurentScalar._raw({e * k: _tidy(mpq(c) ** k)})
        result = LaurentScalar._raw({0: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other ** -1

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self ** -1

    def evaluate(self, q0) -> mpq:
        return scalar_eval(self, q0)

    def __repr__(self):
        return f"LaurentScalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


Scalar = "LaurentScalar | mpq | int"


def scalar_arith(a, b, kind: str):
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown scalar operation {kind!r}")


def scalar_eval(a, q0) -> mpq:
    """Substitute q := q0 (a nonzero rational)."""
    q0 = as_rational(q0)
    if q0 == 0:
        raise ValueError("q must be specialized to a unit (q0 != 0)")
    if not isinstance(a, LaurentScalar):
        return as_rational(a)
    total = mpq(0)
    for e, c in a._terms.items():
        total += c * q0 ** e
    return total


def _format_coeff(c) -> str:
    c = mpq(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_scalar(a) -> str:
    """Text form such as ``3*q^-2 - 1/2``; highest power of q first."""
    if not isinstance(a, LaurentScalar):
        a = LaurentScalar._coerce(as_rational(a))
    if not a._terms:
        return "0"
    parts = []
    for e in sorted(a._terms, reverse=True):
        c = a._terms[e]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = _format_coeff(mag)
        else:
            qpart = "q" if e == 1 else f"q^{e}"
            body = qpart if mag == 1 else f"{_format_coeff(mag)}*{qpart}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+(?:/\d+)?)\s*(?:\*\s*(?P<q1>q)(?:\s*\^\s*(?P<e1>-?\d+))?)?
        | (?P<q2>q)(?:\s*\^\s*(?P<e2>-?\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_scalar(text: str) -> LaurentScalar:
    """Parse the Laurent text syntax, e.g. ``3*q^-2 - 1/2`` or ``q - q^-1``."""
    pos = 0
    terms: dict = {}
    text = text.strip()
    if not text:
        raise ValueError("empty scalar")
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise ValueError(f"bad scalar syntax at position {pos}: {text!r}")
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            c = mpq(m.group("coef"))
            e = 0
            if m.group("q1"):
                e = int(m.group("e1")) if m.group("e1") else 1
        elif m.group("q2"):
            c = 1
            e = int(m.group("e2")) if m.group("e2") else 1
        else:
            raise ValueError(f"bad scalar syntax at position {pos}: {text!r}")
        terms[e] = terms.get(e, 0) + sign * c
        pos = m.end()
    return LaurentScalar(terms)
