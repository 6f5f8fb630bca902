"""Quantum matrix superalgebras k_q[M(m|n)] as oriented rewriting systems.

Generators a_ij (1 <= i, j <= m+n) are numbered row-major; a word is a tuple
of generator numbers and a normal word is nondecreasing with no repeated odd
letter. Rewriting a descent ``h g`` (h > g) always produces words whose first
letter is smaller than h, so the length-lexicographic order decreases and
reduction terminates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .scalars import _RATIONAL_TYPES, LaurentScalar, Rational, as_rational, format_scalar, scalar_eval


class BudgetExceeded(RuntimeError):
    """Raised when a computation exceeds its configured step or term budget."""


class PresentationMismatch(ValueError):
    pass


DEFAULT_MAX_STEPS = 5_000_000


class TermBudget:
    """Process-wide term-count high-water mark with an optional ceiling."""

    limit: int | None = None
    high: int = 0

    @classmethod
    def reset(cls, limit: int | None = None):
        cls.limit = limit
        cls.high = 0

    @classmethod
    def note(cls, n: int):
        if n > cls.high:
            cls.high = n
            if cls.limit is not None and n > cls.limit:
                raise BudgetExceeded(f"term count {n} exceeded max_terms={cls.limit}")


@dataclass(frozen=True)
class QMode:
    kind: str  # "symbolic" | "specialized" | "classical"
    value: Rational | None = None

    @classmethod
    def symbolic(cls) -> QMode:
        return cls("symbolic")

    @classmethod
    def specialized(cls, q0) -> QMode:
        q0 = as_rational(q0)
        if q0 == 0:
            raise ValueError("q must be specialized to a unit (q0 != 0)")
        return cls("specialized", q0)

    @classmethod
    def classical(cls) -> QMode:
        return cls("classical", as_rational(1))

    @classmethod
    def parse(cls, text: str) -> QMode:
        text = str(text).strip().lower()
        if text in ("symbolic", "q"):
            return cls.symbolic()
        if text in ("classical", "classical_q1", "1"):
            return cls.classical()
        return cls.specialized(text)

    @property
    def is_symbolic(self) -> bool:
        return self.kind == "symbolic"

    def qpow(self, e: int):
        if self.kind == "symbolic":
            return LaurentScalar.q(e)
        return self.value ** e

    def coerce(self, c):
        """Bring a scalar into this mode's coefficient ring."""
        if self.kind == "symbolic":
            if isinstance(c, LaurentScalar):
                return c
            return LaurentScalar.const(c)
        if isinstance(c, LaurentScalar):
            return scalar_eval(c, self.value)
        return as_rational(c)

    def label(self) -> str:
        if self.kind == "symbolic":
            return "symbolic"
        if self.kind == "classical":
            return "1"
        v = self.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _add_into(acc: dict, key, c):
    s = acc.get(key)
    s = c if s is None else s + c
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


class RewriteSystem:
    """Quadratic rewriting system on numbered letters with a parity per letter.

    Subclasses fill ``parity`` (list of 0/1) and ``_rules`` mapping a descent
    (h, g), h > g, to a list of (coefficient, (a, b)) normal two-letter words.
    Squares of odd letters rewrite to zero.
    """

    def __init__(self, qmode: QMode, max_steps: int = DEFAULT_MAX_STEPS):
        self.qmode = qmode
        self.parity: list[int] = []
        self._rules: dict[tuple[int, int], list] = {}
        self._append_cache: dict = {}
        self._mul_cache: dict = {}
        self.max_steps = max_steps
        self.one = qmode.coerce(1)

    # -- letters -----------------------------------------------------------
    @property
    def n_letters(self) -> int:
        return len(self.parity)

    def letter_name(self, g: int) -> str:
        return f"z{g}"

    def word_parity(self, word) -> int:
        par = self.parity
        return sum(par[g] for g in word) & 1

    def odd_count(self, word) -> int:
        par = self.parity
        return sum(par[g] for g in word)

    def is_normal(self, word) -> bool:
        par = self.parity
        for a, b in zip(word, word[1:]):
            if a > b or (a == b and par[a]):
                return False
        return True

    def rule(self, h: int, g: int) -> list:
        """Right side of the descent h*g as [(coeff, (a, b)), ...]."""
        if h == g:
            if self.parity[h]:
                return []
            raise KeyError("even squares are already normal")
        return self._rules[(h, g)]

    # -- fast normal form: insert letters from the right -------------------
    def append_letter(self, u: tuple, g: int) -> dict:
        """Normal form of u*g for a normal word u."""
        if not u or u[-1] < g:
            return {u + (g,): self.one}
        h = u[-1]
        if h == g:
            if self.parity[g]:
                return {}
            return {u + (g,): self.one}
        key = (u, g)
        hit = self._append_cache.get(key)
        if hit is not None:
            return hit
        rest = u[:-1]
        out: dict = {}
        for c, (a, b) in self._rules[(h, g)]:
            for w1, c1 in self.append_letter(rest, a).items():
                cc = c * c1
                for w2, c2 in self.append_letter(w1, b).items():
                    _add_into(out, w2, cc * c2)
        self._append_cache[key] = out
        return out

    def mul_words(self, u: tuple, v: tuple) -> dict:
        if len(v) == 1:
            return self.append_letter(u, v[0])
        key = (u, v)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        cur = {u: self.one}
        for g in v:
            nxt: dict = {}
            for w, c in cur.items():
                for w2, c2 in self.append_letter(w, g).items():
                    _add_into(nxt, w2, c * c2)
            cur = nxt
            if not cur:
                break
        self._mul_cache[key] = cur
        return cur

    def mul_terms(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for u, cu in a.items():
            for v, cv in b.items():
                c = cu * cv
                for w, cw in self.mul_words(u, v).items():
                    _add_into(out, w, c * cw)
        return out

    def reduce_terms(self, terms: dict) -> dict:
        """Normal form of a combination of free words (fast strategy)."""
        out: dict = {}
        for w, c in terms.items():
            c = self.qmode.coerce(c)
            if not c:
                continue
            for w2, c2 in self.mul_words((), tuple(w)).items():
                _add_into(out, w2, c * c2)
        return out

    # -- reference rewriter with explicit strategy --------------------------
    def rewrite_terms(self, terms: dict, strategy: str = "left", max_steps: int | None = None) -> dict:
        """Normal form by repeatedly rewriting one descent.

        ``strategy`` picks the leftmost or rightmost reducible position (or a
        seeded random one for ``"random"``). Used to test confluence against
        :meth:`reduce_terms`.
        """
        budget = self.max_steps if max_steps is None else max_steps
        rng = random.Random(0)
        par = self.parity
        pending: dict = {}
        for w, c in terms.items():
            c = self.qmode.coerce(c)
            if c:
                _add_into(pending, tuple(w), c)
        done: dict = {}
        steps = 0
        while pending:
            w, c = pending.popitem()
            positions = [i for i in range(len(w) - 1)
                         if w[i] > w[i + 1] or (w[i] == w[i + 1] and par[w[i]])]
            if not positions:
                _add_into(done, w, c)
                continue
            steps += 1
            if steps > budget:
                raise BudgetExceeded(f"rewriting exceeded {budget} steps")
            if strategy == "left":
                i = positions[0]
            elif strategy == "right":
                i = positions[-1]
            else:
                i = rng.choice(positions)
            h, g = w[i], w[i + 1]
            if h == g:
                continue
            for cr, (a, b) in self._rules[(h, g)]:
                _add_into(pending, w[:i] + (a, b) + w[i + 2:], c * cr)
        return done

    def ambiguities(self):
        """All overlap words h g f with h > g > f or equal odd neighbours."""
        par = self.parity
        n = self.n_letters
        for h in range(n):
            for g in range(h + 1):
                if g == h and not par[g]:
                    continue
                for f in range(g + 1):
                    if f == g and not par[f]:
                        continue
                    yield (h, g, f)

    def check_confluence(self) -> list:
        """Resolve every overlap both ways; return the words that disagree."""
        bad = []
        for w in self.ambiguities():
            left = self.rewrite_terms({w: 1}, "left")
            right = self.rewrite_terms({w: 1}, "right")
            if left != right:
                bad.append(w)
        return bad


def p_index(i: int, m: int) -> int:
    """Parity p(i) of a row/column index: 0 iff i <= m."""
    return 0 if i <= m else 1


@dataclass(frozen=True, order=True)
class GeneratorId:
    row: int
    col: int

    def parity(self, m: int) -> int:
        return (p_index(self.row, m) + p_index(self.col, m)) & 1


@dataclass(frozen=True)
class RewriteRule:
    lhs: tuple
    rhs: "Element"

    def __str__(self):
        pres = self.rhs.pres
        return f"{pres.format_word(self.lhs)} -> {self.rhs}"


class Presentation(RewriteSystem):
    """Generator table and Manin-type rewriting rules for k_q[M(m|n)].

    Use :func:`build_presentation` to get a cached instance.
    """

    def __init__(self, m: int, n: int, qmode: QMode, max_steps: int = DEFAULT_MAX_STEPS):
        if m < 0 or n < 0 or m + n < 1:
            raise ValueError("need m, n >= 0 and m + n >= 1")
        super().__init__(qmode, max_steps)
        self.m, self.n = m, n
        self.N = N = m + n
        self.generators = [GeneratorId(i, j) for i in range(1, N + 1) for j in range(1, N + 1)]
        self.parity = [g.parity(m) for g in self.generators]
        self._build_rules()
        self._loc = None

    # -- indices -----------------------------------------------------------
    def letter(self, i: int, j: int) -> int:
        if not (1 <= i <= self.N and 1 <= j <= self.N):
            raise KeyError(f"unknown generator a[{i},{j}] for (m|n)=({self.m}|{self.n})")
        return (i - 1) * self.N + (j - 1)

    def indices(self, g: int) -> tuple[int, int]:
        return divmod(g, self.N)[0] + 1, g % self.N + 1

    def p(self, i: int) -> int:
        return p_index(i, self.m)

    def letter_name(self, g: int) -> str:
        i, j = self.indices(g)
        return f"xi[{i},{j}]" if self.parity[g] else f"x[{i},{j}]"

    def format_word(self, word) -> str:
        return "*".join(self.letter_name(g) for g in word) if word else "1"

    @property
    def odd_generators(self) -> list[int]:
        return [g for g in range(self.n_letters) if self.parity[g]]

    @property
    def key(self):
        return (self.m, self.n, self.qmode)

    def __repr__(self):
        return f"Presentation(m={self.m}, n={self.n}, q={self.qmode.label()})"

    # -- relations ---------------------------------------------------------
    def _build_rules(self):
        qm = self.qmode
        N = self.N
        for h in range(N * N):
            k, l = self.indices(h)
            for g in range(h):
                i, j = self.indices(g)
                self._rules[(h, g)] = self._descent(i, j, k, l, qm)

    def _descent(self, i, j, k, l, qm):
        """Rewrite a_kl a_ij where (i, j) < (k, l) row-major."""
        p = self.p
        g, h = self.letter(i, j), self.letter(k, l)
        pg, ph = self.parity[g], self.parity[h]
        s = -1 if pg & ph else 1
        if i == k:
            # a_ij a_il = s q^e a_il a_ij, e = -1 on even rows, +1 on odd rows
            e = -1 if p(i) == 0 else 1
            return [(s * qm.qpow(-e), (g, h))]
        if j == l:
            e = -1 if p(j) == 0 else 1
            return [(s * qm.qpow(-e), (g, h))]
        if j > l:
            return [(qm.coerce(s), (g, h))]
        # i < k, j < l:  a_ij a_kl - s a_kl a_ij = c a_il a_kj
        c = self.cross_coefficient(i, j, k, l)
        b, cc = self.letter(i, l), self.letter(k, j)
        out = [(qm.coerce(s), (g, h))]
        corr = -s * c
        if corr:
            out.append((corr, (b, cc)))
        return out

    def cross_coefficient(self, i, j, k, l):
        """Coefficient c in a_ij a_kl - (-1)^{..} a_kl a_ij = c a_il a_kj (i<k, j<l).

        Forced by requiring z_r -> sum_s a_rs (x) z_s to preserve the quantum
        superspace relations z_r z_s = (-1)^{p(r)p(s)} q^-1 z_s z_r.
        """
        p = self.p
        par_b = (p(i) + p(l)) & 1
        par_c = (p(k) + p(j)) & 1
        par_d = (p(k) + p(l)) & 1
        s1 = -1 if (p(j) * par_d) & 1 else 1
        e_minus = (p(i) * p(k) + p(j) * par_b + par_b * par_c) & 1
        e_plus = (p(j) * p(l) + p(l) * par_c) & 1
        qm = self.qmode
        return s1 * ((-1) ** e_minus * qm.qpow(-1) - (-1) ** e_plus * qm.qpow(1))

    @property
    def rules(self) -> list[RewriteRule]:
        out = []
        for (h, g), rhs in sorted(self._rules.items()):
            terms = {}
            for c, w in rhs:
                _add_into(terms, w, c)
            out.append(RewriteRule((h, g), Element(self, terms)))
        for g in self.odd_generators:
            out.append(RewriteRule((g, g), Element(self, {})))
        return out

    def relation_residuals(self) -> list[tuple[tuple, dict]]:
        """Each relation as lhs - rhs in the free algebra (word -> coeff)."""
        out = []
        for r in self.rules:
            terms = {r.lhs: self.one}
            for w, c in r.rhs.terms.items():
                _add_into(terms, w, -c)
            out.append((r.lhs, terms))
        return out

    # -- element helpers ---------------------------------------------------
    def gen(self, i: int, j: int) -> Element:
        return Element(self, {(self.letter(i, j),): self.one})

    def one_element(self) -> Element:
        return Element(self, {(): self.one})

    def zero(self) -> Element:
        return Element(self, {})

    def scalar(self, c) -> Element:
        c = self.qmode.coerce(c)
        return Element(self, {(): c} if c else {})

    def element(self, terms: dict) -> Element:
        """Normalize a combination of free words."""
        return Element(self, self.reduce_terms(terms))

    @property
    def loc(self):
        if self._loc is None:
            from .localization import LocAlgebra
            self._loc = LocAlgebra(self)
        return self._loc


@lru_cache(maxsize=None)
def _cached_presentation(m: int, n: int, qmode: QMode) -> Presentation:
    return Presentation(m, n, qmode)


def build_presentation(m: int, n: int, qmode: QMode | str = "symbolic") -> Presentation:
    if isinstance(qmode, str):
        qmode = QMode.parse(qmode)
    if m + n < 1:
        raise ValueError("need m + n >= 1")
    return _cached_presentation(m, n, qmode)


def format_terms(terms: dict, fmt_key) -> str:
    if not terms:
        return "0"
    pieces = []
    for key in sorted(terms, key=_sort_key):
        c = terms[key]
        body = fmt_key(key)
        text = format_scalar(c)
        if body == "1":
            pieces.append(text if " " not in text else f"({text})")
            continue
        if text == "1":
            pieces.append(body)
        elif text == "-1":
            pieces.append("-" + body)
        elif " " in text:
            pieces.append(f"({text})*{body}")
        else:
            pieces.append(f"{text}*{body}")
    out = pieces[0]
    for piece in pieces[1:]:
        out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
    return out


def _sort_key(key):
    if key and isinstance(key[0], tuple):
        return (len(key[0]), key)
    return (len(key), key)


class Element:
    """Linear combination of normal words of a :class:`Presentation`."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres: Presentation, terms: dict):
        self.pres = pres
        self.terms = terms
        TermBudget.note(len(terms))

    def _check(self, other):
        if not isinstance(other, (Element, LaurentScalar) + _RATIONAL_TYPES):
            raise _Defer
        if isinstance(other, Element):
            if other.pres is not self.pres:
                raise PresentationMismatch("elements live over different presentations")
            return other
        return self.pres.scalar(other)

    def __add__(self, other):
        try:
            other = self._check(other)
        except _Defer:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(out, w, c)
        return Element(self.pres, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.pres, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        try:
            return self + (-self._check(other))
        except _Defer:
            return NotImplemented

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, Element):
            return algebra_mul(self.pres, self, other)
        if not isinstance(other, (LaurentScalar,) + _RATIONAL_TYPES):
            return NotImplemented
        c = self.pres.qmode.coerce(other)
        if not c:
            return self.pres.zero()
        return Element(self.pres, {w: v * c for w, v in self.terms.items()})

    def __rmul__(self, other):
        c = self.pres.qmode.coerce(other)
        if not c:
            return self.pres.zero()
        return Element(self.pres, {w: c * v for w, v in self.terms.items()})

    def __pow__(self, k: int):
        out = self.pres.one_element()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.pres is other.pres and self.terms == other.terms
        try:
            return self.terms == self.pres.scalar(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> str:
        return parity_of(self.pres, self)

    def to_json(self) -> list:
        return [{"word": [list(self.pres.indices(g)) for g in w], "coeff": format_scalar(c)}
                for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))]

    def __str__(self):
        return format_terms(self.terms, self.pres.format_word)

    def __repr__(self):
        return f"Element({self})"


class _Defer(Exception):
    """Internal: let the other operand handle a mixed operation."""


def normal_form(pres: Presentation, word, coeff=1, strategy: str = "insert") -> Element:
    """Normal form of coeff * word; ``strategy`` is insert/left/right/random."""
    terms = {tuple(word): coeff}
    if strategy == "insert":
        return Element(pres, pres.reduce_terms(terms))
    return Element(pres, pres.rewrite_terms(terms, strategy))


def algebra_mul(pres: Presentation, a: Element, b: Element) -> Element:
    if a.pres is not pres or b.pres is not pres:
        raise PresentationMismatch("elements live over different presentations")
    return Element(pres, pres.mul_terms(a.terms, b.terms))


def specialize(pres: Presentation, e: Element, q0) -> Element:
    """Evaluate every coefficient at q = q0 (``"classical"`` or 1 gives q=1)."""
    if not isinstance(e, Element):
        if hasattr(e, "specialize"):
            return e.specialize(q0)
        raise TypeError("specialize needs an Element")
    if isinstance(q0, str) and q0.strip().lower().startswith("classical"):
        target_mode = QMode.classical()
    else:
        q0 = as_rational(q0)
        if q0 == 0:
            raise ValueError("q must be specialized to a unit (q0 != 0)")
        target_mode = QMode.classical() if q0 == 1 else QMode.specialized(q0)
    target = build_presentation(pres.m, pres.n, target_mode)
    out = {}
    for w, c in e.terms.items():
        _add_into(out, w, target_mode.coerce(c))
    return Element(target, out)


def parity_of(pres: Presentation, e: Element) -> str:
    pars = {pres.word_parity(w) for w in e.terms}
    if pars == {1}:
        return "odd"
    if len(pars) > 1:
        return "mixed"
    return "even"


def random_word(pres: RewriteSystem, rng: random.Random, max_len: int = 8) -> tuple:
    length = rng.randint(1, max_len)
    return tuple(rng.randrange(pres.n_letters) for _ in range(length))


def rule_count(pres: Presentation) -> int:
    g = pres.n_letters
    return len(list(combinations(range(g), 2))) + len(pres.odd_generators)
