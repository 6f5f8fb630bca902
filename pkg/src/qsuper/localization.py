"""Adjoining the inverses of the two block determinants.

A localized element is stored as a sum of right fractions w * Dm^-a * Dn^-b
(normal word w, Dm-inverses before Dn-inverses). Three exact primitives keep
products in that shape:

* ``D^-1 w = tau(w) D^-1 + D^-1 (w D - D tau(w)) D^-1`` where tau(w) scales w by
  q^(number of odd letters). The correction has at least two more odd letters,
  so the recursion stops once words exceed 2mn odd letters.
* ``Dn^-1 Dm^-1 = sum_i (-T)^i Dm^-1 Dn^-1`` with ``T = Dm^-1 Dn^-1 [Dm, Dn]``;
  the powers of T are nilpotent for the same reason.
* equality: bring every fraction to a common tail and compare numerators in
  the normal-word basis.

Odd-degree truncation (``budget``) is used only inside the reordering of
inverse tails, where a prefix of known odd degree makes higher terms vanish.
"""

from __future__ import annotations

from .determinants import block_det, det_sign, qdet_matrix, qminor, block_view
from .presentation import (
    BudgetExceeded,
    Element,
    Presentation,
    PresentationMismatch,
    QMode,
    TermBudget,
    _add_into,
    build_presentation,
    format_terms,
)
from .scalars import format_scalar


class LocAlgebra:
    """Arithmetic of k_q[GL(m|n)] on top of a :class:`Presentation`."""

    def __init__(self, pres: Presentation):
        self.pres = pres
        self.qmode = pres.qmode
        self.one_c = pres.one
        self.max_odd = len(pres.odd_generators)
        self.has = {"m": pres.m > 0, "n": pres.n > 0}
        self.D = {
            "m": block_det(pres, "11").terms if pres.m else {(): pres.one},
            "n": block_det(pres, "22").terms if pres.n else {(): pres.one},
        }
        self._inv_cache: dict = {}
        self._swap_cache: dict = {}
        self._dpow_cache: dict = {}
        comm = pres.mul_terms(self.D["m"], self.D["n"])
        for w, c in pres.mul_terms(self.D["n"], self.D["m"]).items():
            _add_into(comm, w, -c)
        self.commutator = comm  # Dm Dn - Dn Dm
        self.max_depth = self.max_odd + 2

    # -- primitives --------------------------------------------------------
    def odd(self, w) -> int:
        return self.pres.odd_count(w)

    def dpow(self, which: str, e: int) -> dict:
        key = (which, e)
        hit = self._dpow_cache.get(key)
        if hit is None:
            if e == 0:
                hit = {(): self.one_c}
            else:
                hit = self.pres.mul_terms(self.dpow(which, e - 1), self.D[which])
            self._dpow_cache[key] = hit
        return hit

    def inv_left(self, which: str, w: tuple, depth: int = 0) -> dict:
        """D^-1 * w as {(w', k): c} meaning w' * D^-k."""
        if not self.has[which]:
            return {(w, 0): self.one_c}
        key = (which, w)
        hit = self._inv_cache.get(key)
        if hit is not None:
            return hit
        if depth > self.max_depth:
            raise BudgetExceeded("inverse exchange recursion exceeded 2mn+2 levels")
        pres = self.pres
        tau = self.qmode.qpow(self.odd(w))
        D = self.D[which]
        out = {(w, 1): tau}
        resid = pres.mul_terms({w: self.one_c}, D)
        for u, c in pres.mul_terms(D, {w: tau}).items():
            _add_into(resid, u, -c)
        for u, c in resid.items():
            for (u2, k), c2 in self.inv_left(which, u, depth + 1).items():
                _add_into(out, (u2, k + 1), c * c2)
        self._inv_cache[key] = out
        return out

    def inv_left_pow(self, which: str, k: int, terms: dict) -> dict:
        """D^-k * sum c w as {(w', j): c'}."""
        cur = {(w, 0): c for w, c in terms.items()}
        for _ in range(k):
            nxt: dict = {}
            for (w, j), c in cur.items():
                for (w2, j2), c2 in self.inv_left(which, w).items():
                    _add_into(nxt, (w2, j + j2), c * c2)
            cur = nxt
        return cur

    def _truncate(self, terms: dict, budget: int) -> dict:
        if budget >= self.max_odd:
            return terms
        odd = self.odd
        return {k: c for k, c in terms.items() if odd(k[0]) <= budget}

    def swap(self, l: int, a: int, budget: int | None = None) -> dict:
        """Dn^-l * Dm^-a in right-fraction form, modulo words of odd degree > budget."""
        if budget is None:
            budget = self.max_odd
        budget = min(budget, self.max_odd)
        if budget < 0:
            return {}
        if l == 0 or a == 0 or not (self.has["m"] and self.has["n"]):
            return {((), a if self.has["m"] else 0, l if self.has["n"] else 0): self.one_c}
        key = (l, a, budget)
        hit = self._swap_cache.get(key)
        if hit is not None:
            return hit
        one = self.one_c
        if l == 1 and a == 1:
            T = self._t_element()
            term = {((), 0, 0): one}
            series = dict(term)
            negT = {k: -c for k, c in T.items()}
            for _ in range(self.max_odd + 1):
                term = self._truncate(self.mul_terms(term, negT, budget), budget)
                if not term:
                    break
                for k, c in term.items():
                    _add_into(series, k, c)
            else:
                raise BudgetExceeded("tail reordering series did not terminate")
            out = self.mul_terms(series, {((), 1, 1): one}, budget)
        elif l == 1:
            out = self.mul_terms(self.swap(1, 1, budget), {((), a - 1, 0): one}, budget)
        else:
            out = self.mul_terms({((), 0, 1): one}, self.swap(l - 1, a, budget), budget)
        out = self._truncate(out, budget)
        self._swap_cache[key] = out
        return out

    def _t_element(self) -> dict:
        """T = Dm^-1 Dn^-1 [Dm, Dn], exact and already in right-fraction form."""
        if hasattr(self, "_T"):
            return self._T
        T: dict = {}
        for w, c in self.commutator.items():
            for (w2, l), c2 in self.inv_left("n", w).items():
                for (w3, k), c3 in self.inv_left("m", w2).items():
                    _add_into(T, (w3, k, l), c * c2 * c3)
        self._T = T
        return T

    def mul_terms(self, A: dict, B: dict, budget: int | None = None) -> dict:
        """Product of two right-fraction sums."""
        if budget is None:
            budget = self.max_odd
        pres = self.pres
        odd = self.odd
        out: dict = {}
        for (w1, a1, b1), c1 in A.items():
            o1 = odd(w1)
            if o1 > budget:
                continue
            for (w2, a2, b2), c2 in B.items():
                c12 = c1 * c2
                if b1:
                    s1 = self.inv_left_pow("n", b1, {w2: self.one_c})
                else:
                    s1 = {(w2, 0): self.one_c}
                for (w3, l), c3 in s1.items():
                    bud = budget - o1 - odd(w3)
                    if bud < 0:
                        continue
                    if l and a2:
                        s2 = self.swap(l, a2, bud)
                    else:
                        s2 = {((), a2, l): self.one_c}
                    for (w4, A_, B_), c4 in s2.items():
                        w34 = pres.mul_words(w3, w4)
                        if a1:
                            s3 = self.inv_left_pow("m", a1, w34)
                        else:
                            s3 = {(w, 0): c for w, c in w34.items()}
                        cc = c12 * c3 * c4
                        for (w5, k), c5 in s3.items():
                            for w6, c6 in pres.mul_words(w1, w5).items():
                                _add_into(out, (w6, k + A_, B_ + b2), cc * c5 * c6)
        if budget < self.max_odd:
            out = self._truncate(out, budget)
        return out

    # -- canonical comparison ----------------------------------------------
    def common_tail(self, terms: dict, min_tail=(0, 0)):
        """Rewrite sum w Dm^-a Dn^-b as N * Dm^-A * Dn^-B; returns (N_terms, A, B)."""
        if not terms:
            return {}, min_tail[0], min_tail[1]
        B = max([b for (_, _, b) in terms] + [min_tail[1]])
        staged = []
        A = min_tail[0]
        for (w, a, b), c in terms.items():
            if a:
                pushed = self.inv_left_pow("m", a, self.dpow("n", B - b))
            else:
                pushed = {(u, 0): cu for u, cu in self.dpow("n", B - b).items()}
            staged.append((w, c, pushed))
            for (_, k) in pushed:
                A = max(A, k)
        N: dict = {}
        pres = self.pres
        for w, c, pushed in staged:
            for (u, k), cu in pushed.items():
                tail = self.dpow("m", A - k)
                for v, cv in pres.mul_terms({u: cu}, tail).items():
                    for x, cx in pres.mul_words(w, v).items():
                        _add_into(N, x, c * cv * cx)
        return N, A, B

    def is_zero_terms(self, terms: dict) -> bool:
        if not terms:
            return True
        if len({(a, b) for (_, a, b) in terms}) == 1:
            # distinct normal words over one tail are linearly independent
            return False
        N, _, _ = self.common_tail(terms)
        return not N

    def to_tail(self, terms: dict, A: int, B: int) -> dict:
        N, A2, B2 = self.common_tail(terms, (A, B))
        if (A2, B2) != (A, B):
            raise ValueError(f"tail ({A},{B}) too small, need ({A2},{B2})")
        return N

    # -- element constructors ----------------------------------------------
    def element(self, terms: dict) -> "LocElement":
        return LocElement(self, {k: c for k, c in terms.items() if c})

    def from_element(self, e: Element) -> "LocElement":
        if e.pres is not self.pres:
            raise PresentationMismatch("element from another presentation")
        return LocElement(self, {(w, 0, 0): c for w, c in e.terms.items()})

    def gen(self, i: int, j: int) -> "LocElement":
        return self.from_element(self.pres.gen(i, j))

    def one(self) -> "LocElement":
        return LocElement(self, {((), 0, 0): self.one_c})

    def zero(self) -> "LocElement":
        return LocElement(self, {})

    def scalar(self, c) -> "LocElement":
        c = self.qmode.coerce(c)
        return LocElement(self, {((), 0, 0): c} if c else {})

    def inverse_symbol(self, which: str, power: int = 1) -> "LocElement":
        """Dm^-power or Dn^-power (``which`` is "m"/"n" or "Dm"/"Dn")."""
        which = which[-1]
        if not self.has[which]:
            return self.one()
        key = ((), power, 0) if which == "m" else ((), 0, power)
        return LocElement(self, {key: self.one_c})

    def det(self, which: str) -> "LocElement":
        which = which[-1]
        return LocElement(self, {(w, 0, 0): c for w, c in self.D[which].items()})

    def format_key(self, key) -> str:
        w, a, b = key
        parts = [self.pres.format_word(w)] if w else []
        if a:
            parts.append("Dm^-%d" % a)
        if b:
            parts.append("Dn^-%d" % b)
        return "*".join(parts) if parts else "1"


class LocElement:
    """Element of k_q[GL(m|n)] as a sum of right fractions."""

    __slots__ = ("loc", "terms")

    def __init__(self, loc: LocAlgebra, terms: dict):
        self.loc = loc
        self.terms = terms
        TermBudget.note(len(terms))

    @property
    def pres(self) -> Presentation:
        return self.loc.pres

    def _coerce(self, other) -> LocElement:
        if isinstance(other, LocElement):
            if other.loc is not self.loc:
                raise PresentationMismatch("elements live over different presentations")
            return other
        if isinstance(other, Element):
            return self.loc.from_element(other)
        return self.loc.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return LocElement(self.loc, out)

    __radd__ = __add__

    def __neg__(self):
        return LocElement(self.loc, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (LocElement, Element)):
            return loc_mul(self.pres, self, self._coerce(other))
        c = self.loc.qmode.coerce(other)
        if not c:
            return self.loc.zero()
        return LocElement(self.loc, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, Element):
            return loc_mul(self.pres, self._coerce(other), self)
        c = self.loc.qmode.coerce(other)
        if not c:
            return self.loc.zero()
        return LocElement(self.loc, {k: c * v for k, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            return loc_inverse(self) ** (-k)
        out = self.loc.one()
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return self.loc.is_zero_terms(self.terms)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def odd_degree_parts(self):
        odd = self.loc.odd
        even0 = {k: c for k, c in self.terms.items() if odd(k[0]) == 0}
        rest = {k: c for k, c in self.terms.items() if odd(k[0]) != 0}
        return LocElement(self.loc, even0), LocElement(self.loc, rest)

    def parity(self) -> str:
        pars = {self.pres.word_parity(k[0]) for k in self.terms}
        if pars == {1}:
            return "odd"
        if len(pars) > 1:
            return "mixed"
        return "even"

    def numerator_form(self):
        """(numerator Element, dm_pow, dn_pow) with value N * Dm^-dm_pow * Dn^-dn_pow."""
        N, A, B = self.loc.common_tail(self.terms)
        return Element(self.pres, N), A, B

    def specialize(self, q0) -> LocElement:
        from .presentation import specialize as _spec

        target = _spec(self.pres, self.pres.zero(), q0).pres
        out: dict = {}
        for k, c in self.terms.items():
            _add_into(out, k, target.qmode.coerce(c))
        return LocElement(target.loc, out)

    def to_json(self) -> list:
        pres = self.pres
        return [{"word": [list(pres.indices(g)) for g in w], "dm_pow": a, "dn_pow": b,
                 "coeff": format_scalar(c)}
                for (w, a, b), c in sorted(self.terms.items(), key=lambda t: (len(t[0][0]), t[0]))]

    def __str__(self):
        return format_terms(self.terms, self.loc.format_key)

    def __repr__(self):
        return f"LocElement({self})"


# -- operations ------------------------------------------------------------

def as_loc(pres: Presentation, x) -> LocElement:
    if isinstance(x, LocElement):
        return x
    if isinstance(x, Element):
        return pres.loc.from_element(x)
    return pres.loc.scalar(x)


def push_inverse_right(pres: Presentation, which: str, e) -> LocElement:
    """(which)^-1 * e in right-fraction form; ``which`` is "Dm" or "Dn"."""
    loc = pres.loc
    return loc_mul(pres, loc.inverse_symbol(which), as_loc(pres, e))


def loc_mul(pres: Presentation, a: LocElement, b: LocElement) -> LocElement:
    if a.loc is not pres.loc or b.loc is not pres.loc:
        raise PresentationMismatch("elements live over different presentations")
    return LocElement(pres.loc, pres.loc.mul_terms(a.terms, b.terms))


def loc_is_zero(pres: Presentation, a: LocElement) -> bool:
    return pres.loc.is_zero_terms(a.terms)


def counit_loc(e) -> object:
    """Counit: a_ij -> delta_ij and both inverse determinants -> 1."""
    pres = e.pres
    total = pres.qmode.coerce(0)
    terms = e.terms
    for key, c in terms.items():
        w = key[0] if isinstance(e, LocElement) else key
        val = True
        for g in w:
            i, j = pres.indices(g)
            if i != j:
                val = False
                break
        if val:
            total = total + c
    return total


def loc_inverse(e: LocElement) -> LocElement:
    """Inverse of an element whose odd-free part is c * Dm^s * Dn^t.

    Writes e = U (1 + U^-1 N) with N in the odd ideal and sums the finite
    geometric series.
    """
    loc = e.loc
    body, _ = e.odd_degree_parts()
    c = counit_loc(body)
    if not c:
        raise ValueError("element has zero counit body; not invertible by this method")
    unit = None
    for s in range(-3, 4):
        for t in range(-3, 4):
            cand = _dpow_loc(loc, "m", s) * _dpow_loc(loc, "n", t) * c
            if (body - cand).is_zero():
                unit, st = cand, (s, t)
                break
        if unit is not None:
            break
    if unit is None:
        raise ValueError("body of element is not a scalar times a product of block determinants")
    s, t = st
    unit_inv = _dpow_loc(loc, "n", -t) * _dpow_loc(loc, "m", -s) * (loc.qmode.coerce(1) / c)
    nil = unit_inv * (e - unit)
    N_num, _, _ = loc.common_tail(nil.terms)
    if any(loc.odd(w) == 0 for w in N_num):
        raise ValueError("remainder is not nilpotent")
    term = loc.one()
    series = loc.one()
    for _ in range(loc.max_odd + 1):
        term = term * (-nil)
        if term.is_zero():
            break
        series = series + term
    else:
        raise BudgetExceeded("inverse series did not terminate")
    return series * unit_inv


def _dpow_loc(loc: LocAlgebra, which: str, e: int) -> LocElement:
    if e >= 0:
        return LocElement(loc, {(w, 0, 0): c for w, c in loc.dpow(which, e).items()})
    return loc.inverse_symbol(which, -e)


# -- matrices --------------------------------------------------------------

class LocMatrix:
    """Rectangular matrix of :class:`LocElement` entries."""

    def __init__(self, loc: LocAlgebra, rows):
        self.loc = loc
        self.rows = [[as_loc(loc.pres, x) for x in row] for row in rows]

    @property
    def shape(self):
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @classmethod
    def identity(cls, loc: LocAlgebra, r: int) -> LocMatrix:
        return cls(loc, [[loc.one() if i == j else loc.zero() for j in range(r)] for i in range(r)])

    @classmethod
    def block(cls, pres: Presentation, rows, cols) -> LocMatrix:
        loc = pres.loc
        return cls(loc, [[loc.gen(i, j) for j in cols] for i in rows])

    def __add__(self, other):
        return LocMatrix(self.loc, [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return LocMatrix(self.loc, [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return LocMatrix(self.loc, [[-a for a in r] for r in self.rows])

    def __matmul__(self, other):
        r, k = self.shape
        k2, c = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        out = []
        for i in range(r):
            row = []
            for j in range(c):
                acc = self.loc.zero()
                for t in range(k):
                    acc = acc + self.rows[i][t] * other.rows[t][j]
                row.append(acc)
            out.append(row)
        return LocMatrix(self.loc, out)

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def equals(self, other) -> bool:
        return (self - other).is_zero()

    def is_identity(self) -> bool:
        r, c = self.shape
        return r == c and self.equals(LocMatrix.identity(self.loc, r))

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)


class NilpotencyError(ArithmeticError):
    pass


class InverseCheckFailure(AssertionError):
    pass


def neumann_inverse(pres: Presentation, N: LocMatrix) -> LocMatrix:
    """Inverse of I - N as I + N + ... + N^(mn+1); checks both products equal I."""
    loc = pres.loc
    r, c = N.shape
    if r != c:
        raise ValueError("square matrix required")
    identity = LocMatrix.identity(loc, r)
    result = identity
    power = identity
    bound = pres.m * pres.n + 1
    for _ in range(bound):
        power = power @ N
        if power.is_zero():
            break
        result = result + power
    if not (power @ N).is_zero() and not power.is_zero():
        raise NilpotencyError(f"N^{bound + 1} != 0; series does not terminate within mn+1 powers")
    base = identity - N
    if not (base @ result).is_identity() or not (result @ base).is_identity():
        raise InverseCheckFailure("Neumann series is not a two-sided inverse")
    return result


def block_antipode_matrix(pres: Presentation, block: str) -> LocMatrix:
    """Two-sided inverse of X11 (or X22) from q-cofactors times the inverse determinant.

    Block 11: S(x_ij) = (-q)^(j-i) minor(j^, i^) Dm^-1; block 22 mirrors q -> q^-1.
    The result is checked against both unit equations.
    """
    loc = pres.loc
    view = block_view(pres, block)
    idx = view.rows
    which = "m" if block == "11" else "n"
    dinv = loc.inverse_symbol(which)
    qm = pres.qmode
    rows = []
    for i in idx:
        row = []
        for j in idx:
            d = j - i
            sign = -1 if d % 2 else 1
            coeff = sign * qm.qpow(d if block == "11" else -d)
            minor = loc.from_element(qminor(pres, block, j, i))
            row.append(minor * dinv * coeff)
        rows.append(row)
    S = LocMatrix(loc, rows)
    X = LocMatrix.block(pres, idx, idx)
    if not (S @ X).is_identity() or not (X @ S).is_identity():
        raise InverseCheckFailure(f"block {block} cofactor matrix is not a two-sided inverse")
    return S


def _blocks(pres: Presentation):
    m, N = pres.m, pres.N
    r1 = list(range(1, m + 1))
    r2 = list(range(m + 1, N + 1))
    return (LocMatrix.block(pres, r1, r1), LocMatrix.block(pres, r1, r2),
            LocMatrix.block(pres, r2, r1), LocMatrix.block(pres, r2, r2))


def _presentation_for_mode(pres: Presentation, mode: str) -> Presentation:
    if mode == "classical":
        return build_presentation(pres.m, pres.n, QMode.classical())
    if mode == "quantum":
        return pres
    raise ValueError(f"unknown mode {mode!r}")


class AntipodeBlocks:
    """The block data entering the antipode and the Berezinian."""

    def __init__(self, pres: Presentation):
        self.pres = pres
        loc = pres.loc
        self.X11, self.Xi12, self.Xi21, self.X22 = _blocks(pres)
        self.S11 = block_antipode_matrix(pres, "11")
        self.S22 = block_antipode_matrix(pres, "22")
        # B = X11 - Xi12 S22 Xi21,  C = X22 - Xi21 S11 Xi12
        self.B = self.X11 - self.Xi12 @ self.S22 @ self.Xi21
        self.C = self.X22 - self.Xi21 @ self.S11 @ self.Xi12
        # B = X11 (I - S11 Xi12 S22 Xi21) and C = X22 (I - S22 Xi21 S11 Xi12)
        self.B_inv = neumann_inverse(pres, self.S11 @ self.Xi12 @ self.S22 @ self.Xi21) @ self.S11
        self.C_inv = neumann_inverse(pres, self.S22 @ self.Xi21 @ self.S11 @ self.Xi12) @ self.S22
        for M, Minv in ((self.B, self.B_inv), (self.C, self.C_inv)):
            if not (M @ Minv).is_identity() or not (Minv @ M).is_identity():
                raise InverseCheckFailure("Schur complement inverse failed")
        self.loc = loc


_BLOCK_CACHE: dict = {}


def antipode_blocks(pres: Presentation) -> AntipodeBlocks:
    hit = _BLOCK_CACHE.get(pres.key)
    if hit is None:
        hit = AntipodeBlocks(pres)
        _BLOCK_CACHE[pres.key] = hit
    return hit


def qdet_loc(pres: Presentation, M: LocMatrix, block: str) -> LocElement:
    return qdet_matrix(M.rows, block, pres.qmode, pres.loc.one())


def berezinian(pres: Presentation, mode: str = "quantum") -> LocElement:
    """det_q(S22(X22)) * det_q(X11 - Xi12 S22(X22) Xi21); classical mode uses q = 1."""
    pres = _presentation_for_mode(pres, mode)
    blocks = antipode_blocks(pres)
    ok, witness = check_quantum_matrix(pres, blocks.B, "q")
    if not ok:
        raise InverseCheckFailure(f"X11 - Xi12 S22 Xi21 is not a quantum matrix: {witness}")
    # S22(X22) satisfies the block-11 relations, so its determinant uses that weight
    det_s22 = qdet_loc(pres, blocks.S22, "11")
    return det_s22 * qdet_loc(pres, blocks.B, "11")


def berezinian_inverse(pres: Presentation, mode: str = "quantum") -> LocElement:
    """Ber^-1 = det_q(B)^-1 * Dn with det_q(B) = Dm (1 - N) inverted by a Neumann series."""
    pres = _presentation_for_mode(pres, mode)
    loc = pres.loc
    blocks = antipode_blocks(pres)
    det_b = qdet_loc(pres, blocks.B, "11")
    dm_inv = loc.inverse_symbol("m")
    nil = -(dm_inv * (det_b - loc.det("m")))
    inv_factor = neumann_inverse(pres, LocMatrix(loc, [[nil]]))[0, 0]
    det_b_inv = inv_factor * dm_inv
    return det_b_inv * loc.det("n")


def berezinian_inverse_check(pres: Presentation, mode: str = "quantum") -> bool:
    p2 = _presentation_for_mode(pres, mode)
    ber = berezinian(p2, "quantum")
    inv = berezinian_inverse(p2, "quantum")
    return (ber * inv - 1).is_zero() and (inv * ber - 1).is_zero()


def check_quantum_matrix(pres: Presentation, M: LocMatrix, convention: str = "q"):
    """Check the one-block Manin relations among the entries of M.

    ``"q"`` is the block-11 convention (M_ij M_il = q^-1 M_il M_ij for j < l),
    ``"q_inverse"`` the block-22 one. Returns (ok, witness pair or None).
    """
    qm = pres.qmode
    e = -1 if convention == "q" else 1
    r, c = M.shape
    if r != c:
        raise ValueError("square matrix required")
    for i in range(r):
        for j in range(c):
            for k in range(r):
                for l in range(c):
                    if (k, l) <= (i, j):
                        continue
                    a, d = M[i, j], M[k, l]
                    if i == k:
                        resid = a * d - d * a * qm.qpow(e)
                    elif j == l:
                        resid = a * d - d * a * qm.qpow(e)
                    elif j > l:
                        resid = a * d - d * a
                    else:
                        resid = a * d - d * a - M[i, l] * M[k, j] * (qm.qpow(e) - qm.qpow(-e))
                    if not resid.is_zero():
                        return False, ((i + 1, j + 1), (k + 1, l + 1))
    return True, None


def scalar_mul(x, c):
    return x * c
