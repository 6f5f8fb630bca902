"""Points of GL(m|n) with values in a Grassmann algebra (the q = 1 functor of points)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations

from .presentation import Presentation, QMode, build_presentation
from .scalars import Rational, as_rational


class GrassmannAlgebra:
    """Exterior algebra on theta_1..theta_N over the rationals; basis = subsets as bitmasks."""

    def __init__(self, N: int):
        if N < 0:
            raise ValueError("N must be >= 0")
        self.N = N
        size = 1 << N
        self._sign = [[0] * size for _ in range(size)]
        for a in range(size):
            for b in range(size):
                if a & b:
                    continue
                # inversions when concatenating the sorted index lists of a and b
                inv = 0
                for j in range(N):
                    if b >> j & 1:
                        inv += bin(a >> (j + 1)).count("1")
                self._sign[a][b] = -1 if inv & 1 else 1

    def element(self, terms=None) -> Grassmann:
        clean = {}
        for k, c in (terms or {}).items():
            c = as_rational(c)
            if c:
                clean[k] = c
        return Grassmann(self, clean)

    def scalar(self, c) -> Grassmann:
        return self.element({0: c})

    def one(self) -> Grassmann:
        return self.scalar(1)

    def zero(self) -> Grassmann:
        return Grassmann(self, {})

    def theta(self, i: int) -> Grassmann:
        if not 1 <= i <= self.N:
            raise ValueError(f"theta index {i} out of range 1..{self.N}")
        return Grassmann(self, {1 << (i - 1): as_rational(1)})

    def masks(self, parity: int):
        return [k for k in range(1 << self.N) if bin(k).count("1") % 2 == parity]


class Grassmann:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: GrassmannAlgebra, terms: dict):
        self.alg = alg
        self.terms = terms

    def _coerce(self, other) -> Grassmann:
        if isinstance(other, Grassmann):
            if other.alg.N != self.alg.N:
                raise ValueError("Grassmann algebras of different sizes")
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Grassmann(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return Grassmann(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        sign = self.alg._sign
        out: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                if a & b:
                    continue
                k = a | b
                s = out.get(k, 0) + sign[a][b] * ca * cb
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return Grassmann(self.alg, out)

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    @property
    def body(self) -> Rational:
        return self.terms.get(0, as_rational(0))

    def parity(self) -> str:
        pars = {bin(k).count("1") % 2 for k in self.terms}
        if not pars or pars == {0}:
            return "even"
        if pars == {1}:
            return "odd"
        return "mixed"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda k: (bin(k).count("1"), k)):
            c = self.terms[k]
            idx = [str(i + 1) for i in range(self.alg.N) if k >> i & 1]
            mono = "*".join(f"t{i}" for i in idx)
            parts.append(f"{c}" if not mono else f"{c}*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


def grassmann_arith(a: Grassmann, b: Grassmann, kind: str) -> Grassmann:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown operation {kind!r}")


def even_inverse(a: Grassmann) -> Grassmann:
    """body^-1 * sum_i (-nil/body)^i for an even element with nonzero body."""
    if a.parity() != "even":
        raise ValueError("even_inverse needs an even element")
    b0 = a.body
    if not b0:
        raise ZeroDivisionError("zero body: element is not invertible")
    inv_b0 = 1 / b0
    step = (a - b0) * (-inv_b0)
    out = a.alg.one()
    power = a.alg.one()
    for _ in range(a.alg.N // 2 + 1):
        power = power * step
        if not power:
            break
        out = out + power
    out = out * inv_b0
    if a * out != 1 or out * a != 1:
        raise ArithmeticError("Neumann inverse failed")
    return out


# -- supermatrices ---------------------------------------------------------------

def _det_even(rows) -> Grassmann:
    """Leibniz determinant of a square matrix with even (hence commuting) entries."""
    r = len(rows)
    alg = rows[0][0].alg if r else None
    if r == 0:
        raise ValueError("empty matrix")
    total = alg.zero()
    for perm in permutations(range(r)):
        inv = sum(1 for i in range(r) for j in range(i + 1, r) if perm[i] > perm[j])
        term = alg.scalar(-1 if inv % 2 else 1)
        for i in range(r):
            term = term * rows[i][perm[i]]
        total = total + term
    return total


def _inverse_even(rows):
    """Adjugate over the determinant for an even square matrix."""
    r = len(rows)
    det_inv = even_inverse(_det_even(rows))
    if r == 1:
        return [[det_inv]]
    out = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(r):
            minor = [[rows[a][b] for b in range(r) if b != i] for a in range(r) if a != j]
            sign = -1 if (i + j) % 2 else 1
            out[i][j] = _det_even(minor) * det_inv * sign
    return out


def _matmul(A, B):
    alg = (A[0][0] if A and A[0] else B[0][0]).alg
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), alg.zero()) for j in range(len(B[0]))]
            for i in range(len(A))]


class SuperMatrix:
    """(m+n) x (m+n) matrix over a Grassmann algebra, split as [[G11, Gam12], [Gam21, G22]]."""

    def __init__(self, m: int, n: int, entries):
        self.m, self.n = m, n
        self.entries = [list(r) for r in entries]
        if len(self.entries) != m + n or any(len(r) != m + n for r in self.entries):
            raise ValueError("entries must be (m+n) x (m+n)")
        self.alg = self.entries[0][0].alg

    @classmethod
    def identity(cls, m: int, n: int, alg: GrassmannAlgebra) -> SuperMatrix:
        N = m + n
        return cls(m, n, [[alg.one() if i == j else alg.zero() for j in range(N)] for i in range(N)])

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def block(self, name: str):
        m, N = self.m, self.m + self.n
        r = range(0, m) if name[0] == "1" else range(m, N)
        c = range(0, m) if name[1] == "1" else range(m, N)
        return [[self.entries[i][j] for j in c] for i in r]

    def is_parity_correct(self) -> bool:
        m = self.m
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                want = "even" if (i < m) == (j < m) else "odd"
                if x and x.parity() != want:
                    return False
        return True

    def is_invertible(self) -> bool:
        for name in ("11", "22"):
            b = self.block(name)
            if b and not _det_even(b).body:
                return False
        return True

    def __matmul__(self, other: SuperMatrix) -> SuperMatrix:
        return supermatrix_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return all(a == b for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2))

    __hash__ = None

    def reduced(self):
        """Bodies of the diagonal blocks; the odd blocks must reduce to zero."""
        for name in ("12", "21"):
            for row in self.block(name):
                if any(x.body for x in row):
                    raise ValueError("odd block has a nonzero body")
        return ([[x.body for x in r] for r in self.block("11")],
                [[x.body for x in r] for r in self.block("22")])

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries)


def supermatrix_mul(M1: SuperMatrix, M2: SuperMatrix) -> SuperMatrix:
    if (M1.m, M1.n) != (M2.m, M2.n) or M1.alg.N != M2.alg.N:
        raise ValueError("size mismatch")
    return SuperMatrix(M1.m, M1.n, _matmul(M1.entries, M2.entries))


def berezinian_point(M: SuperMatrix) -> Grassmann:
    """det(G22)^-1 * det(G11 - Gam12 G22^-1 Gam21)."""
    alg = M.alg
    G11, G12, G21, G22 = M.block("11"), M.block("12"), M.block("21"), M.block("22")
    if not M.m:
        return even_inverse(_det_even(G22))
    if not M.n:
        return _det_even(G11)
    inner = _matmul(_matmul(G12, _inverse_even(G22)), G21)
    B = [[G11[i][j] - inner[i][j] for j in range(M.m)] for i in range(M.m)]
    return even_inverse(_det_even(G22)) * _det_even(B)


def random_point(m: int, n: int, alg: GrassmannAlgebra, rng: random.Random) -> SuperMatrix:
    """Parity-correct point: small nonzero rational bodies, soul coefficients in {-1, 0, 1}."""
    N = m + n
    even_masks = [k for k in alg.masks(0) if k]
    odd_masks = alg.masks(1)
    while True:
        rows = []
        for i in range(N):
            row = []
            for j in range(N):
                if (i < m) == (j < m):
                    num = rng.choice([-3, -2, -1, 1, 2, 3])
                    den = rng.choice([1, 2, 3])
                    terms = {0: as_rational(num) / den}
                    for k in even_masks:
                        terms[k] = rng.choice([-1, 0, 1])
                else:
                    terms = {k: rng.choice([-1, 0, 1]) for k in odd_masks}
                row.append(alg.element(terms))
            rows.append(row)
        M = SuperMatrix(m, n, rows)
        if M.is_invertible():
            return M


def sl_point(M: SuperMatrix) -> SuperMatrix:
    """Rescale the first row (or last, if m = 0) so that the Berezinian becomes 1."""
    ber_inv = even_inverse(berezinian_point(M))
    rows = [list(r) for r in M.entries]
    if M.m:
        rows[0] = [x * ber_inv for x in rows[0]]
    else:
        rows[-1] = [x * berezinian_point(M) for x in rows[-1]]
    out = SuperMatrix(M.m, M.n, rows)
    if berezinian_point(out) != 1:
        raise ArithmeticError("rescaling did not reach Berezinian 1")
    return out


# -- points as algebra morphisms ---------------------------------------------------

class PointEvaluation:
    """The superalgebra morphism k[GL(m|n)] -> A attached to a point M."""

    def __init__(self, p: Presentation, M: SuperMatrix):
        self.p = p
        self.M = M
        self.dm_inv = even_inverse(_det_even(M.block("11"))) if p.m else M.alg.one()
        self.dn_inv = even_inverse(_det_even(M.block("22"))) if p.n else M.alg.one()

    def letter(self, g: int) -> Grassmann:
        i, j = self.p.indices(g)
        return self.M[i - 1, j - 1]

    def word(self, w) -> Grassmann:
        out = self.M.alg.one()
        for g in w:
            out = out * self.letter(g)
        return out

    def key(self, key) -> Grassmann:
        w, a, b = key
        out = self.word(w)
        for _ in range(a):
            out = out * self.dm_inv
        for _ in range(b):
            out = out * self.dn_inv
        return out

    def __call__(self, e) -> Grassmann:
        alg = self.M.alg
        out = alg.zero()
        for k, c in e.terms.items():
            if isinstance(k, tuple) and len(k) == 3 and isinstance(k[0], tuple):
                val = self.key(k)
            else:
                val = self.word(k)
            out = out + val * as_rational(c)
        return out


def _classical(p: Presentation) -> Presentation:
    if p.qmode.kind != "classical":
        return build_presentation(p.m, p.n, QMode.classical())
    return p


def matrix_to_hom_check(p: Presentation, M: SuperMatrix) -> bool:
    """True iff x_ij -> M_ij extends to a superalgebra morphism k[GL(m|n)] -> A."""
    p = _classical(p)
    if (p.m, p.n) != (M.m, M.n):
        raise ValueError("size mismatch")
    if not M.is_parity_correct() or not M.is_invertible():
        return False
    ev = PointEvaluation(p, M)
    for (h, g), rhs in p._rules.items():
        val = ev.letter(h) * ev.letter(g)
        for c, (a, b) in rhs:
            val = val - ev.letter(a) * ev.letter(b) * as_rational(c)
        if val:
            return False
    for g in p.odd_generators:
        if ev.letter(g) * ev.letter(g):
            return False
    return True


def hom_product_check(p: Presentation, M1: SuperMatrix, M2: SuperMatrix) -> bool:
    """(h_M1 (x) h_M2) o Delta equals h_{M1 M2} on generators and on Dm^-1, Dn^-1."""
    from .hopf import hopf_maps

    p = _classical(p)
    hm = hopf_maps(p)
    ev1, ev2 = PointEvaluation(p, M1), PointEvaluation(p, M2)
    prod = M1 @ M2
    ev12 = PointEvaluation(p, prod)
    alg = M1.alg

    def on_tensor(t):
        out = alg.zero()
        for (k1, k2), c in t.terms.items():
            out = out + ev1.key(k1) * ev2.key(k2) * as_rational(c)
        return out

    N = p.N
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if on_tensor(hm.delta_generator(i, j)) != prod[i - 1, j - 1]:
                return False
    if p.m and on_tensor(hm.delta_inverse("m")) != ev12.dm_inv:
        return False
    if p.n and on_tensor(hm.delta_inverse("n")) != ev12.dn_inv:
        return False
    if berezinian_point(M1) == 1 and berezinian_point(M2) == 1 and berezinian_point(prod) != 1:
        return False
    return True


def antipode_inverse_point(p: Presentation, M: SuperMatrix) -> SuperMatrix:
    """M^-1 obtained by evaluating the antipode S(a_ij) at the point M."""
    from .hopf import hopf_maps

    p = _classical(p)
    hm = hopf_maps(p)
    ev = PointEvaluation(p, M)
    N = p.N
    return SuperMatrix(M.m, M.n, [[ev(hm.antipode_generator(i, j)) for j in range(1, N + 1)]
                                  for i in range(1, N + 1)])


@dataclass
class PointsReport:
    size: tuple
    grassmann: int
    trials: int
    seed: int
    counts: dict = field(default_factory=dict)

    def record(self, name: str, ok: bool):
        passed, total = self.counts.get(name, (0, 0))
        self.counts[name] = (passed + bool(ok), total + 1)

    @property
    def passed(self) -> bool:
        return all(p == t for p, t in self.counts.values())

    def to_json(self) -> list:
        return [{"property": k, "size": list(self.size), "grassmann": self.grassmann,
                 "passed": p, "total": t, "rate": p / t if t else 1.0, "pass": p == t}
                for k, (p, t) in sorted(self.counts.items())]


def run_point_properties(m: int, n: int, grassmann: int = 4, trials: int = 100,
                         triples: int = 50, seed: int = 0) -> PointsReport:
    """Random-point property run: hom product, Berezinian, SL closure and group axioms."""
    p = build_presentation(m, n, QMode.classical())
    alg = GrassmannAlgebra(grassmann)
    rng = random.Random(seed)
    rep = PointsReport((m, n), grassmann, trials, seed)
    ident = SuperMatrix.identity(m, n, alg)
    for _ in range(trials):
        M1, M2 = random_point(m, n, alg, rng), random_point(m, n, alg, rng)
        prod = M1 @ M2
        rep.record("morphism", matrix_to_hom_check(p, M1) and matrix_to_hom_check(p, prod))
        rep.record("hom_product", hom_product_check(p, M1, M2))
        rep.record("berezinian_multiplicative",
                   berezinian_point(prod) == berezinian_point(M1) * berezinian_point(M2))
        S1, S2 = sl_point(M1), sl_point(M2)
        rep.record("sl_closure", berezinian_point(S1 @ S2) == 1 and hom_product_check(p, S1, S2))
        rep.record("product_parity", prod.is_parity_correct())
    for _ in range(triples):
        A, B, C = (random_point(m, n, alg, rng) for _ in range(3))
        rep.record("associativity", (A @ B) @ C == A @ (B @ C))
        rep.record("identity", A @ ident == A and ident @ A == A)
        inv = antipode_inverse_point(p, A)
        rep.record("inverse", A @ inv == ident and inv @ A == ident)
        rep.record("berezinian_of_inverse", berezinian_point(inv) * berezinian_point(A) == 1)
    return rep
