"""Quantum superspaces and the linear coaction z_i -> sum_j a_ij (x) z_j."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .presentation import (
    Element,
    Presentation,
    QMode,
    RewriteSystem,
    _add_into,
    build_presentation,
)
from .scalars import format_scalar


class QSpacePresentation(RewriteSystem):
    """Generators z_1..z_N with z_i z_j = (-1)^(|z_i||z_j|) q^e z_j z_i for i < j.

    Primal space: z_i = x_i (even) for i <= m, xi_i (odd) after, e = -1.
    Dual space: z_i = eta_i (odd) for i <= m, y_i (even) after, e = +1.
    ``unflipped=True`` keeps the primal parities with e = +1; that variant is
    not a comodule algebra and exists to demonstrate it.
    """

    def __init__(self, m: int, n: int, dual: bool, qmode: QMode, unflipped: bool = False):
        super().__init__(qmode)
        if m < 0 or n < 0 or m + n < 1:
            raise ValueError("need m, n >= 0 and m + n >= 1")
        self.m, self.n, self.N = m, n, m + n
        self.dual = dual
        self.unflipped = unflipped
        flip = 1 if dual and not unflipped else 0
        self.parity = [((0 if i < m else 1) + flip) & 1 for i in range(self.N)]
        e = 1 if dual else -1
        self.exponent = e
        for g in range(self.N):
            for h in range(g + 1, self.N):
                # z_h z_g = (-1)^(|g||h|) q^-e z_g z_h
                s = -1 if self.parity[g] and self.parity[h] else 1
                self._rules[(h, g)] = [(qmode.coerce(s) * qmode.qpow(-e), (g, h))]

    @property
    def key(self):
        return ("space", self.m, self.n, self.dual, self.unflipped, self.qmode)

    def letter_name(self, g: int) -> str:
        i = g + 1
        if self.dual:
            return f"eta[{i}]" if self.parity[g] else f"y[{i}]"
        return f"xi[{i}]" if self.parity[g] else f"x[{i}]"

    def format_word(self, word) -> str:
        return "*".join(self.letter_name(g) for g in word) if word else "1"

    def indices(self, g: int) -> tuple:
        return (g + 1,)

    def gen(self, i: int) -> Element:
        return Element(self, {(i - 1,): self.one})

    def one_element(self) -> Element:
        return Element(self, {(): self.one})

    def zero(self) -> Element:
        return Element(self, {})

    def scalar(self, c) -> Element:
        c = self.qmode.coerce(c)
        return Element(self, {(): c} if c else {})

    def element(self, terms: dict) -> Element:
        return Element(self, self.reduce_terms(terms))

    def relations(self) -> list:
        """Each defining relation as a dict of free words (the element that must vanish)."""
        out = []
        for (h, g), rhs in sorted(self._rules.items(), key=lambda t: (t[0][1], t[0][0])):
            rel = {(g, h): self.one}
            # z_g z_h - (-1)^.. q^e z_h z_g
            s = -1 if self.parity[g] and self.parity[h] else 1
            _add_into(rel, (h, g), -self.qmode.coerce(s) * self.qmode.qpow(self.exponent))
            out.append(rel)
        for g in range(self.N):
            if self.parity[g]:
                out.append({(g, g): self.one})
        return out

    def describe_relations(self) -> list:
        lines = []
        for rel in self.relations():
            parts = []
            for w, c in rel.items():
                cs = format_scalar(c)
                body = self.format_word(w)
                parts.append(body if cs == "1" else f"-{body}" if cs == "-1" else f"({cs})*{body}")
            lines.append(" + ".join(parts).replace("+ -", "- ") + " = 0")
        return lines


@lru_cache(maxsize=None)
def _cached_space(m, n, dual, qmode, unflipped):
    return QSpacePresentation(m, n, dual, qmode, unflipped)


def build_qspace(m: int, n: int, dual: bool = False, qmode: QMode | str = "symbolic",
                 unflipped: bool = False) -> QSpacePresentation:
    if isinstance(qmode, str):
        qmode = QMode.parse(qmode)
    return _cached_space(m, n, bool(dual), qmode, bool(unflipped and dual))


class CoTensor:
    """Element of k_q[M(m|n)]^(x r) (x) space: keys are (alg words..., space word)."""

    __slots__ = ("alg", "space", "terms", "alg_legs")

    def __init__(self, alg: Presentation, space: QSpacePresentation, alg_legs: int, terms: dict):
        self.alg = alg
        self.space = space
        self.alg_legs = alg_legs
        self.terms = terms

    def _parities(self, key):
        return [self.alg.word_parity(w) for w in key[:-1]] + [self.space.word_parity(key[-1])]

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return CoTensor(self.alg, self.space, self.alg_legs, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = self.alg.qmode.coerce(c)
        return CoTensor(self.alg, self.space, self.alg_legs, {k: v * c for k, v in self.terms.items() if v * c})

    def __mul__(self, other):
        if not isinstance(other, CoTensor):
            return self.scale(other)
        out: dict = {}
        r = self.alg_legs + 1
        for ka, ca in self.terms.items():
            pa = self._parities(ka)
            after = [sum(pa[t + 1:]) for t in range(r)]
            for kb, cb in other.terms.items():
                pb = other._parities(kb)
                sign = sum(after[j] for j in range(r) if pb[j]) & 1
                legs = [self.alg.mul_words(ka[t], kb[t]) for t in range(r - 1)]
                legs.append(self.space.mul_words(ka[-1], kb[-1]))
                if any(not leg for leg in legs):
                    continue
                c = -ca * cb if sign else ca * cb
                combos = [((), c)]
                for leg in legs:
                    combos = [(k + (w,), cc * cw) for k, cc in combos for w, cw in leg.items()]
                for k, cc in combos:
                    _add_into(out, k, cc)
        return CoTensor(self.alg, self.space, self.alg_legs, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in sorted(self.terms.items()):
            body = " (x) ".join([self.alg.format_word(w) for w in key[:-1]] + [self.space.format_word(key[-1])])
            parts.append(f"({format_scalar(c)})*{body}")
        return " + ".join(parts)


def _check_sizes(p_alg: Presentation, p_sp: QSpacePresentation):
    if (p_alg.m, p_alg.n) != (p_sp.m, p_sp.n) or p_alg.qmode != p_sp.qmode:
        raise ValueError("algebra and space have different sizes or q-modes")


def coaction_image(p_alg: Presentation, p_sp: QSpacePresentation, i: int) -> CoTensor:
    """rho(z_i) = sum_j a_ij (x) z_j."""
    _check_sizes(p_alg, p_sp)
    terms = {}
    for j in range(1, p_alg.N + 1):
        terms[((p_alg.letter(i, j),), (j - 1,))] = p_alg.one
    return CoTensor(p_alg, p_sp, 1, terms)


def _rho_of_free_word(p_alg, p_sp, word) -> CoTensor:
    out = CoTensor(p_alg, p_sp, 1, {((), ()): p_alg.one})
    for g in word:
        out = out * coaction_image(p_alg, p_sp, g + 1)
    return out


@dataclass
class ComoduleReport:
    size: tuple
    dual: bool
    q: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.results)

    def to_json(self) -> list:
        out = []
        for axiom, ok, witness in sorted(self.results, key=lambda r: r[0]):
            row = {"axiom": axiom, "size": list(self.size), "mode": "dual" if self.dual else "primal",
                   "q": self.q, "pass": ok}
            if witness is not None:
                row["witness"] = witness
            out.append(row)
        return out


def check_comodule(p_alg: Presentation, p_sp: QSpacePresentation) -> ComoduleReport:
    """Relation preservation, coassociativity and the counit law for rho."""
    _check_sizes(p_alg, p_sp)
    report = ComoduleReport((p_alg.m, p_alg.n), p_sp.dual, p_alg.qmode.label())
    for rel in p_sp.relations():
        img = CoTensor(p_alg, p_sp, 1, {})
        for w, c in rel.items():
            img = img + _rho_of_free_word(p_alg, p_sp, w).scale(c)
        name = " ".join(p_sp.format_word(w) for w in rel)
        report.results.append((f"relation:{name}", img.is_zero(), None if img.is_zero() else str(img)))
    N = p_alg.N
    for i in range(1, N + 1):
        # (Delta (x) id) rho = (id (x) rho) rho, both sides in A (x) A (x) V
        lhs: dict = {}
        rhs: dict = {}
        for j in range(1, N + 1):
            for k in range(1, N + 1):
                _add_into(lhs, ((p_alg.letter(i, k),), (p_alg.letter(k, j),), (j - 1,)), p_alg.one)
        for j in range(1, N + 1):
            for (aw, sw), c in coaction_image(p_alg, p_sp, j).terms.items():
                _add_into(rhs, ((p_alg.letter(i, j),), aw, sw), c)
        ok = lhs == rhs
        report.results.append((f"coassociativity:z{i}", ok, None if ok else f"{lhs} != {rhs}"))
        counit = {}
        for (aw, sw), c in coaction_image(p_alg, p_sp, i).terms.items():
            a, b = p_alg.indices(aw[0])
            if a == b:
                _add_into(counit, sw, c)
        ok = counit == {(i - 1,): p_alg.one}
        report.results.append((f"counit:z{i}", ok, None if ok else str(counit)))
    report.results.sort(key=lambda r: r[0])
    return report


def check_comodule_for(m: int, n: int, dual: bool, qmode="symbolic") -> ComoduleReport:
    p_alg = build_presentation(m, n, qmode)
    return check_comodule(p_alg, build_qspace(m, n, dual, p_alg.qmode))
