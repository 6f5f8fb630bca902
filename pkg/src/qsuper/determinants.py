"""Quantum determinants of the diagonal blocks, minors and their commutation lemmas."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

from .presentation import Element, Presentation


@dataclass(frozen=True)
class Permutation:
    images: tuple

    @property
    def length(self) -> int:
        im = self.images
        return sum(1 for a in range(len(im)) for b in range(a + 1, len(im)) if im[a] > im[b])


def all_permutations(r: int):
    for im in permutations(range(r)):
        yield Permutation(im)


@dataclass(frozen=True)
class QMatrixView:
    rows: tuple
    cols: tuple
    block: str  # "11", "22" or "full"

    def __post_init__(self):
        for seq in (self.rows, self.cols):
            if any(a >= b for a, b in zip(seq, seq[1:])):
                raise ValueError("view indices must be strictly increasing")


def block_view(pres: Presentation, block: str) -> QMatrixView:
    if block == "11":
        idx = tuple(range(1, pres.m + 1))
    elif block == "22":
        idx = tuple(range(pres.m + 1, pres.N + 1))
    else:
        raise ValueError(f"unknown block {block!r}")
    return QMatrixView(idx, idx, block)


def _check_view(pres: Presentation, v: QMatrixView) -> str:
    if len(v.rows) != len(v.cols):
        raise ValueError("quantum determinant needs a square view")
    idx = set(v.rows) | set(v.cols)
    if all(i <= pres.m for i in idx):
        block = "11"
    elif all(i > pres.m for i in idx):
        block = "22"
    else:
        raise ValueError("view mixes the two diagonal blocks")
    if v.block in ("11", "22") and v.block != block and idx:
        raise ValueError(f"view indices do not lie in block {v.block}")
    return block


def det_sign(pres_or_mode, block: str, length: int):
    """(-q)^(-l) for block 11, (-q)^(+l) for block 22."""
    qm = pres_or_mode.qmode if hasattr(pres_or_mode, "qmode") else pres_or_mode
    e = -length if block == "11" else length
    return (-1) ** length * qm.qpow(e)


def qdet(pres: Presentation, v: QMatrixView) -> Element:
    block = _check_view(pres, v)
    r = len(v.rows)
    terms = {}
    for sigma in all_permutations(r):
        word = tuple(pres.letter(v.rows[t], v.cols[sigma.images[t]]) for t in range(r))
        c = det_sign(pres, block, sigma.length)
        terms[word] = terms.get(word, 0) + c
    return pres.element(terms)


def block_det(pres: Presentation, block: str) -> Element:
    return qdet(pres, block_view(pres, block))


def qminor(pres: Presentation, block: str, del_row: int, del_col: int) -> Element:
    """Quantum determinant of the block with one row and one column removed."""
    v = block_view(pres, block)
    rows = tuple(i for i in v.rows if i != del_row)
    cols = tuple(j for j in v.cols if j != del_col)
    if not rows:
        return pres.one_element()
    return qdet(pres, QMatrixView(rows, cols, block))


def qdet_matrix(entries, block: str, qmode, one):
    """Quantum determinant of a square matrix of ring elements (row order products)."""
    r = len(entries)
    total = None
    for sigma in all_permutations(r):
        term = one
        for t in range(r):
            term = term * entries[t][sigma.images[t]]
        term = term * det_sign(qmode, block, sigma.length)
        total = term if total is None else total + term
    return one if total is None else total


def laplace_check(pres: Presentation, v: QMatrixView, expansion_row: int):
    """Check the row expansion D = sum_s (-q)^(s-r) minor(r^, s^) x_{r,s}.

    Block 22 uses the mirrored weight (-q)^(r-s).

    Positions r, s are 1-based within the view. Also checks the alien
    cofactor identity sum_s (-q)^(s-1) minor(1^, s^) x_{last,s} = 0 when the
    view has at least two rows. Returns (ok, witness).
    """
    block = _check_view(pres, v)
    r = len(v.rows)
    full = qdet(pres, v)
    qm = pres.qmode

    def minor(row_pos, col_pos):
        rows = tuple(x for t, x in enumerate(v.rows, 1) if t != row_pos)
        cols = tuple(x for t, x in enumerate(v.cols, 1) if t != col_pos)
        if not rows:
            return pres.one_element()
        return qdet(pres, QMatrixView(rows, cols, block))

    def expansion(minor_row, entry_row):
        total = pres.zero()
        for s in range(1, r + 1):
            d = s - minor_row
            coeff = (-1 if d % 2 else 1) * qm.qpow(d if block == "11" else -d)
            entry = pres.gen(v.rows[entry_row - 1], v.cols[s - 1])
            total = total + coeff * (minor(minor_row, s) * entry)
        return total

    rr = expansion_row
    diff = expansion(rr, rr) - full
    if diff:
        return False, {"identity": f"row {rr} expansion", "residual": str(diff)}
    if r >= 2:
        alien = expansion(1, r)
        if alien:
            return False, {"identity": "alien cofactor", "residual": str(alien)}
    return True, None


def det_commutation_check(pres: Presentation, which: str, i: int, j: int):
    """Classify how D (``"Dm"`` or ``"Dn"``) commutes with the generator a_ij.

    Returns ("central", None), ("q_scalar", e) when D g = q^e g D, or
    ("polynomial", D g - g D).
    """
    D = block_det(pres, "11" if which == "Dm" else "22")
    g = pres.gen(i, j)
    left, right = D * g, g * D
    if left == right:
        return "central", None
    for e in (-1, 1, -2, 2):
        if left == pres.qmode.qpow(e) * right:
            return "q_scalar", e
    return "polynomial", left - right


class ScalingFailure(AssertionError):
    pass


def det_scaling_check(pres: Presentation, which: str, indices, variant: str = "row") -> int:
    """Verify D w = q^(-t) w D for a one-per-row (or per-column) product w.

    For ``which="Dm"`` and variant ``row`` the word is a_{1,k1} ... a_{m,km} with
    ``indices = (k1, ..., km)``; ``col`` gives a_{k1,1} ... a_{km,m}. For ``Dn``
    the rows/columns are m+1..m+n. Returns the exponent t, which is the number of
    indices outside the block.
    """
    m, n = pres.m, pres.n
    block_idx = list(range(1, m + 1)) if which == "Dm" else list(range(m + 1, m + n + 1))
    if len(indices) != len(block_idx):
        raise ValueError("need exactly one index per row/column of the block")
    if variant == "row":
        letters = [pres.gen(r, k) for r, k in zip(block_idx, indices)]
    elif variant == "col":
        letters = [pres.gen(k, c) for c, k in zip(block_idx, indices)]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    w = pres.one_element()
    for x in letters:
        w = w * x
    D = block_det(pres, "11" if which == "Dm" else "22")
    t = sum(1 for k in indices if k not in block_idx)
    left, right = D * w, w * D
    if left != pres.qmode.qpow(-t) * right:
        raise ScalingFailure(f"D*w != q^-{t} w*D for indices {tuple(indices)}: residual {left - pres.qmode.qpow(-t) * right}")
    return t


def one_per_row_words(pres: Presentation, which: str):
    size = pres.m if which == "Dm" else pres.n
    return product(range(1, pres.N + 1), repeat=size)


def det_scaling_sample(pres: Presentation, which: str, rng, count: int) -> int:
    """Check D w = q^(-t) w D on ``count`` random products of one to three
    one-per-row/column words; t is the sum of the factors' exponents.

    Returns the number of words checked; raises ScalingFailure on a mismatch.
    """
    size = pres.m if which == "Dm" else pres.n
    block_idx = range(1, pres.m + 1) if which == "Dm" else range(pres.m + 1, pres.N + 1)
    D = block_det(pres, "11" if which == "Dm" else "22")
    checked = 0
    while checked < count:
        w = pres.one_element()
        t = 0
        for _ in range(rng.randint(1, 3)):
            idx = [rng.randint(1, pres.N) for _ in range(size)]
            pairs = zip(block_idx, idx) if rng.random() < 0.5 else ((k, c) for c, k in zip(block_idx, idx))
            for a, b in pairs:
                w = w * pres.gen(a, b)
            t += sum(1 for k in idx if k not in block_idx)
        if not w:
            continue
        left, right = D * w, w * D
        if left != pres.qmode.qpow(-t) * right:
            raise ScalingFailure(f"D*w != q^-{t} w*D for w = {w}")
        checked += 1
    return checked
