import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsuper.points import (
    GrassmannAlgebra,
    SuperMatrix,
    antipode_inverse_point,
    berezinian_point,
    even_inverse,
    grassmann_arith,
    hom_product_check,
    matrix_to_hom_check,
    random_point,
    run_point_properties,
    sl_point,
)
from qsuper.presentation import QMode, build_presentation

G = GrassmannAlgebra(4)
t1, t2, t3, t4 = (G.theta(i) for i in range(1, 5))
one = G.one()


def test_theta_squares_vanish():
    assert not (t1 * t1)
    assert t1 * t2 == -(t2 * t1)


def test_grassmann_arith():
    assert grassmann_arith(one + t1 * t2, one - t1 * t2, "mul") == 1
    assert grassmann_arith(t1, t2, "add") == t2 + t1


def test_even_inverse_examples():
    half = even_inverse(G.scalar(2))
    assert half * 2 == 1 and half.body * 2 == 1
    assert even_inverse(one + t1 * t2) == one - t1 * t2
    with pytest.raises(ZeroDivisionError):
        even_inverse(t1 * t2)


def test_parity_labels():
    assert (t1 * t2).parity() == "even"
    assert t1.parity() == "odd"
    assert (one + t1).parity() == "mixed"


def test_berezinian_identity():
    assert berezinian_point(SuperMatrix.identity(2, 1, G)) == 1


def test_berezinian_1_1_formula():
    a, d = G.scalar(2) + t1 * t2, G.scalar(3)
    b, c = t3, t4
    M = SuperMatrix(1, 1, [[a, b], [c, d]])
    expected = even_inverse(d) * (a - b * even_inverse(d) * c)
    assert berezinian_point(M) == expected


def test_parity_violation_is_not_a_morphism():
    p = build_presentation(1, 1, QMode.classical())
    M = SuperMatrix(1, 1, [[G.scalar(2), G.scalar(1)], [t1, G.scalar(3)]])
    assert not M.is_parity_correct()
    assert not matrix_to_hom_check(p, M)


def test_singular_body_is_not_a_morphism():
    p = build_presentation(1, 1, QMode.classical())
    M = SuperMatrix(1, 1, [[t1 * t2, t3], [t4, G.scalar(1)]])
    assert not M.is_invertible()
    assert not matrix_to_hom_check(p, M)


def test_reduced():
    M = SuperMatrix(1, 1, [[G.scalar(2) + t1 * t2, t3], [t4, G.scalar(5)]])
    assert M.reduced() == ([[2]], [[5]])
    bad = SuperMatrix(1, 1, [[G.scalar(2), one], [t4, G.scalar(5)]])
    with pytest.raises(ValueError):
        bad.reduced()


def test_wrong_shape_rejected():
    with pytest.raises(ValueError):
        SuperMatrix(1, 1, [[one]])


@pytest.mark.parametrize("size", [(1, 1), (2, 1), (1, 2)])
def test_sl_point(size):
    M = random_point(*size, G, random.Random(1))
    assert berezinian_point(sl_point(M)) == 1


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(1, 1), (2, 1), (1, 2)]), st.integers(0, 10 ** 6))
def test_random_points_are_morphisms(size, seed):
    p = build_presentation(*size, QMode.classical())
    rng = random.Random(seed)
    M1, M2 = random_point(*size, G, rng), random_point(*size, G, rng)
    assert matrix_to_hom_check(p, M1)
    assert hom_product_check(p, M1, M2)
    assert berezinian_point(M1 @ M2) == berezinian_point(M1) * berezinian_point(M2)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(1, 1), (2, 1), (1, 2)]), st.integers(0, 10 ** 6))
def test_antipode_gives_inverse(size, seed):
    p = build_presentation(*size, QMode.classical())
    M = random_point(*size, G, random.Random(seed))
    inv = antipode_inverse_point(p, M)
    ident = SuperMatrix.identity(*size, G)
    assert M @ inv == ident and inv @ M == ident


def test_property_run():
    rep = run_point_properties(1, 1, grassmann=4, trials=10, triples=5, seed=2)
    assert rep.passed
    rows = rep.to_json()
    assert {r["property"] for r in rows} >= {"morphism", "hom_product", "sl_closure", "inverse"}
    assert all(r["rate"] == 1.0 for r in rows)
