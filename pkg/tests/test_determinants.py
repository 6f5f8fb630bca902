import random

import pytest

from qsuper.determinants import (
    Permutation,
    QMatrixView,
    ScalingFailure,
    all_permutations,
    block_det,
    block_view,
    det_commutation_check,
    det_scaling_check,
    det_scaling_sample,
    laplace_check,
    one_per_row_words,
    qdet,
    qminor,
)
from qsuper.expr import parse_expression
from qsuper.presentation import QMode, build_presentation, specialize


def P(p, text):
    return parse_expression(p, text)


def test_permutation_length():
    assert Permutation((2, 1, 0)).length == 3
    assert sorted(p.length for p in all_permutations(3)) == [0, 1, 1, 2, 2, 3]


def test_view_must_increase():
    with pytest.raises(ValueError):
        QMatrixView((2, 1), (1, 2), "11")


def test_qdet_1x1():
    p = build_presentation(1, 1, "symbolic")
    assert block_det(p, "11") == p.gen(1, 1)
    assert block_det(p, "22") == p.gen(2, 2)


def test_qdet_block_11():
    p = build_presentation(2, 1, "symbolic")
    assert block_det(p, "11") == P(p, "x[1,1]*x[2,2] - q^-1*x[1,2]*x[2,1]")


def test_qdet_block_22():
    p = build_presentation(1, 2, "symbolic")
    assert block_det(p, "22") == P(p, "x[2,2]*x[3,3] - q*x[2,3]*x[3,2]")


def test_qdet_rejects_bad_views():
    p = build_presentation(2, 1, "symbolic")
    with pytest.raises(ValueError):
        qdet(p, QMatrixView((1, 2), (1,), "11"))
    with pytest.raises(ValueError):
        qdet(p, QMatrixView((1, 3), (1, 3), "full"))


def test_classical_limit_is_determinant():
    p = build_presentation(2, 2, "symbolic")
    c = build_presentation(2, 2, QMode.classical())
    assert specialize(p, block_det(p, "11"), 1) == P(c, "x[1,1]*x[2,2] - x[1,2]*x[2,1]")
    assert specialize(p, block_det(p, "22"), 1) == P(c, "x[3,3]*x[4,4] - x[3,4]*x[4,3]")


def test_minor_is_restricted_qdet():
    p = build_presentation(2, 1, "symbolic")
    assert qminor(p, "11", 1, 2) == p.gen(2, 1)
    assert qminor(p, "11", 2, 2) == p.gen(1, 1)


@pytest.mark.parametrize("size,block", [((1, 1), "11"), ((2, 1), "11"), ((1, 2), "22"), ((2, 1), "22")])
def test_laplace(size, block):
    p = build_presentation(*size, "symbolic")
    v = block_view(p, block)
    for r in range(1, len(v.rows) + 1):
        ok, witness = laplace_check(p, v, r)
        assert ok, witness


def test_laplace_2_2_at_q3():
    p = build_presentation(2, 2, QMode.specialized(3))
    for block in ("11", "22"):
        v = block_view(p, block)
        assert laplace_check(p, v, 1) == (True, None)
        assert laplace_check(p, v, 2) == (True, None)


def test_commutation_classification():
    p11 = build_presentation(1, 1, "symbolic")
    assert det_commutation_check(p11, "Dm", 1, 2) == ("q_scalar", -1)
    kind, comm = det_commutation_check(p11, "Dm", 2, 2)
    assert kind == "polynomial"
    assert comm == P(p11, "(q - q^-1)*xi[1,2]*xi[2,1]")
    p21 = build_presentation(2, 1, "symbolic")
    assert det_commutation_check(p21, "Dm", 1, 2) == ("central", None)


def test_scaling_examples():
    p11 = build_presentation(1, 1, "symbolic")
    assert det_scaling_check(p11, "Dm", (1,)) == 0
    assert det_scaling_check(p11, "Dm", (2,)) == 1
    p21 = build_presentation(2, 1, "symbolic")
    assert det_scaling_check(p21, "Dm", (1, 3)) == 1


@pytest.mark.parametrize("size", [(1, 1), (2, 1), (1, 2)])
def test_scaling_row_and_column_agree(size):
    p = build_presentation(*size, "symbolic")
    for which in ("Dm", "Dn"):
        for idx in one_per_row_words(p, which):
            assert det_scaling_check(p, which, idx, "row") == det_scaling_check(p, which, idx, "col")


def test_scaling_rejects_wrong_shape():
    p = build_presentation(2, 1, "symbolic")
    with pytest.raises(ValueError):
        det_scaling_check(p, "Dm", (1,))


def test_scaling_sample_2_2():
    p = build_presentation(2, 2, QMode.specialized(3))
    assert det_scaling_sample(p, "Dn", random.Random(3), 50) == 50


def test_scaling_failure_is_reported():
    assert issubclass(ScalingFailure, AssertionError)
