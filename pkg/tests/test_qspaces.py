import pytest

from qsuper.presentation import QMode, build_presentation
from qsuper.qspaces import build_qspace, check_comodule, check_comodule_for, coaction_image

SIZES = [(1, 1), (2, 1), (1, 2), (2, 2)]


def test_primal_relations_1_1():
    s = build_qspace(1, 1, dual=False)
    x, xi = s.gen(1), s.gen(2)
    assert xi * x == x * xi * s.qmode.qpow(1)
    assert (xi * xi).is_zero()
    assert not (x * x).is_zero()


def test_dual_relations_1_1():
    s = build_qspace(1, 1, dual=True)
    eta, y = s.gen(1), s.gen(2)
    assert s.letter_name(0) == "eta[1]" and s.letter_name(1) == "y[2]"
    assert y * eta == eta * y * s.qmode.qpow(-1)
    assert (eta * eta).is_zero()


def test_primal_odd_pairs_anticommute():
    s = build_qspace(1, 2, dual=False)
    a, b = s.gen(2), s.gen(3)
    assert b * a == -(a * b) * s.qmode.qpow(1)


def test_relation_listing():
    lines = build_qspace(2, 1, dual=False).describe_relations()
    # three exchange relations plus one odd square
    assert len(lines) == 4
    assert all(line.endswith("= 0") for line in lines)


def test_coaction_image():
    p = build_presentation(1, 1, "symbolic")
    s = build_qspace(1, 1, dual=False)
    img = coaction_image(p, s, 1)
    assert len(img.terms) == 2


def test_size_mismatch_rejected():
    with pytest.raises(ValueError):
        check_comodule(build_presentation(2, 1, "symbolic"), build_qspace(1, 1, dual=False))


@pytest.mark.parametrize("size", SIZES)
@pytest.mark.parametrize("dual", [False, True])
def test_comodule_algebra(size, dual):
    qmode = QMode.specialized(3) if size == (2, 2) else "symbolic"
    report = check_comodule_for(*size, dual, qmode)
    assert report.passed, [r for r in report.results if not r[1]]


@pytest.mark.parametrize("size", [(1, 1), (2, 1)])
def test_unflipped_dual_is_not_comodule(size):
    p = build_presentation(*size, "symbolic")
    report = check_comodule(p, build_qspace(*size, dual=True, unflipped=True))
    assert not report.passed
    bad = [r for r in report.results if not r[1]]
    assert all(r[0].startswith("relation:") for r in bad)


def test_report_rows():
    rows = check_comodule_for(1, 1, False).to_json()
    assert {"axiom", "size", "mode", "q", "pass"} <= set(rows[0])
    assert [r["axiom"] for r in rows] == sorted(r["axiom"] for r in rows)
