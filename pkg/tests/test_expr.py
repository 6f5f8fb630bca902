import pytest

from qsuper.expr import ExprError, UnknownGenerator, parse_expression
from qsuper.localization import LocElement
from qsuper.presentation import Element, build_presentation


@pytest.fixture
def p():
    return build_presentation(1, 1, "symbolic")


@pytest.mark.parametrize("text", [
    "x[1,1]*x[2,2] - (q - q^-1)*xi[1,2]*xi[2,1]",
    "3/2*xi[1,2]*x[1,1] + 1",
    "-x[2,2]^3",
    "q^2*x[1,1]",
])
def test_round_trip(p, text):
    e = parse_expression(p, text)
    assert isinstance(e, Element)
    assert parse_expression(p, str(e)) == e


def test_round_trip_localized(p):
    e = parse_expression(p, "xi[1,2]*Dm^-1 + x[2,2]^-2")
    assert isinstance(e, LocElement)
    assert parse_expression(p, str(e)) == e


def test_scalar_inverse_stays_polynomial(p):
    assert isinstance(parse_expression(p, "q^-1"), Element)
    assert parse_expression(p, "2^-1*2") == 1


@pytest.mark.parametrize("text,pos", [
    ("x[1,1] +", 8),
    ("x[1,1] * * x[2,2]", 9),
    ("(x[1,1]", 7),
    ("x[1 1]", 4),
    ("x[1,1] $", 7),
    ("1/0", 2),
])
def test_syntax_errors_report_position(p, text, pos):
    with pytest.raises(ExprError) as info:
        parse_expression(p, text)
    assert info.value.pos == pos
    assert f"at position {pos}" in str(info.value)


@pytest.mark.parametrize("text", ["x[3,1]", "xi[1,1]", "x[1,2]", "y[1,1]", "z"])
def test_unknown_generator(p, text):
    with pytest.raises(UnknownGenerator):
        parse_expression(p, text)


def test_noninvertible_power(p):
    with pytest.raises(ExprError):
        parse_expression(p, "xi[1,2]^-1")
    with pytest.raises(ExprError):
        parse_expression(p, "0^-1")
