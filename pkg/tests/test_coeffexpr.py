import pytest

from spinharm.coeffexpr import ParseError, fold, parse_coeff, parse_scalar
from spinharm.scalars import Scalar, Substitution

U = Scalar.u()
T_U2 = Substitution.T_EQUALS_U_SQUARED
T_HALF = Substitution.T_EQUALS_HALF_U_SQUARED
T_ID = Substitution.T_EQUALS_U


def sc(p, q=1):
    return Scalar.rational(p, q)


def test_cp3_coefficient_shape():
    s = parse_scalar("(1-t)/(2*u)", T_U2)
    assert s == (sc(1) - U * U) / (sc(2) * U)


def test_linear_in_t():
    s = parse_scalar("3/2 - t", T_ID)
    assert s == sc(3, 2) - U


def test_truncated_input_position():
    with pytest.raises(ParseError) as err:
        parse_coeff("1/(2*")
    assert "column 5" in str(err.value)


def test_unclosed_paren():
    with pytest.raises(ParseError, match="expected '\\)'"):
        parse_coeff("(1-t")


def test_unknown_character_position():
    with pytest.raises(ParseError) as err:
        parse_coeff("1 + x")
    assert "column 5" in str(err.value)


def test_precedence_power_over_product():
    assert parse_scalar("2^3*2", T_ID) == sc(16)
    assert parse_scalar("2*3+4*5", T_ID) == sc(26)


def test_unary_minus_binds_below_power():
    assert parse_scalar("-t^2", T_ID) == -(U * U)


def test_negative_exponent():
    assert parse_scalar("u^-2", T_U2) == sc(1) / (U * U)


def test_power_of_parenthesized_expression():
    s = parse_scalar("(1-t)^2/t", T_ID)
    assert s == (sc(1) - U) ** 2 / U


def test_division_by_zero_literal_rejected():
    with pytest.raises(ParseError, match="division by zero"):
        parse_scalar("1/(2-2)", T_ID)
    with pytest.raises(ParseError, match="division by zero"):
        parse_scalar("1/0", T_ID)


def test_zero_to_negative_power_rejected():
    with pytest.raises(ParseError, match="division by zero"):
        parse_scalar("(1-1)^-1", T_ID)


def test_substitution_binds_t():
    assert parse_scalar("t", T_U2) == U * U
    assert parse_scalar("t", T_HALF) == U * U / sc(2)
    assert parse_scalar("t", T_ID) == U


def test_whitespace_tolerated():
    assert parse_scalar("  ( 1 - t ) / ( 2 * u )  ", T_U2) == \
        parse_scalar("(1-t)/(2*u)", T_U2)


def test_fold_spin4_coefficient():
    # (1-t)/sqrt(2t) with u = sqrt(2t)
    s = parse_scalar("(1-t)/u", T_HALF)
    assert s == (sc(2) - U * U) / (sc(2) * U)


def test_ast_shape():
    node = parse_coeff("1+2*3")
    assert node[0] == "+"
    assert fold(node, T_ID) == sc(7)
