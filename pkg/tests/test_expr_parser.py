"""Tests for the expression DSL: parse trees, errors and evaluation."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from app.services.algebra import AlgebraElement
from app.services.errors import ExprSyntaxError, NonIntegerExponent, QInNumericMode
from app.services.expr_parser import (
    Add,
    GenA,
    GenB,
    Mul,
    Neg,
    Paren,
    Pow,
    QSym,
    RationalLit,
    Sub,
    Var,
    parse_element,
    parse_expr,
    parse_poly,
    parse_poly_expr,
)
from app.services.poly import UniPoly
from app.services.scalars import LaurentPoly, QParam
from app.utils.formatters import element_to_dsl, format_element


class TestParseTree:
    def test_sum_of_products(self):
        assert parse_expr("q*B*A + 1") == Add(Mul(Mul(QSym(), GenB()), GenA()), RationalLit(Fraction(1)))

    def test_parenthesised_power(self):
        assert parse_expr("(B*A)^2") == Pow(Paren(Mul(GenB(), GenA())), 2)

    def test_left_associative_minus(self):
        assert parse_expr("A - B - 1") == Sub(Sub(GenA(), GenB()), RationalLit(Fraction(1)))

    def test_rational_literal(self):
        assert parse_expr("3/2*B") == Mul(RationalLit(Fraction(3, 2)), GenB())

    def test_unary_minus_binds_looser_than_power(self):
        assert parse_expr("-B^2*A") == Mul(Neg(Pow(GenB(), 2)), GenA())

    def test_whitespace(self):
        assert parse_expr("  A  ^ 3 ") == Pow(GenA(), 3)

    def test_poly_variable(self):
        assert parse_poly_expr("T^2 + T") == Add(Pow(Var(), 2), Var())


class TestParseErrors:
    def test_non_integer_exponent(self):
        with pytest.raises(NonIntegerExponent):
            parse_expr("A^B")

    def test_fraction_exponent(self):
        with pytest.raises(NonIntegerExponent):
            parse_expr("A^1/2")

    def test_missing_exponent(self):
        with pytest.raises(NonIntegerExponent):
            parse_expr("A^")

    def test_missing_star(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse_expr("2B")
        assert info.value.position == 1

    def test_unknown_character(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse_expr("A + x")
        assert info.value.position == 4
        assert "position 4" in str(info.value)

    def test_empty(self):
        with pytest.raises(ExprSyntaxError):
            parse_expr("   ")

    def test_unbalanced(self):
        with pytest.raises(ExprSyntaxError):
            parse_expr("(A + B")

    @pytest.mark.parametrize("src, position", [("A^", 2), ("(A + B", 6), ("A +", 3), ("2*(", 3)])
    def test_errors_at_end_point_past_input(self, src, position):
        with pytest.raises(ExprSyntaxError) as info:
            parse_expr(src)
        assert info.value.position == position

    def test_chained_power(self):
        with pytest.raises(ExprSyntaxError):
            parse_expr("A^2^3")

    def test_q_rejected_without_substitution(self, q2):
        with pytest.raises(QInNumericMode):
            parse_element("q*B", q2, substitute_q=False)

    def test_t_outside_polynomials(self, q2):
        with pytest.raises(ExprSyntaxError):
            parse_element("T*A", q2)

    def test_a_inside_polynomials(self, q2):
        with pytest.raises(ExprSyntaxError):
            parse_poly("A + T", q2)


class TestEvaluate:
    def test_q_substituted(self, q2):
        assert parse_element("q*B", q2) == parse_element("2*B", q2)

    def test_q_symbolic(self, qsym):
        element = parse_element("q*B", qsym)
        assert element.coefficient(0) == UniPoly(qsym, (0, LaurentPoly.monomial(1)))

    def test_relation_normalizes(self, any_q):
        assert parse_element("A*B - q*B*A", any_q) == AlgebraElement.one(any_q)

    def test_unary_minus(self, q2):
        assert parse_element("-B^2*A", q2) == parse_element("0 - B*B*A", q2)

    def test_poly(self, q2):
        assert parse_poly("(T + 1)^2 - 2*T", q2) == UniPoly(q2, (1, 0, 1))


@st.composite
def elements(draw, q):
    terms = {}
    for j in range(draw(st.integers(0, 2)) + 1):
        coeffs = draw(
            st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), max_size=3)
        )
        terms[j] = UniPoly(q, tuple(coeffs))
    return AlgebraElement.from_dict(q, terms)


@settings(max_examples=100, deadline=None)
@given(data=st.data(), q_text=st.sampled_from(["2", "1/2", "1"]))
def test_printed_form_parses_back(data, q_text):
    q = QParam.parse(q_text)
    element = data.draw(elements(q))
    assert parse_element(format_element(element), q) == element


def test_symbolic_printed_form_parses_back(qsym):
    element = parse_element("(q^2 - 1)*B^2*A + q*B - 3", qsym)
    assert parse_element(element_to_dsl(element), qsym) == element


def test_negative_q_powers_have_no_spelling(qsym):
    element = AlgebraElement.constant(qsym, LaurentPoly.monomial(-1))
    with pytest.raises(ValueError):
        element_to_dsl(element)
