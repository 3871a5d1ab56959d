"""Tests for q-integers, Laurent polynomials in q and the QParam ring."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from app.services.errors import InvalidQ, ModeMismatch
from app.services.scalars import (
    LaurentPoly,
    QParam,
    exact_q_log,
    q_falling,
    q_int,
    to_fraction,
    validate_q,
)

valid_numeric_q = st.sampled_from(["1", "2", "1/2", "3", "3/2", "5", "-2", "2/3"])


class TestQParam:
    def test_parse_numeric(self):
        q = QParam.parse("3/2")
        assert not q.is_symbolic
        assert q.value == Fraction(3, 2)

    def test_parse_symbolic(self):
        assert QParam.parse("symbolic").is_symbolic

    def test_parse_garbage(self):
        with pytest.raises(InvalidQ):
            QParam.parse("two")

    def test_validate_accepts(self):
        validate_q(QParam.numeric(2))
        validate_q(QParam.numeric(1))
        validate_q(QParam.symbolic())

    @pytest.mark.parametrize("value", ["0", "-1"])
    def test_validate_rejects(self, value):
        with pytest.raises(InvalidQ):
            validate_q(QParam.parse(value))

    def test_scalar_coercion(self):
        assert QParam.numeric(2).scalar("1/3") == Fraction(1, 3)
        assert QParam.symbolic().scalar(3) == LaurentPoly.constant(3)

    def test_laurent_in_numeric_mode(self):
        with pytest.raises(ModeMismatch):
            QParam.numeric(2).scalar(LaurentPoly.monomial(1))

    def test_power(self):
        assert QParam.numeric(2).power(-2) == Fraction(1, 4)
        assert QParam.symbolic().power(3) == LaurentPoly.monomial(3)


class TestLaurentPoly:
    def test_arithmetic(self):
        q = LaurentPoly.monomial(1)
        assert (q + 1) * (q - 1) == q ** 2 - 1
        assert q ** -2 == LaurentPoly.monomial(-2)

    def test_non_monomial_inverse(self):
        with pytest.raises(ArithmeticError):
            (LaurentPoly.monomial(1) + 1) ** -1

    def test_divide_exact(self):
        q = LaurentPoly.monomial(1)
        assert (q ** 3 - 1).divide_exact(q - 1) == q ** 2 + q + 1

    def test_divide_not_exact(self):
        q = LaurentPoly.monomial(1)
        with pytest.raises(ArithmeticError):
            (q ** 2 + 1).divide_exact(q - 1)

    def test_str(self):
        q = LaurentPoly.monomial(1)
        assert str(2 * q ** 2 + q - 1) == "2*q^2 + q - 1"
        assert str(LaurentPoly()) == "0"

    def test_constant_equals_rational(self):
        assert LaurentPoly.constant(3) == 3
        assert hash(LaurentPoly.constant(3)) == hash(Fraction(3))

    def test_scalar_products_drop_zero_terms(self):
        q = LaurentPoly.monomial(1)
        p = 2 * q ** 2 - q + Fraction(1, 3)
        assert p * 0 == 0 and (p * 0).is_zero()
        assert p * Fraction(3, 2) == 3 * q ** 2 - Fraction(3, 2) * q + Fraction(1, 2)
        assert (p - p).is_zero()
        assert p * q == q * p == 2 * q ** 3 - q ** 2 + Fraction(1, 3) * q
        assert p != 0 and p != Fraction(1, 3)

    @settings(max_examples=50)
    @given(
        left=st.dictionaries(st.integers(-3, 3), st.integers(-4, 4), max_size=4),
        right=st.dictionaries(st.integers(-3, 3), st.integers(-4, 4), max_size=4),
    )
    def test_product_matches_term_by_term(self, left, right):
        expected = {}
        for e1, c1 in left.items():
            for e2, c2 in right.items():
                expected[e1 + e2] = expected.get(e1 + e2, 0) + c1 * c2
        product = LaurentPoly(left) * LaurentPoly(right)
        assert product == LaurentPoly(expected)
        assert all(c != 0 for _, c in product.items())


class TestQInt:
    def test_q2_n3(self):
        assert q_int(QParam.numeric(2), 3) == 7

    def test_zero(self, any_q):
        assert q_int(any_q, 0) == 0

    def test_q_equal_one(self):
        assert q_int(QParam.numeric(1), -4) == -4

    def test_symbolic_negative(self):
        assert q_int(QParam.symbolic(), -1) == -LaurentPoly.monomial(-1)

    def test_symbolic_two(self):
        assert q_int(QParam.symbolic(), 2) == LaurentPoly({0: 1, 1: 1})

    @settings(max_examples=100)
    @given(q_text=valid_numeric_q, n1=st.integers(-30, 30), n2=st.integers(-30, 30))
    def test_injective(self, q_text, n1, n2):
        q = QParam.parse(q_text)
        if n1 != n2:
            assert q_int(q, n1) != q_int(q, n2)


class TestQFalling:
    def test_small(self, q2):
        assert q_falling(q2, 0).coeffs == (1,)
        assert q_falling(q2, 1).coeffs == (0, 1)

    def test_q2_j2(self, q2):
        # Z(Z - 1)/2
        assert q_falling(q2, 2).coeffs == (0, Fraction(-1, 2), Fraction(1, 2))

    @pytest.mark.parametrize("j", [1, 2, 3, 4])
    @pytest.mark.parametrize("k", [-3, -1, 0, 1, 2, 5])
    def test_falling_product(self, numeric_q, j, k):
        expected = Fraction(1)
        for i in range(j):
            expected *= q_int(numeric_q, k - i)
        assert q_falling(numeric_q, j).evaluate(q_int(numeric_q, k)) == expected

    def test_degree(self, qsym):
        assert q_falling(qsym, 3).degree == 3

    def test_negative_j(self, q2):
        with pytest.raises(ValueError):
            q_falling(q2, -1)


class TestExactQLog:
    @pytest.mark.parametrize(
        "q_text, target, expected",
        [
            ("2", 8, 3),
            ("2", Fraction(1, 4), -2),
            ("1/2", 8, -3),
            ("3/2", Fraction(9, 4), 2),
            ("-2", -8, 3),
            ("-2", 8, None),
            ("2", 6, None),
            ("3", 1, 0),
            ("2", 0, None),
        ],
    )
    def test_values(self, q_text, target, expected):
        assert exact_q_log(QParam.parse(q_text), target) == expected

    def test_requires_nontrivial_q(self):
        with pytest.raises(ValueError):
            exact_q_log(QParam.numeric(1), 1)


def test_to_fraction():
    assert to_fraction(" 3/4 ") == Fraction(3, 4)
    with pytest.raises(TypeError):
        to_fraction(True)
