"""Exact quadratic-field scalars: normalization, order, parsing, arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from grouptrees.core import Scalar, ZERO, ONE
from grouptrees.errors import MixedFieldError, ParseError


def S(text: str) -> Scalar:
    return Scalar.parse(text)


rationals = st.fractions(min_value=-100, max_value=100, max_denominator=10**4)
small_d = st.sampled_from([1, 2, 3, 5, 6, 7, 10, 13])


@st.composite
def scalars(draw, d=None):
    dd = d if d is not None else draw(small_d)
    return Scalar(draw(rationals), draw(rationals), dd)


class TestNormalization:
    def test_zero_and_signs(self):
        assert Scalar(Fraction(0)).sign() == 0
        assert Scalar(Fraction(3), Fraction(1), 2).sign() == 1
        assert Scalar(Fraction(1), Fraction(-1), 2).sign() == -1  # 1 < sqrt2

    def test_rational_collapses_field_tag(self):
        # irr == 0 must normalize d to 1 so rationals are equal across documents
        assert Scalar(Fraction(1, 2), Fraction(0), 5) == Scalar(Fraction(1, 2))
        assert hash(Scalar(Fraction(1, 2), Fraction(0), 5)) == hash(
            Scalar(Fraction(1, 2), Fraction(0), 7)
        )

    def test_d_equal_one_folds(self):
        assert Scalar(Fraction(1), Fraction(2), 1) == Scalar(Fraction(3))

    def test_square_free_enforced(self):
        with pytest.raises(ValueError):
            Scalar(Fraction(0), Fraction(1), 4)
        with pytest.raises(ValueError):
            Scalar(Fraction(0), Fraction(1), 12)
        with pytest.raises(ValueError):
            Scalar(Fraction(0), Fraction(1), 0)


class TestSign:
    def test_mixed_sign_cross_multiplication(self):
        # 2 - sqrt2 > 0 because 4 > 2
        assert Scalar(Fraction(2), Fraction(-1), 2).sign() == 1
        # 1 - sqrt2 < 0 because 1 < 2
        assert Scalar(Fraction(1), Fraction(-1), 2).sign() == -1
        # -3 + 2*sqrt2 < 0 because 9 > 8
        assert Scalar(Fraction(-3), Fraction(2), 2).sign() == -1
        # -2 + 2*sqrt2 > 0 because 4 < 8
        assert Scalar(Fraction(-2), Fraction(2), 2).sign() == 1

    def test_golden_value_is_in_unit_interval(self):
        alpha = Scalar(Fraction(3, 2), Fraction(-1, 2), 5)  # (3 - sqrt5)/2
        assert ZERO < alpha < ONE
        assert alpha < Scalar(Fraction(1, 2))  # 0.381966... < 1/2

    @given(scalars(d=5), scalars(d=5))
    def test_total_order_trichotomy(self, a, b):
        assert (a < b) + (a == b) + (a > b) == 1


class TestParsing:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("3", Scalar(Fraction(3))),
            ("-1/2", Scalar(Fraction(-1, 2))),
            ("0", ZERO),
            ("3/2-1/2*sqrt5", Scalar(Fraction(3, 2), Fraction(-1, 2), 5)),
            ("3/2 - 1/2*sqrt5", Scalar(Fraction(3, 2), Fraction(-1, 2), 5)),
            ("sqrt2", Scalar(Fraction(0), Fraction(1), 2)),
            ("-sqrt2", Scalar(Fraction(0), Fraction(-1), 2)),
            ("1/2*sqrt5", Scalar(Fraction(0), Fraction(1, 2), 5)),
            ("-2+sqrt2", Scalar(Fraction(-2), Fraction(1), 2)),
            ("2+3*sqrt7", Scalar(Fraction(2), Fraction(3), 7)),
        ],
    )
    def test_accepted(self, text, expected):
        assert Scalar.parse(text) == expected

    @pytest.mark.parametrize(
        "text", ["", "0.5", "1e3", "sqrt4", "sqrt-2", "1/0", "x", "3+", "sqrt", "++sqrt2"]
    )
    def test_rejected(self, text):
        with pytest.raises(ParseError):
            Scalar.parse(text)

    @given(scalars())
    def test_str_round_trips(self, s):
        assert Scalar.parse(str(s)) == s


class TestArithmetic:
    def test_division_by_conjugate(self):
        a = S("1+sqrt2")
        assert a * (ONE / a) == ONE
        assert (a * a) / a == a

    def test_mixed_field_error(self):
        with pytest.raises(MixedFieldError):
            S("sqrt2") + S("sqrt5")
        # rationals mix with anything
        assert S("1/2") + S("sqrt5") == Scalar(Fraction(1, 2), Fraction(1), 5)

    def test_int_interop(self):
        assert S("sqrt2") * 2 == S("2*sqrt2")
        assert 1 - S("1/2") == S("1/2")

    @given(scalars(d=2), scalars(d=2), scalars(d=2))
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a

    @given(scalars(d=3))
    def test_sub_and_neg(self, a):
        assert a - a == ZERO
        assert a + (-a) == ZERO

    @given(scalars(d=5))
    def test_division_inverts(self, a):
        if not a.is_zero():
            assert (a / a) == ONE

    @given(scalars(d=2), scalars(d=2))
    def test_order_respects_addition(self, a, b):
        if a < b:
            assert a + ONE < b + ONE
            assert -b < -a
