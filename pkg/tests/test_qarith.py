from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from planecones.errors import DomainError
from planecones.qarith import (
    QuadraticNumber,
    format_rational,
    parse_rational,
    qn_compare_cross,
    qn_sign,
    sqrt_exact,
    squarefree_decompose,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=40)
small_nonneg = st.fractions(min_value=0, max_value=50, max_denominator=40)


def qn(a, b=0, d=0):
    return QuadraticNumber(Fraction(a), Fraction(b), d)


class TestSqrtExact:
    def test_perfect_square_is_rational(self):
        root = sqrt_exact(49)
        assert root.is_rational and root.rational_value() == 7

    def test_irreducible_radicand(self):
        root = sqrt_exact(5)
        assert (root.a, root.b, root.d) == (0, 1, 5)

    def test_square_denominator_folds_out(self):
        root = sqrt_exact(Fraction(181, 9))
        assert (root.a, root.b, root.d) == (0, Fraction(1, 3), 181)

    def test_negative_input_rejected(self):
        with pytest.raises(DomainError):
            sqrt_exact(-1)

    @given(small_nonneg)
    def test_square_round_trip(self, x):
        root = sqrt_exact(x)
        assert (root * root).rational_value() == x

    @given(small_nonneg, small_nonneg)
    def test_scaling_by_squares(self, p, q):
        assert qn_compare_cross(sqrt_exact(p * p * q), sqrt_exact(q) * p) == 0


class TestSquarefree:
    @given(st.integers(min_value=0, max_value=10 ** 6))
    def test_decomposition_identity(self, n):
        s, d = squarefree_decompose(n)
        assert s * s * d == n

    def test_large_prime_square_collapses(self):
        p = 1_000_003  # prime beyond the trial-division bound
        s, d = squarefree_decompose(p * p)
        assert (s, d) == (p, 1)


class TestSign:
    def test_zero(self):
        assert qn_sign(qn(0)) == 0

    def test_sqrt5_below_three(self):
        assert qn_sign(qn(-3, 1, 5)) == -1

    def test_sqrt181_above_thirteen_is_positive(self):
        assert qn_sign(qn(-13, 1, 181)) == 1

    def test_exact_cancellation(self):
        assert qn_sign(qn(-7) + sqrt_exact(49)) == 0


class TestCompare:
    def test_same_shape_different_radicand(self):
        x = (qn(3) - sqrt_exact(5)) / 2
        y = (qn(3) - sqrt_exact(8)) / 2
        assert qn_compare_cross(x, y) > 0

    def test_cross_field(self):
        x = (qn(-13) + sqrt_exact(181)) / 6
        y = (qn(3) - sqrt_exact(5)) / 2
        assert qn_compare_cross(x, y) < 0

    def test_equal_rationals(self):
        assert qn_compare_cross(qn(2), qn(2)) == 0

    @given(rationals, st.integers(min_value=2, max_value=200), rationals,
           st.integers(min_value=2, max_value=200))
    def test_consistent_with_decimal_enclosures(self, b1, d1, b2, d2):
        x = qn(0, b1, d1)
        y = qn(0, b2, d2)
        cmp = qn_compare_cross(x, y)
        xlo, xhi = x.bounds(40)
        ylo, yhi = y.bounds(40)
        if cmp == 0:
            assert xlo <= yhi and ylo <= xhi
        elif cmp < 0:
            assert xlo < yhi
        else:
            assert xhi > ylo

    def test_ordering_dunders(self):
        values = [qn(0, 1, 2), qn(1), qn(0, 1, 3), Fraction(7, 5)]
        ordered = sorted(values[:3] + [QuadraticNumber(values[3])])
        floats = [float(v) for v in ordered]
        assert floats == sorted(floats)


class TestArithmetic:
    def test_mixed_field_addition_rejected(self):
        with pytest.raises(DomainError):
            sqrt_exact(2) + sqrt_exact(3)

    def test_division_by_zero_rejected(self):
        with pytest.raises(DomainError):
            sqrt_exact(2) / qn(0)

    def test_same_field_division(self):
        x = qn(1, 1, 5)
        assert (x / x).rational_value() == 1

    def test_negative_radicand_rejected(self):
        with pytest.raises(DomainError):
            QuadraticNumber(0, 1, -5)

    @given(rationals, rationals, st.integers(min_value=0, max_value=100))
    def test_sub_is_add_neg(self, a, b, d):
        x = qn(a, b, d)
        y = qn(b, a, d)
        assert qn_compare_cross(x - y, x + (-y)) == 0

    def test_floor(self):
        assert sqrt_exact(2).floor() == 1
        assert (-sqrt_exact(2)).floor() == -2
        assert qn(3).floor() == 3
        assert ((qn(-13) + sqrt_exact(181)) / 6).floor() == 0


class TestSerialization:
    @given(rationals, rationals, st.integers(min_value=0, max_value=300))
    def test_round_trip_bit_exact(self, a, b, d):
        x = qn(a, b, d)
        y = QuadraticNumber.parse(str(x))
        assert (x.a, x.b, x.d) == (y.a, y.b, y.d)

    def test_rational_strings(self):
        assert format_rational(Fraction(-13, 6)) == "-13/6"
        assert format_rational(Fraction(7)) == "7"
        assert parse_rational("-13/6") == Fraction(-13, 6)
        assert parse_rational("7") == 7

    def test_bad_literals_rejected(self):
        with pytest.raises(DomainError):
            parse_rational("1.5x")
        with pytest.raises(DomainError):
            QuadraticNumber.parse("sqrt(5)")

    def test_canonical_form_examples(self):
        assert str(sqrt_exact(Fraction(181, 9))) == "(0 + 1/3*sqrt(181))"
        assert str(qn(Fraction(5, 2))) == "(5/2 + 0*sqrt(0))"


def test_decimal_rendering():
    assert sqrt_exact(2).decimal(5) == "1.41421"
    assert (-sqrt_exact(2)).decimal(4) == "-1.4142"
    assert qn(Fraction(1, 4)).decimal(3) == "0.250"


def test_transitivity_spot_check():
    values = [
        (qn(3) - sqrt_exact(5)) / 2,
        (qn(-13) + sqrt_exact(181)) / 6,
        sqrt_exact(Fraction(1, 7)),
        qn(Fraction(2, 5)),
        (qn(3) - sqrt_exact(8)) / 2,
    ]
    ordered = sorted(values)
    for i in range(len(ordered) - 1):
        assert qn_compare_cross(ordered[i], ordered[i + 1]) <= 0
    for i in range(len(ordered) - 2):
        if qn_compare_cross(ordered[i], ordered[i + 1]) < 0 and qn_compare_cross(
            ordered[i + 1], ordered[i + 2]
        ) < 0:
            assert qn_compare_cross(ordered[i], ordered[i + 2]) < 0
