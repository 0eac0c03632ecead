from fractions import Fraction

import pytest

from planecones.chern import ChernCharacter
from planecones.errors import DescentError, DomainError
from planecones.exceptional import (
    DyadicRational,
    delta_curve,
    delta_curve_at,
    dot,
    enumerate_slopes,
    epsilon,
    find_interval,
    from_dyadic,
    from_integer,
    from_slope_value,
    interval_contains,
    parents,
    slope_dot,
)
from planecones.qarith import QuadraticNumber, qn_compare_cross, sqrt_exact

F = Fraction


def dy(p, q):
    return DyadicRational.make(p, q)


class TestDyadic:
    def test_reduction(self):
        d = dy(6, 3)
        assert (d.p, d.q) == (3, 2)
        assert d.value == F(3, 4)
        assert d.order == 2

    def test_unreduced_rejected(self):
        with pytest.raises(DomainError):
            DyadicRational(4, 1)

    def test_non_dyadic_rejected(self):
        with pytest.raises(DomainError):
            DyadicRational.from_fraction(F(1, 3))

    def test_str(self):
        assert str(dy(-3, 0)) == "-3"
        assert str(dy(7, 6)) == "7/2^6"


class TestDot:
    def test_integers_midpoint(self):
        assert slope_dot(0, 1) == F(1, 2)

    def test_mediant_toward_lower_rank(self):
        assert slope_dot(0, F(1, 2)) == F(2, 5)

    def test_symmetric_integers(self):
        assert slope_dot(-1, 1) == 0

    def test_pole_rejected(self):
        with pytest.raises(DomainError):
            slope_dot(0, 3)

    def test_slope_objects(self):
        half = from_dyadic(dy(1, 1))
        result = dot(from_integer(0), half)
        assert result.slope == F(2, 5)
        assert result.dyadic == dy(1, 2)

    def test_non_adjacent_falls_back_to_descent(self):
        # 0 and 2/5 are not tree neighbours, yet their mediant is exceptional
        value = slope_dot(0, F(2, 5))
        resolved = dot(from_integer(0), from_slope_value(F(2, 5)))
        assert resolved.slope == value == F(5, 13)


class TestEpsilon:
    TABLE = {
        (0, 0): F(0),
        (1, 4): F(13, 34),
        (1, 3): F(5, 13),
        (3, 4): F(75, 194),
        (1, 2): F(2, 5),
        (5, 4): F(179, 433),
        (3, 3): F(12, 29),
        (7, 4): F(70, 169),
        (1, 1): F(1, 2),
    }

    def test_published_table(self):
        for (p, q), expected in self.TABLE.items():
            assert epsilon(dy(p, q)) == expected

    def test_monotone_order_seven(self):
        window = sorted(
            (dy(p, 7) for p in range(0, 129)), key=lambda d: d.value
        )
        slopes = [epsilon(d) for d in window]
        assert slopes == sorted(slopes)
        assert len(set(slopes)) == len(slopes)

    def test_translation_and_negation_order_six(self):
        for q in range(0, 7):
            for p in range(-(1 << q), (1 << q) + 1):
                d = dy(p, q)
                shifted = dy(p + (1 << q), q)
                assert epsilon(shifted) == epsilon(d) + 1
                assert epsilon(dy(-p, q)) == -epsilon(d)


class TestParents:
    def test_mediant_example(self):
        left, right = parents(from_slope_value(F(2, 5)))
        assert (left.slope, right.slope) == (0, F(1, 2))

    def test_integer_convention(self):
        left, right = parents(from_integer(0))
        assert (left.slope, right.slope) == (-1, 1)
        assert dot(left, right).slope == 0

    def test_translated_example(self):
        g = from_slope_value(F(22, 5))
        left, right = parents(g)
        assert (left.slope, right.slope) == (4, F(9, 2))
        assert dot(left, right).slope == F(22, 5)

    def test_dot_parents_identity_order_eight(self):
        for q in range(1, 9):
            for p in range(1, 1 << q, 2):
                g = from_dyadic(dy(p, q))
                assert dot(*parents(g)).slope == g.slope


class TestIntervals:
    def test_halfwidth_integers(self):
        x0 = from_integer(0).interval_halfwidth()
        assert qn_compare_cross(x0, (QuadraticNumber(3) - sqrt_exact(5)) / 2) == 0

    def test_halfwidth_half(self):
        xh = from_dyadic(dy(1, 1)).interval_halfwidth()
        assert qn_compare_cross(xh, (QuadraticNumber(3) - sqrt_exact(8)) / 2) == 0

    def test_halfwidth_two_fifths(self):
        x = from_slope_value(F(2, 5)).interval_halfwidth()
        assert qn_compare_cross(x, (QuadraticNumber(15) - sqrt_exact(221)) / 10) == 0
        assert 5 + 8 * from_slope_value(F(2, 5)).discriminant == F(221, 25)

    def test_contains_center(self):
        two = from_integer(2)
        assert interval_contains(two, QuadraticNumber(2), closed=False)
        assert interval_contains(two, QuadraticNumber(2), closed=True)

    def test_contains_golden_intersection(self):
        mu0 = (QuadraticNumber(-13) + sqrt_exact(181)) / 6
        assert interval_contains(from_integer(0), mu0, closed=False)

    def test_endpoint_only_in_closure(self):
        zero = from_integer(0)
        endpoint = (QuadraticNumber(3) - sqrt_exact(5)) / 2
        assert not interval_contains(zero, endpoint, closed=False)
        assert interval_contains(zero, endpoint, closed=True)

    def test_disjoint_up_to_order_six(self):
        slopes = enumerate_slopes(0, 1, 6)
        for a, b in zip(slopes, slopes[1:]):
            a_left, a_right = a.interval()
            b_left, b_right = b.interval()
            assert qn_compare_cross(a_right, b_left) <= 0


class TestFindInterval:
    def test_rational_center(self):
        assert find_interval(F(2)).slope == 2

    def test_golden_intersection(self):
        mu0 = (QuadraticNumber(-13) + sqrt_exact(181)) / 6
        assert find_interval(mu0).slope == 0

    def test_dual_intersection(self):
        mu0 = (QuadraticNumber(13) + sqrt_exact(181)) / 6
        assert find_interval(mu0).slope == F(22, 5)

    def test_negative_branch_descends_to_mirror(self):
        mu0_minus = (QuadraticNumber(-13) - sqrt_exact(181)) / 6
        assert find_interval(mu0_minus).slope == F(-22, 5)

    def test_fixed_points_order_eight(self):
        for q in range(0, 9):
            for p in range(0, (1 << q) + 1):
                g = from_dyadic(dy(p, q)) if q else from_integer(p)
                assert find_interval(g.slope).slope == g.slope

    def test_endpoint_ties_resolve_to_owner(self):
        for slope in (F(0), F(1, 2), F(2, 5)):
            g = from_slope_value(slope)
            left, right = g.interval()
            assert find_interval(left).slope == slope
            assert find_interval(right).slope == slope

    def test_budget_exceeded_raises(self):
        deep = epsilon(dy(1, 9))
        with pytest.raises(DescentError):
            find_interval(deep, max_order=5)


class TestDeltaCurve:
    def test_at_zero(self):
        assert delta_curve(F(0)) == 1

    def test_at_half(self):
        assert delta_curve(F(1, 2)) == F(5, 8)

    def test_translation_invariance(self):
        for mu in (F(1, 8), F(2, 5), F(3, 7)):
            assert delta_curve(mu + 1) == delta_curve(mu)
            assert delta_curve(-mu) == delta_curve(mu)

    def test_endpoints_symbolically_half_order_six(self):
        for s in enumerate_slopes(0, 1, 6):
            left, right = s.interval()
            for endpoint in (left, right):
                value = delta_curve_at(endpoint)
                assert qn_compare_cross(value, QuadraticNumber(F(1, 2))) == 0


class TestEnumerate:
    def test_published_table_with_orders(self):
        table = enumerate_slopes(0, F(1, 2), 4)
        got = [(s.slope, s.order) for s in table]
        assert got == [
            (F(0), 0),
            (F(13, 34), 4),
            (F(5, 13), 3),
            (F(75, 194), 4),
            (F(2, 5), 2),
            (F(179, 433), 4),
            (F(12, 29), 3),
            (F(70, 169), 4),
            (F(1, 2), 1),
        ]

    def test_integers_only(self):
        assert [s.slope for s in enumerate_slopes(0, 1, 0)] == [0, 1]

    def test_order_two(self):
        assert [s.slope for s in enumerate_slopes(0, F(1, 2), 2)] == [
            0,
            F(2, 5),
            F(1, 2),
        ]

    def test_empty_range_rejected(self):
        with pytest.raises(DomainError):
            enumerate_slopes(1, 0, 3)


class TestCharacter:
    def test_structure_sheaf(self):
        assert from_integer(0).character() == ChernCharacter.of(1, 0, 0)

    def test_half_is_twisted_tangent(self):
        g = from_dyadic(dy(1, 1))
        assert g.character() == ChernCharacter.of(2, 1, Fraction(-1, 2))
        assert g.discriminant == F(3, 8)
        assert g.character().discriminant() == F(3, 8)

    def test_two_fifths(self):
        g = from_slope_value(F(2, 5))
        assert g.character() == ChernCharacter.of(5, 2, -2)
        assert g.discriminant == F(12, 25)

    def test_rank_and_c1_coprime_order_six(self):
        import math

        for s in enumerate_slopes(-1, 1, 6):
            c1 = s.slope * s.rank
            assert c1.denominator == 1
            assert math.gcd(int(c1), s.rank) == 1


def test_from_slope_value_rejects_non_exceptional():
    with pytest.raises(DomainError):
        from_slope_value(F(1, 3))
