"""Exact rational helpers: binomials, Stirling numbers, rational functions."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qbern import (
    PoleError,
    RatFuncQ,
    as_rational,
    binom,
    falling,
    rat_str,
    ratfunc_limit,
    stirling1,
)


rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=20
)


class TestAsRational:
    def test_int_passthrough(self):
        assert as_rational(7) == Fraction(7)

    def test_string_form(self):
        assert as_rational("-3/4") == Fraction(-3, 4)

    def test_fraction_identity(self):
        x = Fraction(5, 6)
        assert as_rational(x) == x

    def test_rejects_float(self):
        with pytest.raises(TypeError):
            as_rational(0.5)

    @given(rationals)
    def test_rat_str_round_trip(self, x):
        assert as_rational(rat_str(x)) == x

    def test_rat_str_always_has_slash(self):
        assert rat_str(Fraction(3)) == "3/1"
        assert rat_str(Fraction(-1, 2)) == "-1/2"


class TestBinom:
    def test_integer_case(self):
        assert binom(4, 2) == 6

    def test_k_zero_is_one(self):
        assert binom(Fraction(9, 7), 0) == 1

    def test_rational_upper_index(self):
        assert binom(Fraction(1, 2), 2) == Fraction(-1, 8)

    def test_negative_k_rejected(self):
        with pytest.raises(ValueError):
            binom(5, -1)

    @given(rationals, st.integers(min_value=1, max_value=12))
    def test_pascal_rule(self, x, k):
        assert binom(x, k) == binom(x - 1, k - 1) + binom(x - 1, k)


class TestStirlingFirstKind:
    def test_known_values(self):
        assert stirling1(3, 1) == 2
        assert stirling1(3, 2) == -3
        assert stirling1(4, 2) == 11

    def test_diagonal(self):
        for n in range(9):
            assert stirling1(n, n) == 1

    def test_out_of_range(self):
        assert stirling1(3, 5) == 0
        assert stirling1(3, -1) == 0
        assert stirling1(0, 0) == 1

    @given(rationals, st.integers(min_value=0, max_value=12))
    def test_generating_identity(self, z, n):
        # sum_m S1(n, m) z^m reproduces the falling factorial
        total = sum(stirling1(n, m) * z**m for m in range(n + 1))
        assert total == falling(z, n)


class TestFalling:
    def test_integer_example(self):
        assert falling(5, 3) == 60

    def test_rational_example(self):
        assert falling(Fraction(1, 2), 2) == Fraction(-1, 4)

    def test_empty_product(self):
        assert falling(Fraction(22, 7), 0) == 1

    def test_rejects_negative_length(self):
        with pytest.raises(ValueError):
            falling(3, -1)


class TestRatFuncQ:
    def test_limit_of_removable_singularity(self):
        f = RatFuncQ((1, 0, -1), (1, -1))  # (1 - q^2) / (1 - q)
        assert ratfunc_limit(f, 1) == 2

    def test_pole_raises(self):
        g = RatFuncQ((1,), (-1, 1))  # 1 / (q - 1)
        with pytest.raises(PoleError):
            ratfunc_limit(g, 1)

    def test_limit_at_regular_point_is_evaluation(self):
        f = RatFuncQ((1, 2), (3, 0, 1))
        a = Fraction(1, 3)
        assert ratfunc_limit(f, a) == f(a)

    def test_normalization_collapses_common_factor(self):
        # (q^2 - 1)/(q - 1) and (q + 1)/1 are the same function
        f = RatFuncQ((-1, 0, 1), (-1, 1))
        g = RatFuncQ((1, 1), (1,))
        assert f == g

    @given(rationals)
    def test_evaluation_commutes_with_product(self, a):
        f = RatFuncQ((1, -2), (1, 0, 3))
        g = RatFuncQ((0, 1, 1), (2, 5))
        h = f * g
        assert h(a) == f(a) * g(a)

    @given(rationals)
    def test_evaluation_commutes_with_sum(self, a):
        f = RatFuncQ((1, 1), (1, 0, 1))
        g = RatFuncQ((3,), (1, 2))
        assert (f + g)(a) == f(a) + g(a)

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            RatFuncQ((1,), (0,))
