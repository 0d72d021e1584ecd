"""p-adic valuations, truncated values, and Riemann-sum convergence checks."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qbern import (
    INF,
    PadicParams,
    PadicValue,
    QContext,
    carlitz_poly,
    convergence_report,
    degenerate_qpoly,
    falling,
    kim_degenerate,
    riemann_sum_carlitz,
    riemann_sum_degenerate,
    riemann_sum_mu1,
    vp,
)

P5 = PadicParams(q=Fraction(6), p=5)


class TestValuation:
    def test_examples(self):
        assert vp(50, 5) == 2
        assert vp(Fraction(1, 5), 5) == -1
        assert vp(0, 5) == INF

    def test_unit(self):
        assert vp(Fraction(7, 3), 5) == 0

    @pytest.mark.parametrize("bad", [1, 2, 4, 9, 15])
    def test_rejects_non_odd_prime(self, bad):
        with pytest.raises(ValueError):
            vp(10, bad)

    @given(
        st.fractions(max_denominator=40).filter(lambda r: r != 0),
        st.fractions(max_denominator=40).filter(lambda r: r != 0),
    )
    def test_multiplicative(self, a, b):
        assert vp(a * b, 5) == vp(a, 5) + vp(b, 5)

    @given(st.fractions(max_denominator=40), st.fractions(max_denominator=40))
    def test_ultrametric(self, a, b):
        assert vp(a + b, 7) >= min(vp(a, 7), vp(b, 7))


class TestPadicValue:
    def test_zero(self):
        z = PadicValue.from_rational(0, 5)
        assert z.valuation == INF
        assert z.unit is None

    def test_from_rational_strips_powers(self):
        v = PadicValue.from_rational(50, 5, M=4)
        assert v.valuation == 2
        assert v.unit == 2

    def test_negative_valuation(self):
        v = PadicValue.from_rational(Fraction(3, 25), 5, M=3)
        assert v.valuation == -2
        assert v.unit == 3

    def test_unit_is_modular_inverse(self):
        # 1/3 mod 5^2: 3 * 17 = 51 = 2*25 + 1
        v = PadicValue.from_rational(Fraction(1, 3), 5, M=2)
        assert v.valuation == 0
        assert v.unit * 3 % 25 == 1

    @pytest.mark.parametrize(
        "r", [Fraction(50), Fraction(-7, 10), Fraction(1, 3), Fraction(123, 49)]
    )
    def test_reconstruction_invariant(self, r):
        p, M = 7, 6
        v = PadicValue.from_rational(r, p, M)
        assert v.valuation == vp(r, p)
        # unit recovers r / p^v modulo p^M
        residue = r / Fraction(p) ** v.valuation - v.unit
        assert vp(residue, p) >= M

    def test_rejects_unit_divisible_by_p(self):
        with pytest.raises(ValueError):
            PadicValue(5, 0, 10, 3)

    def test_rejects_unit_on_zero(self):
        with pytest.raises(ValueError):
            PadicValue(5, INF, 1, 3)

    def test_rejects_bad_precision(self):
        with pytest.raises(ValueError):
            PadicValue(5, 0, 1, 0)


class TestPadicParams:
    def test_defaults(self):
        assert (P5.p, P5.M, P5.Nmax, P5.lam) == (5, 12, 5, 0)

    def test_rejects_even_prime(self):
        with pytest.raises(ValueError):
            PadicParams(q=Fraction(3), p=2)

    def test_rejects_q_far_from_one(self):
        # 1 - 3 = -2 has 5-adic valuation 0
        with pytest.raises(ValueError):
            PadicParams(q=Fraction(3), p=5)

    def test_rejects_q_equal_one(self):
        with pytest.raises(ValueError):
            PadicParams(q=Fraction(1), p=5)

    def test_rejects_non_integral_lam(self):
        with pytest.raises(ValueError):
            PadicParams(q=Fraction(6), lam=Fraction(1, 5), p=5)

    def test_accepts_lam_multiple_of_p(self):
        params = PadicParams(q=Fraction(6), lam=Fraction(5), p=5)
        assert params.lam == 5


class TestCarlitzSums:
    def test_constant_integrand_is_exact(self):
        for N in (1, 2, 3):
            assert riemann_sum_carlitz(0, 0, P5, N) == 1

    @pytest.mark.parametrize("N", [1, 2])
    @pytest.mark.parametrize("n,x0", [(1, 0), (2, 1), (3, 2)])
    def test_matches_direct_loop(self, n, x0, N):
        # the closed-form moments must equal the sum written out literally
        q = P5.q
        count = 5**N
        bracket = lambda e: (1 - q**e) / (1 - q)
        direct = sum(bracket(x0 + y) ** n * q**y for y in range(count))
        direct /= bracket(count)
        assert riemann_sum_carlitz(n, x0, P5, N) == direct

    def test_first_moment_convergence(self):
        # the N-th sum approaches -1/(q+1) = -1/7 in the 5-adic metric
        target = Fraction(-1, 7)
        vals = [vp(riemann_sum_carlitz(1, 0, P5, N) - target, 5) for N in range(1, 6)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_shifted_argument_convergence(self):
        target = carlitz_poly(2, 1, QContext(Fraction(6)))
        vals = [vp(riemann_sum_carlitz(2, 1, P5, N) - target, 5) for N in range(1, 6)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_level_bounds(self):
        with pytest.raises(ValueError):
            riemann_sum_carlitz(1, 0, P5, 0)
        with pytest.raises(ValueError):
            riemann_sum_carlitz(1, 0, P5, 6)

    def test_rejects_bad_x0(self):
        with pytest.raises(ValueError):
            riemann_sum_carlitz(1, -1, P5, 1)
        with pytest.raises(ValueError):
            riemann_sum_carlitz(1, Fraction(1, 2), P5, 1)


class TestDegenerateSums:
    def test_zero_deformation_collapses(self):
        for n in range(5):
            assert riemann_sum_degenerate(n, 1, P5, 2) == riemann_sum_carlitz(n, 1, P5, 2)

    def test_first_factor_has_no_deformation(self):
        lam_params = PadicParams(q=Fraction(6), lam=Fraction(5), p=5)
        assert riemann_sum_degenerate(1, 0, lam_params, 2) == riemann_sum_carlitz(1, 0, P5, 2)

    @pytest.mark.parametrize("N", [1, 2])
    def test_matches_direct_loop(self, N):
        params = PadicParams(q=Fraction(6), lam=Fraction(1), p=5)
        q, lam = params.q, params.lam
        count = 5**N
        bracket = lambda e: (1 - q**e) / (1 - q)
        direct = Fraction(0)
        for y in range(count):
            term = Fraction(1)
            for i in range(3):
                term *= bracket(1 + y) - i * lam
            direct += term * q**y
        direct /= bracket(count)
        assert riemann_sum_degenerate(3, 1, params, N) == direct

    def test_convergence_to_transform_value(self):
        params = PadicParams(q=Fraction(6), lam=Fraction(5), p=5)
        target = degenerate_qpoly(2, 0, Fraction(5), QContext(Fraction(6)))
        vals = [
            vp(riemann_sum_degenerate(2, 0, params, N) - target, 5) for N in range(1, 6)
        ]
        assert all(b > a for a, b in zip(vals, vals[1:]))


class TestUniformSums:
    def test_constant(self):
        assert riemann_sum_mu1(0, 0, Fraction(1), 5, 2) == 1

    def test_linear_closed_form(self):
        # sum of x0 + y over y < c is c*x0 + c(c-1)/2
        for N in (1, 2, 3):
            c = 5**N
            expected = Fraction(c * 2) + Fraction(c * (c - 1), 2)
            assert riemann_sum_mu1(1, 2, Fraction(3), 5, N) == expected / c

    def test_first_moment_tends_to_minus_half(self):
        # S_N + 1/2 = p^N/2 exactly, so the valuation is exactly N
        for lam in (Fraction(0), Fraction(1), Fraction(7)):
            for N in (1, 2, 3):
                diff = riemann_sum_mu1(1, 0, lam, 5, N) - Fraction(-1, 2)
                assert vp(diff, 5) == N

    def test_convergence_to_series_value(self):
        target = kim_degenerate(2, 0, Fraction(1))
        vals = [vp(riemann_sum_mu1(2, 0, Fraction(1), 5, N) - target, 5) for N in range(1, 6)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_integer_and_rational_paths_agree(self):
        a = riemann_sum_mu1(3, 2, Fraction(1), 5, 2)
        b = riemann_sum_mu1(3, Fraction(2), Fraction(1), 5, 2)
        assert a == b
        # genuinely fractional (but p-integral) inputs run the generic path
        c = riemann_sum_mu1(2, Fraction(1, 2), Fraction(1, 3), 5, 1)
        direct = sum(
            (Fraction(1, 2) + y) * (Fraction(1, 2) + y - Fraction(1, 3))
            for y in range(5)
        )
        assert c == direct / 5

    def test_rejects_non_integral_inputs(self):
        with pytest.raises(ValueError):
            riemann_sum_mu1(1, Fraction(1, 5), Fraction(0), 5, 1)
        with pytest.raises(ValueError):
            riemann_sum_mu1(1, 0, Fraction(1, 10), 5, 1)


class TestConvergenceReport:
    def test_rows_carry_levels_and_valuations(self):
        sums = [(1, Fraction(26, 25)), (2, Fraction(126, 125))]
        rows, ok = convergence_report(Fraction(1), sums, 5)
        assert rows == [(1, -2), (2, -3)]
        assert not ok

    def test_exact_hit_is_infinite(self):
        sums = [(1, Fraction(3)), (2, Fraction(3, 1))]
        rows, ok = convergence_report(Fraction(3), sums, 5)
        assert [v for _, v in rows] == [INF, INF]
        assert ok

    def test_strict_growth_passes(self):
        sums = [(N, Fraction(2) + Fraction(5) ** N) for N in range(1, 6)]
        rows, ok = convergence_report(Fraction(2), sums, 5)
        assert [v for _, v in rows] == [1, 2, 3, 4, 5]
        assert ok

    def test_wrong_target_is_detected(self):
        # valuations stabilize at v_p(limit - wrong_target): no growth
        sums = [(N, Fraction(2) + Fraction(5) ** N) for N in range(1, 6)]
        rows, ok = convergence_report(Fraction(3), sums, 5)
        assert [v for _, v in rows] == [0, 0, 0, 0, 0]
        assert not ok

    def test_decreasing_valuation_fails(self):
        sums = [(1, Fraction(2 + 25)), (2, Fraction(2 + 5))]
        _, ok = convergence_report(Fraction(2), sums, 5)
        assert not ok

    def test_low_level_plateau_is_accepted(self):
        # shape that the true degenerate sequences produce: one early tie
        sums = [
            (1, Fraction(2) + Fraction(125)),
            (2, Fraction(2) + Fraction(250)),
            (3, Fraction(2) + Fraction(5) ** 4),
            (4, Fraction(2) + Fraction(5) ** 5),
            (5, Fraction(2) + Fraction(5) ** 6),
        ]
        rows, ok = convergence_report(Fraction(2), sums, 5)
        assert [v for _, v in rows] == [3, 3, 4, 5, 6]
        assert ok

    def test_interior_exact_hit_is_skipped(self):
        sums = [
            (1, Fraction(2)),
            (2, Fraction(2) + Fraction(125)),
            (3, Fraction(2) + Fraction(5) ** 4),
            (4, Fraction(2) + Fraction(5) ** 5),
        ]
        rows, ok = convergence_report(Fraction(2), sums, 5)
        assert [v for _, v in rows] == [INF, 3, 4, 5]
        assert ok

    def test_tail_stall_fails_even_after_growth(self):
        sums = [
            (1, Fraction(2) + Fraction(5)),
            (2, Fraction(2) + Fraction(25)),
            (3, Fraction(2) + Fraction(25) * 2),
        ]
        _, ok = convergence_report(Fraction(2), sums, 5)
        assert not ok


class TestMomentIdentity:
    @given(
        st.fractions(min_value=Fraction(-8), max_value=Fraction(8), max_denominator=9),
        st.fractions(min_value=Fraction(-8), max_value=Fraction(8), max_denominator=9).filter(
            lambda r: r != 0
        ),
        st.integers(min_value=0, max_value=8),
    )
    def test_scaled_falling_factorial(self, z, lam, n):
        # the division-free product form agrees with the falling factorial
        product = Fraction(1)
        for i in range(n):
            product *= z - i * lam
        assert product == lam**n * falling(z / lam, n)
