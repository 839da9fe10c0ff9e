"""Exact identity layer: zero-tolerance rational assertions plus the bridge
between the exact and numeric routes."""
from fractions import Fraction as F

import pytest

from fejerlab.apnum import ApFloat, NumPoly, pi, pow2, sin, to_apfloat
from fejerlab.hermite import derivative_sum, hermite_fejer_basis, scaled_tolerance
from fejerlab.identities import (
    inverse_power_sum,
    midpoint_second_derivative,
    second_derivative_balance,
    sin2_charpoly,
    verify_cosecant_sum,
)
from fejerlab.knots import chebyshev1_knots
from fejerlab.ratpoly import NotOdd, RatPoly


class TestSin2Charpoly:
    def test_n3(self):
        # T_3 = x(4x^2 - 3), so W = 4y - 3 with root 3/4 = sin^2(pi/3)
        w = sin2_charpoly(3)
        assert w == RatPoly([-3, 4])
        assert w.evaluate(F(3, 4)) == 0

    def test_n5(self):
        assert sin2_charpoly(5) == RatPoly([5, -20, 16])

    @pytest.mark.parametrize("n", [3, 5, 9, 15, 33])
    def test_degree(self, n):
        assert sin2_charpoly(n).degree == (n - 1) // 2

    @pytest.mark.parametrize("n", [5, 9, 15])
    def test_roots_are_sin_squares(self, n):
        w = NumPoly.from_ratpoly(sin2_charpoly(n), 256)
        scale = max(abs(c) for c in sin2_charpoly(n).coeffs)
        tol = to_apfloat(scale, 256) * pow2(40 - 256, 256)
        pi_n = pi(256) / n
        for k in range(1, (n - 1) // 2 + 1):
            s = sin(pi_n * k)
            root = s * s
            assert ApFloat(0, 256) < root < ApFloat(1, 256)
            assert abs(w.evaluate(root)) <= tol

    def test_even_rejected(self):
        with pytest.raises(NotOdd):
            sin2_charpoly(4)

    def test_too_small_rejected(self):
        with pytest.raises(ValueError):
            sin2_charpoly(1)


class TestInversePowerSum:
    def test_hand_values(self):
        assert inverse_power_sum(3, 1) == F(4, 3)  # 1/sin^2(pi/3)
        assert inverse_power_sum(5, 1) == 4  # (25-1)/3 halved
        assert inverse_power_sum(3, 2) == F(16, 9)  # (4/3)^2, single term

    def test_positive(self):
        for n in (3, 7, 13):
            for m in (1, 2, 3):
                assert inverse_power_sum(n, m) > 0

    def test_m_validation(self):
        with pytest.raises(ValueError):
            inverse_power_sum(3, 0)

    @pytest.mark.parametrize("n", range(3, 52, 2))
    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_exact_numeric_bridge(self, n, m):
        # directly summed sin powers at 256 bits agree with the exact value
        bits = 256
        pi_n = pi(bits) / n
        one = ApFloat(1, bits)
        terms = []
        for k in range(1, (n - 1) // 2 + 1):
            s = sin(pi_n * k)
            p = s * s
            for _ in range(m - 1):
                p = p * s * s
            terms.append(one / p)
        total = terms[0]
        for t in terms[1:]:
            total = total + t
        tol = scaled_tolerance(terms, bits)
        assert abs(total - to_apfloat(inverse_power_sum(n, m), bits)) <= tol


class TestCosecantSum:
    def test_n3(self):
        report = verify_cosecant_sum(3)
        assert report.lhs == report.rhs == F(8, 3)
        assert report.holds
        assert report.witness == RatPoly([-3, 4])

    def test_n5(self):
        report = verify_cosecant_sum(5)
        assert report.lhs == report.rhs == 8
        assert report.holds

    def test_even_rejected(self):
        with pytest.raises(NotOdd):
            verify_cosecant_sum(4)

    @pytest.mark.parametrize("n", range(3, 52, 2))
    def test_holds_exactly(self, n):
        report = verify_cosecant_sum(n)
        assert report.holds and report.lhs == F(n * n - 1, 3)


class TestMidpointSecondDerivative:
    def test_small_cases(self):
        assert midpoint_second_derivative(3) == F(-16, 3)
        assert midpoint_second_derivative(5) == -16

    @pytest.mark.parametrize("n", range(3, 32, 2))
    def test_closed_form(self, n):
        assert midpoint_second_derivative(n) == F(2, 3) * (1 - n * n)

    def test_matches_numeric_middle_term(self):
        bits = 256
        basis = hermite_fejer_basis(chebyshev1_knots(3, bits))
        _, terms = derivative_sum(basis, 2, ApFloat(0, bits))
        exact = to_apfloat(midpoint_second_derivative(3), bits)
        assert abs(terms[1] - exact) <= scaled_tolerance(terms, bits)


class TestBalance:
    def test_n3(self):
        assert second_derivative_balance(3) == (F(16, 3), F(-16, 3))

    def test_n5(self):
        assert second_derivative_balance(5) == (16, -16)

    @pytest.mark.parametrize("n", list(range(3, 32, 2)) + [99])
    def test_sums_to_zero_exactly(self, n):
        off, mid = second_derivative_balance(n)
        assert off + mid == 0

    def test_offcenter_matches_derivative_sum_terms(self):
        # numeric confirmation of the same split at 256 bits
        bits = 256
        n = 7
        basis = hermite_fejer_basis(chebyshev1_knots(n, bits))
        _, terms = derivative_sum(basis, 2, ApFloat(0, bits))
        off_numeric = sum(terms[:3] + terms[4:], ApFloat(0, bits))
        off_exact, _ = second_derivative_balance(n)
        assert abs(off_numeric - to_apfloat(off_exact, bits)) <= scaled_tolerance(terms, bits)
