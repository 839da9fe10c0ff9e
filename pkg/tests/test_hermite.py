"""Fundamental-polynomial construction: hand-built exact oracles, the
cardinality conditions, and the vanishing derivative sums."""
from fractions import Fraction as F

import pytest

from fejerlab.apnum import ApFloat, NumPoly, max_abs, pow2, to_apfloat
from fejerlab.hermite import (
    LengthMismatch,
    chebyshev_closed_form,
    derivative_sum,
    hermite_fejer_basis,
    interpolate,
    lagrange_basis,
    scaled_tolerance,
)
from fejerlab.knots import (
    chebyshev1_knots,
    chebyshev2_knots,
    equispaced_knots,
    gauss_jacobi_knots,
    make_knots,
)
from fejerlab.ratpoly import RatPoly

BITS = 256

SAMPLE_KNOTS = [
    chebyshev1_knots(7, BITS),
    chebyshev2_knots(6, BITS),
    equispaced_knots(5, F(-1), F(1), BITS),
    gauss_jacobi_knots(5, F(1, 2), F(1, 3), BITS),
]


def coeff_tolerance(polys, bits=BITS):
    coeffs = [c for p in polys for c in p.coefficients()]
    return scaled_tolerance(coeffs, bits)


def assert_poly_close(numeric: NumPoly, exact: RatPoly, tol):
    assert numeric.degree <= max(exact.degree, numeric.degree)
    for k in range(max(numeric.degree, exact.degree) + 1):
        target = exact.coeffs[k] if k <= exact.degree else F(0)
        assert abs(numeric.coefficient(k) - ApFloat(target, BITS)) <= tol


class TestLagrangeBasis:
    def test_two_knots_by_hand(self):
        knots = equispaced_knots(2, F(-1), F(1), BITS)
        l1, l2 = lagrange_basis(knots)
        tol = pow2(-240, BITS)
        assert_poly_close(l1, RatPoly([F(1, 2), F(-1, 2)]), tol)
        assert_poly_close(l2, RatPoly([F(1, 2), F(1, 2)]), tol)

    def test_three_knots_middle(self):
        knots = equispaced_knots(3, F(-1), F(1), BITS)
        basis = lagrange_basis(knots)
        assert_poly_close(basis[1], RatPoly([1, 0, -1]), pow2(-240, BITS))

    @pytest.mark.parametrize("knots", SAMPLE_KNOTS, ids=lambda k: k.family)
    def test_partition_of_unity(self, knots):
        basis = lagrange_basis(knots)
        total = basis[0]
        for l in basis[1:]:
            total = total + l
        tol = coeff_tolerance(basis)
        assert abs(total.coefficient(0) - 1) <= tol
        for k in range(1, total.degree + 1):
            assert abs(total.coefficient(k)) <= tol

    @pytest.mark.parametrize("knots", SAMPLE_KNOTS, ids=lambda k: k.family)
    def test_cardinality(self, knots):
        basis = lagrange_basis(knots)
        tol = pow2(40 - BITS, BITS)
        for i, l in enumerate(basis):
            for j, x in enumerate(knots.points):
                expect = 1 if i == j else 0
                assert abs(l.evaluate(x) - expect) <= tol

    def test_against_product_of_differences_oracle(self):
        # independent route: omega'(x_i) as the product of knot differences
        knots = chebyshev1_knots(5, BITS)
        basis = lagrange_basis(knots)
        wp = basis[0].precision_bits
        one = ApFloat(1, wp)
        for i, x_i in enumerate(knots.points):
            numerator = NumPoly([one], wp)
            denom = one
            for j, x_j in enumerate(knots.points):
                if j != i:
                    numerator = numerator * NumPoly([-x_j, one], wp)
                    denom = denom * (x_i - x_j)
            oracle = numerator.scale(one / denom)
            diff = basis[i] - oracle
            tol = coeff_tolerance([oracle])
            assert all(abs(c) <= tol for c in diff.coefficients())


class TestHermiteFejerBasis:
    def test_two_knots_by_hand(self):
        # l_1 = (1-x)/2, l_1'(-1) = -1/2, so h_1 = (1-x)^2 (x+2) / 4
        knots = equispaced_knots(2, F(-1), F(1), BITS)
        basis = hermite_fejer_basis(knots)
        expected_h1 = RatPoly([F(1, 2), F(-3, 4), 0, F(1, 4)])
        expected_h2 = RatPoly([F(1, 2), F(3, 4), 0, F(-1, 4)])
        tol = pow2(-240, BITS)
        assert_poly_close(basis.h[0], expected_h1, tol)
        assert_poly_close(basis.h[1], expected_h2, tol)
        # the four cardinality conditions as oracle
        minus1, plus1 = to_apfloat(F(-1), BITS), to_apfloat(F(1), BITS)
        assert abs(basis.h[0].evaluate(minus1) - 1) <= tol
        assert abs(basis.h[0].evaluate(plus1)) <= tol
        assert abs(basis.h[0].derivative().evaluate(minus1)) <= tol
        assert abs(basis.h[0].derivative().evaluate(plus1)) <= tol

    @pytest.mark.parametrize("knots", SAMPLE_KNOTS, ids=lambda k: k.family)
    def test_cardinality_and_flat_derivative(self, knots):
        basis = hermite_fejer_basis(knots)
        tol = pow2(40 - BITS, BITS)
        for i, h in enumerate(basis.h):
            dh = h.derivative()
            for j, x in enumerate(knots.points):
                expect = 1 if i == j else 0
                assert abs(h.evaluate(x) - expect) <= tol
                assert abs(dh.evaluate(x)) <= tol

    @pytest.mark.parametrize("knots", SAMPLE_KNOTS, ids=lambda k: k.family)
    def test_partition_of_unity(self, knots):
        basis = hermite_fejer_basis(knots)
        total = basis.h[0]
        for h in basis.h[1:]:
            total = total + h
        tol = coeff_tolerance(basis.h)
        assert abs(total.coefficient(0) - 1) <= tol
        for k in range(1, total.degree + 1):
            assert abs(total.coefficient(k)) <= tol

    @pytest.mark.parametrize("knots", SAMPLE_KNOTS, ids=lambda k: k.family)
    def test_degree_bound(self, knots):
        basis = hermite_fejer_basis(knots)
        assert all(h.degree <= 2 * knots.n - 1 for h in basis.h)

    def test_value_at_own_knot(self):
        basis = hermite_fejer_basis(chebyshev1_knots(4, BITS))
        tol = pow2(40 - BITS, BITS)
        for i, x in enumerate(basis.knots.points):
            assert abs(basis.h[i].evaluate(x) - 1) <= tol

    def test_middle_knot_degree_drop(self):
        # odd-n Chebyshev: l_mid'(0) = 0 by symmetry, so h_mid loses its top term
        basis = hermite_fejer_basis(chebyshev1_knots(7, BITS))
        mid = basis.h[3]
        scale = max_abs(mid.coefficients())
        top = mid.coefficient(2 * 7 - 1)
        assert abs(top) <= scale * pow2(40 - BITS, BITS)


class TestClosedForm:
    def test_n1_constant(self):
        basis = chebyshev_closed_form(1, BITS)
        assert basis.h[0].degree == 0
        assert abs(basis.h[0].coefficient(0) - 1) <= pow2(-240, BITS)

    @pytest.mark.parametrize("n", [3, 4, 8])
    def test_agrees_with_general_construction(self, n):
        general = hermite_fejer_basis(chebyshev1_knots(n, BITS))
        closed = chebyshev_closed_form(n, BITS)
        assert closed.construction == "chebyshev_closed_form"
        for hg, hc in zip(general.h, closed.h):
            tol = coeff_tolerance([hg, hc])
            diff = hg - hc
            assert all(abs(c) <= tol for c in diff.coefficients())

    def test_partition_of_unity_at_random_point(self):
        basis = chebyshev_closed_form(8, BITS)
        x = to_apfloat(F(4179, 10000), BITS)
        total = basis.h[0].evaluate(x)
        for h in basis.h[1:]:
            total = total + h.evaluate(x)
        assert abs(total - 1) <= pow2(40 - BITS, BITS)


class TestInterpolate:
    def test_constants_are_reproduced(self):
        basis = hermite_fejer_basis(chebyshev1_knots(6, BITS))
        c = to_apfloat(F(22, 7), BITS)
        values = [c] * 6
        for xq in (F(0), F(3, 10), F(-9, 10), F(2)):
            out = interpolate(basis, values, to_apfloat(xq, BITS))
            assert abs(out - c) <= abs(c) * pow2(40 - BITS, BITS)

    def test_knot_values_are_reproduced(self):
        knots = chebyshev2_knots(5, BITS)
        basis = hermite_fejer_basis(knots)
        values = [x * x for x in knots.points]  # f(x) = x^2 samples
        tol = pow2(40 - BITS, BITS)
        for j, x in enumerate(knots.points):
            assert abs(interpolate(basis, values, x) - values[j]) <= tol

    def test_two_evaluation_paths_agree(self):
        # sum h_i(x) x_i vs assembling the polynomial sum h_i * x_i first
        knots = chebyshev1_knots(5, BITS)
        basis = hermite_fejer_basis(knots)
        x = to_apfloat(F(3, 10), BITS)
        direct = interpolate(basis, list(knots.points), x)
        assembled = basis.h[0].scale(knots.points[0])
        for h, xi in zip(basis.h[1:], knots.points[1:]):
            assembled = assembled + h.scale(xi)
        assert abs(direct - assembled.evaluate(x)) <= pow2(36 - BITS, BITS)

    def test_length_mismatch(self):
        basis = hermite_fejer_basis(chebyshev1_knots(4, BITS))
        with pytest.raises(LengthMismatch):
            interpolate(basis, [ApFloat(1, BITS)] * 3, ApFloat(0, BITS))


class TestDerivativeSum:
    def test_chebyshev3_term_vector(self):
        # h''(0) = 2/x_i^2 = 8/3 off center, (2/3)(1-9) = -16/3 in the middle
        basis = hermite_fejer_basis(chebyshev1_knots(3, BITS))
        residual, terms = derivative_sum(basis, 2, ApFloat(0, BITS))
        tol = scaled_tolerance(terms, BITS)
        for term, expect in zip(terms, [F(8, 3), F(-16, 3), F(8, 3)]):
            assert abs(term - ApFloat(expect, BITS)) <= tol
        assert abs(residual) <= tol

    def test_first_derivative_vanishes_at_knots(self):
        basis = hermite_fejer_basis(chebyshev1_knots(5, BITS))
        for j, x in enumerate(basis.knots.points):
            _, terms = derivative_sum(basis, 1, x)
            assert abs(terms[j]) <= pow2(40 - BITS, BITS)

    @pytest.mark.parametrize("p", [12, 20])
    def test_beyond_degree_all_zero(self, p):
        basis = hermite_fejer_basis(chebyshev1_knots(3, BITS))  # deg <= 5
        residual, terms = derivative_sum(basis, p, to_apfloat(F(3, 10), BITS))
        assert residual.is_zero()
        assert all(t.is_zero() for t in terms)

    def test_p_zero_rejected(self):
        basis = hermite_fejer_basis(chebyshev1_knots(3, BITS))
        with pytest.raises(ValueError):
            derivative_sum(basis, 0, ApFloat(0, BITS))

    @pytest.mark.parametrize(
        "family,kwargs",
        [
            ("chebyshev1", {}),
            ("chebyshev2", {}),
            ("equispaced", {}),
            ("gauss_jacobi", {"alpha": F(0), "beta": F(0)}),
        ],
    )
    @pytest.mark.parametrize("n", [2, 5, 9])
    def test_residual_below_tolerance_smoke(self, family, kwargs, n):
        basis = hermite_fejer_basis(make_knots(family, n, BITS, **kwargs))
        for p in (1, 3, 5):
            for y0 in (F(0), F(3, 10), F(2)):
                residual, terms = derivative_sum(basis, p, to_apfloat(y0, BITS))
                assert abs(residual) <= scaled_tolerance(terms, BITS)

    @pytest.mark.parametrize("n", [3, 7, 11])
    def test_origin_symmetry_odd_chebyshev(self, n):
        basis = hermite_fejer_basis(chebyshev1_knots(n, BITS))
        _, terms = derivative_sum(basis, 2, ApFloat(0, BITS))
        tol = scaled_tolerance(terms, BITS)
        for i in range(n):
            assert abs(terms[i] - terms[n - 1 - i]) <= tol

    def test_derivative_ladder_is_cached(self):
        basis = hermite_fejer_basis(chebyshev1_knots(4, BITS))
        derivative_sum(basis, 3, ApFloat(0, BITS))
        assert set(basis._deriv) == {0, 1, 2, 3}
        r1, _ = derivative_sum(basis, 2, to_apfloat(F(1, 7), BITS))
        r2, _ = derivative_sum(basis, 2, to_apfloat(F(1, 7), BITS))
        assert r1 == r2


class TestScaledTolerance:
    def test_floor_at_one(self):
        tiny = [ApFloat(F(1, 1000), BITS)]
        assert scaled_tolerance(tiny, BITS) == pow2(40 - BITS, BITS)

    def test_scales_with_data(self):
        big = [ApFloat(-(2 ** 50), BITS)]
        assert scaled_tolerance(big, BITS) == pow2(90 - BITS, BITS)
