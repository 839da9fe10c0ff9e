"""Hermite-Fejer fundamental polynomials on arbitrary knots.

For knots x_1 < ... < x_n the fundamental polynomials h_i are the unique
degree <= 2n-1 polynomials with h_i(x_j) = delta_ij and h_i'(x_j) = 0 for all
j.  In terms of the Lagrange basis l_i,

    h_i(x) = l_i(x)^2 * (1 - 2 l_i'(x_i) (x - x_i)),

and on Chebyshev knots of the first kind there is the closed form

    h_i(x) = (1/n^2) [T_n(x) / (x - x_i)]^2 (1 - x x_i).

Both constructions are provided and must agree; the differences between them
are a standing cross-check.

Derivatives are always taken by exact coefficient shifting, never by finite
differences.  Dense coefficients of fundamental polynomials grow roughly
exponentially in n while their values on the knot interval stay O(1), so
evaluation cancels heavily; construction and evaluation therefore run with a
guard-bit budget of 64 + 4n bits on top of the knot precision, and all
tolerances are stated against the requested precision.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from mpmath.libmp import fzero, mpf_add, mpf_mul, mpf_mul_int, mpf_pos, mpf_shift, round_nearest

from .apnum import ApFloat, NumPoly, max_abs
from .knots import KnotSet, chebyshev1_knots
from .ratpoly import chebyshev_T

_RND = round_nearest


class LengthMismatch(ValueError):
    """The number of sample values does not match the number of knots."""


def _guarded_precision(knots: KnotSet) -> int:
    return knots.precision_bits + 64 + 4 * knots.n


def _deflate(poly: NumPoly, root: ApFloat) -> NumPoly:
    """Quotient of poly by (x - root), dropping the remainder.

    Synthetic division from the top coefficient down; the remainder is
    poly(root), which is ~0 whenever root is (a rounding of) a root.
    """
    raws = poly._raw
    wp = poly.precision_bits
    if len(raws) < 2:
        return NumPoly([], wp)
    out = [fzero] * (len(raws) - 1)
    acc = raws[-1]
    out[-1] = acc
    for k in range(len(raws) - 2, 0, -1):
        acc = mpf_add(raws[k], mpf_mul(root.raw, acc, wp, _RND), wp, _RND)
        out[k - 1] = acc
    return NumPoly(out, wp)


@dataclass(eq=False)
class FundamentalBasis:
    """The n fundamental polynomials h_i bound to their knot set.

    Immutable after construction; the derivative ladder is memoized
    per-order, so sweeping p = 1, 2, ... costs one differentiation pass each.
    """

    knots: KnotSet
    h: tuple[NumPoly, ...]
    lagrange: tuple[NumPoly, ...]
    construction: str
    _deriv: dict = field(init=False, repr=False, default_factory=dict)

    @property
    def n(self) -> int:
        return self.knots.n

    @property
    def precision_bits(self) -> int:
        """The requested (knot) precision; tolerances are stated against it."""
        return self.knots.precision_bits

    @property
    def working_precision_bits(self) -> int:
        return self.h[0].precision_bits if self.h else self.knots.precision_bits

    def _derivative_raws(self, p: int) -> list[tuple]:
        """Raw coefficient tuples of h_i^(p) for every i, cached per p."""
        if 0 not in self._deriv:
            self._deriv[0] = [poly._raw for poly in self.h]
        q = p
        while q not in self._deriv:
            q -= 1
        wp = self.working_precision_bits
        while q < p:
            prev = self._deriv[q]
            step = [
                tuple(mpf_mul_int(c, k + 1, wp, _RND) for k, c in enumerate(raws[1:]))
                for raws in prev
            ]
            q += 1
            self._deriv[q] = step
        return self._deriv[p]


def lagrange_basis(knots: KnotSet) -> list[NumPoly]:
    """Lagrange cardinal polynomials l_i = omega / ((x - x_i) omega'(x_i)).

    omega'(x_i) is obtained by evaluating the differentiated node polynomial;
    the product-of-differences form is kept out of the code path and used only
    as an independent oracle in the tests.
    """
    wp = _guarded_precision(knots)
    one = ApFloat(1, wp)
    omega = NumPoly([one], wp)
    for x in knots.points:
        omega = omega * NumPoly([-x, one], wp)
    omega_d = omega.derivative()
    basis = []
    for x in knots.points:
        quotient = _deflate(omega, x)
        basis.append(quotient.scale(one / omega_d.evaluate(x)))
    return basis


def hermite_fejer_basis(knots: KnotSet) -> FundamentalBasis:
    """General-knots construction h_i = l_i^2 (1 - 2 l_i'(x_i)(x - x_i))."""
    wp = _guarded_precision(knots)
    lagrange = lagrange_basis(knots)
    one = ApFloat(1, wp)
    hs = []
    for x, l in zip(knots.points, lagrange):
        slope = l.derivative().evaluate(x)
        linear = NumPoly([one + (slope * x).scale2(1), -slope.scale2(1)], wp)
        hs.append((l * l) * linear)
    return FundamentalBasis(knots=knots, h=tuple(hs), lagrange=tuple(lagrange), construction="general")


def chebyshev_closed_form(n: int, precision_bits: int) -> FundamentalBasis:
    """Chebyshev-knot construction h_i = (1/n^2) [T_n/(x - x_i)]^2 (1 - x x_i)."""
    knots = chebyshev1_knots(n, precision_bits)
    wp = _guarded_precision(knots)
    tn = NumPoly.from_ratpoly(chebyshev_T(n), wp)
    tn_d = tn.derivative()
    one = ApFloat(1, wp)
    inv_n2 = one / ApFloat(n * n, wp)
    hs, lagrange = [], []
    for x in knots.points:
        quotient = _deflate(tn, x)
        lagrange.append(quotient.scale(one / tn_d.evaluate(x)))
        h = (quotient * quotient) * NumPoly([one, -x], wp)
        hs.append(h.scale(inv_n2))
    return FundamentalBasis(
        knots=knots, h=tuple(hs), lagrange=tuple(lagrange), construction="chebyshev_closed_form"
    )


def interpolate(basis: FundamentalBasis, values: Sequence[ApFloat], x: ApFloat) -> ApFloat:
    """Evaluate sum_i h_i(x) * values_i (the interpolation operator at x)."""
    if len(values) != basis.n:
        raise LengthMismatch(f"{len(values)} values for {basis.n} knots")
    wp = basis.working_precision_bits
    acc = fzero
    for poly, v in zip(basis.h, values):
        acc = mpf_add(acc, mpf_mul(poly.evaluate(x).raw, v.raw, wp, _RND), wp, _RND)
    return ApFloat(mpf_pos(acc, basis.precision_bits, _RND), basis.precision_bits)


def derivative_sum(
    basis: FundamentalBasis, p: int, y0: ApFloat
) -> tuple[ApFloat, list[ApFloat]]:
    """All h_i^(p)(y0) and their sum, which vanishes identically for p >= 1.

    terms_i is the p-th derivative of h_i (exact coefficient shifting)
    evaluated at y0 by Horner's rule; residual is their ordered sum.  The sum
    of the h_i is identically 1 for any knot set, so every p >= 1 drives the
    residual to pure rounding noise.  p = 0 is rejected: there the sum is 1,
    not 0.
    """
    if p < 1:
        raise ValueError("derivative order p must be >= 1")
    wp = basis.working_precision_bits
    out_prec = basis.precision_bits
    terms = []
    acc = fzero
    for raws in basis._derivative_raws(p):
        val = fzero
        for c in reversed(raws):
            val = mpf_add(mpf_mul(val, y0.raw, wp, _RND), c, wp, _RND)
        acc = mpf_add(acc, val, wp, _RND)
        terms.append(ApFloat(mpf_pos(val, out_prec, _RND), out_prec))
    residual = ApFloat(mpf_pos(acc, out_prec, _RND), out_prec)
    return residual, terms


def scaled_tolerance(values: Sequence[ApFloat], precision_bits: int) -> ApFloat:
    """tau = max(1, max_i |values_i|) * 2^(40 - precision_bits).

    Judged against the data scale: the individual terms of a vanishing sum
    grow with n while the sum cancels, so absolute comparison would be
    meaningless.
    """
    m = max_abs(values)
    one = ApFloat(1, precision_bits)
    if m is None or m < one:
        m = one
    return ApFloat(mpf_shift(m.raw, 40 - precision_bits), precision_bits)
