"""Exact proofs of the cosecant-sum identity and its second-derivative origin.

For odd n >= 3 the identity

    sum_{k=1}^{(n-1)/2} 2 / sin^2(k pi / n)  =  (n^2 - 1) / 3        (E2)

is established here with zero tolerance.  The route is purely algebraic:
for odd n, T_n(x) = x * W(x^2) where the roots of W are exactly the values
sin^2(k pi / n), k = 1..(n-1)/2.  Reversing W maps those roots to their
reciprocals, and Newton's identities turn the reversed coefficients into the
power sums sum_k 1 / sin^(2m)(k pi / n) as exact rationals.  No epsilon
appears anywhere in this module.

The same machinery reproduces, exactly, the second-derivative balance behind
(E2): on Chebyshev knots of the first kind the fundamental polynomials have
h_i''(0) = 2 / x_i^2 off center and h_mid''(0) = (2/3)(1 - n^2) at the middle
knot, and these cancel because sum_i h_i''(0) = 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ratpoly import RatPoly, X, NotOdd, chebyshev_T, newton_power_sums


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one exact identity check (holds is exact equality)."""

    n: int
    lhs: Fraction
    rhs: Fraction
    holds: bool
    witness: RatPoly


def _check_odd(n: int) -> int:
    if n % 2 == 0:
        raise NotOdd(f"n must be odd, got {n}")
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    return n


def sin2_charpoly(n: int) -> RatPoly:
    """The polynomial whose roots are sin^2(k pi / n), k = 1..(n-1)/2.

    This is W with T_n(x) = x * W(x^2); each root is simple and lies in (0, 1).
    """
    _check_odd(n)
    return chebyshev_T(n).odd_part()


def inverse_power_sum(n: int, m: int) -> Fraction:
    """PS(m, n) = sum_{k=1}^{(n-1)/2} 1 / sin^(2m)(k pi / n), exactly.

    Computed as the m-th power sum of the roots of the reversed charpoly
    (reversal sends each root r to 1/r).
    """
    _check_odd(n)
    if m < 1:
        raise ValueError("m must be >= 1")
    return newton_power_sums(sin2_charpoly(n).reciprocal(), m)[m - 1]


def verify_cosecant_sum(n: int) -> IdentityReport:
    """Check 2 * PS(1, n) = (n^2 - 1)/3 by exact rational comparison."""
    _check_odd(n)
    witness = sin2_charpoly(n)
    lhs = 2 * newton_power_sums(witness.reciprocal(), 1)[0]
    rhs = Fraction(n * n - 1, 3)
    return IdentityReport(n=n, lhs=lhs, rhs=rhs, holds=lhs == rhs, witness=witness)


def midpoint_second_derivative(n: int) -> Fraction:
    """h_mid''(0) for the middle Chebyshev knot, exactly.

    The middle knot of an odd-n Chebyshev set sits at 0, so the closed form
    collapses to h_mid = (1/n^2) [T_n(x)/x]^2, and the second derivative at 0
    comes out of exact polynomial algebra.  Equals (2/3)(1 - n^2).
    """
    _check_odd(n)
    quotient = chebyshev_T(n).divexact(X)
    h_mid = (quotient * quotient) * Fraction(1, n * n)
    return h_mid.derivative(2).evaluate(0)


def second_derivative_balance(n: int) -> tuple[Fraction, Fraction]:
    """The exact split of sum_i h_i''(0) on Chebyshev knots into its two parts.

    Off-center knots contribute sum_{i != mid} 2/x_i^2; the squared nonzero
    knots run over sin^2(k pi / n) twice (once per sign), so the aggregate is
    4 * PS(1, n).  The middle knot contributes h_mid''(0).  The two parts sum
    to exactly 0, which is precisely what forces (E2).
    """
    _check_odd(n)
    offcenter = 4 * inverse_power_sum(n, 1)
    midpoint = midpoint_second_derivative(n)
    return offcenter, midpoint
