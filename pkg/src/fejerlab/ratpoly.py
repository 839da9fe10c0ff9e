"""Exact univariate polynomial algebra over arbitrary-precision rationals.

Coefficients are `fractions.Fraction` values, which are always stored in
canonical form (positive denominator, gcd-reduced).  A polynomial is a dense
tuple of coefficients, constant term first; the zero polynomial is the empty
tuple and has degree -1 by convention.  Everything here is exact: no epsilon
appears anywhere in this module.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence


class NotDivisible(ValueError):
    """Polynomial division left a nonzero remainder."""


class NotOdd(ValueError):
    """A polynomial (or an integer parameter) required to be odd is not."""


class ZeroConstantTerm(ValueError):
    """Coefficient reversal needs a nonzero constant term."""


class DuplicateAbscissa(ValueError):
    """Interpolation abscissae must be pairwise distinct."""


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient must be Fraction or int, got {type(c).__name__}")


class RatPoly:
    """Dense polynomial with exact rational coefficients.

    >>> RatPoly([0, -3, 0, 4])
    RatPoly('4x^3 - 3x')
    >>> RatPoly([1, 1]) * RatPoly([-1, 1])
    RatPoly('x^2 - 1')
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __setattr__(self, name, value):
        raise AttributeError("RatPoly is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: RatPoly) -> RatPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return RatPoly(out)

    def __sub__(self, other: RatPoly) -> RatPoly:
        return self + (-other)

    def __neg__(self) -> RatPoly:
        return RatPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatPoly([c * other for c in self.coeffs])
        if not isinstance(other, RatPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def evaluate(self, x: Fraction | int) -> Fraction:
        """Exact Horner evaluation; returns 0 for the zero polynomial."""
        x = _as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, p: int = 1) -> RatPoly:
        """Exact p-th derivative via coefficient shifting.

        Coefficient k of the result is coeff_{k+p} * (k+p)!/k!; p = 0 is the
        identity map.
        """
        if p < 0:
            raise ValueError("derivative order must be >= 0")
        if p == 0:
            return self
        if p > self.degree:
            return RatPoly()
        return RatPoly(
            [self.coeffs[k + p] * math.perm(k + p, p) for k in range(len(self.coeffs) - p)]
        )

    def divexact(self, den: RatPoly) -> RatPoly:
        """Exact quotient self / den; raises NotDivisible on nonzero remainder.

        >>> RatPoly([0, -3, 0, 4]).divexact(RatPoly([0, 1]))
        RatPoly('4x^2 - 3')
        """
        if den.is_zero():
            raise ValueError("division by the zero polynomial")
        if self.is_zero():
            return RatPoly()
        dd = den.degree
        if self.degree < dd:
            raise NotDivisible(f"degree {self.degree} < divisor degree {dd}")
        rem = list(self.coeffs)
        lead = den.coeffs[-1]
        qd = self.degree - dd
        quot = [Fraction(0)] * (qd + 1)
        for k in range(qd, -1, -1):
            t = rem[k + dd] / lead
            if t != 0:
                quot[k] = t
                for j in range(dd + 1):
                    rem[k + j] -= t * den.coeffs[j]
        if any(rem[:dd]):
            raise NotDivisible("nonzero polynomial remainder")
        return RatPoly(quot)

    def odd_part(self) -> RatPoly:
        """Return W with self(x) = x * W(x^2).

        Requires every even-degree coefficient to vanish (the polynomial is an
        odd function); otherwise raises NotOdd.  deg W = (deg self - 1) / 2.
        """
        for k in range(0, len(self.coeffs), 2):
            if self.coeffs[k] != 0:
                raise NotOdd(f"nonzero even-degree coefficient at x^{k}")
        return RatPoly(self.coeffs[1::2])

    def reciprocal(self) -> RatPoly:
        """Reverse the coefficients, mapping every root r to 1/r.

        Requires a nonzero constant term (no root at zero); an involution on
        such polynomials.
        """
        if not self.coeffs or self.coeffs[0] == 0:
            raise ZeroConstantTerm("constant coefficient is zero")
        return RatPoly(self.coeffs[::-1])

    def __repr__(self) -> str:
        if not self.coeffs:
            return "RatPoly('0')"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = " - " if c < 0 else (" + " if parts else "")
            mag = abs(c)
            var = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            num = "" if (mag == 1 and var) else str(mag)
            parts.append(f"{sign}{num}{var}")
        return f"RatPoly('{''.join(parts)}')"


#: The monomial x, convenient for building polynomials.
X = RatPoly([0, 1])


def chebyshev_T(n: int) -> RatPoly:
    """Chebyshev polynomial of the first kind, by the three-term recurrence.

    T_0 = 1, T_1 = x, T_{k+1} = 2x T_k - T_{k-1}; integer coefficients,
    degree n, leading coefficient 2^(n-1) for n >= 1.
    """
    if n < 0:
        raise ValueError("chebyshev_T needs n >= 0")
    if n == 0:
        return RatPoly([1])
    # Run the recurrence on plain ints; wrap in Fractions once at the end.
    prev, cur = [1], [0, 1]
    for _ in range(n - 1):
        nxt = [0] + [2 * c for c in cur]
        for k, c in enumerate(prev):
            nxt[k] -= c
        prev, cur = cur, nxt
    return RatPoly(cur)


def newton_power_sums(a: RatPoly, m_max: int) -> list[Fraction]:
    """Power sums p_1..p_{m_max} of the roots of a, via Newton's identities.

    Roots are counted with multiplicity.  The coefficient-form recurrence is
    used directly, so a need not be monic:  with e_i the elementary symmetric
    functions, e_i = (-1)^i c_{d-i} / c_d, and

        p_k = sum_{i=1}^{min(k-1,d)} (-1)^(i-1) e_i p_{k-i}
              + (k <= d) * (-1)^(k-1) k e_k.
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    d = a.degree
    if d < 1:
        raise ValueError("need a nonzero polynomial of degree >= 1")
    lead = a.coeffs[-1]
    e = [Fraction(1)] + [(-1) ** i * a.coeffs[d - i] / lead for i in range(1, d + 1)]
    sums: list[Fraction] = []
    for k in range(1, m_max + 1):
        acc = Fraction(0)
        for i in range(1, min(k - 1, d) + 1):
            acc += (-1) ** (i - 1) * e[i] * sums[k - i - 1]
        if k <= d:
            acc += (-1) ** (k - 1) * k * e[k]
        sums.append(acc)
    return sums


def rational_interpolate(points: Sequence[tuple[Fraction | int, Fraction | int]]) -> RatPoly:
    """Exact interpolating polynomial of degree < len(points).

    Newton's divided differences over the rationals; raises DuplicateAbscissa
    when two abscissae coincide.
    """
    xs = [_as_fraction(x) for x, _ in points]
    ys = [_as_fraction(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise DuplicateAbscissa("abscissae must be pairwise distinct")
    if not xs:
        return RatPoly()
    dd = list(ys)
    for j in range(1, len(xs)):
        for i in range(len(xs) - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    poly = RatPoly()
    basis = RatPoly([1])
    for k, c in enumerate(dd):
        poly = poly + basis * c
        basis = basis * RatPoly([-xs[k], 1])
    return poly


def format_rational(q: Fraction) -> str:
    """Canonical "num/den" serialization used in all machine-readable output."""
    return f"{q.numerator}/{q.denominator}"
