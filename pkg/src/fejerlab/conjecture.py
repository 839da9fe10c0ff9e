"""Discovery engine: fit closed forms to exact power sums and recognize
rational constants in high-precision numerics.

Two tools, both deliberately conservative:

* conjecture_power_formula fits a polynomial in n to the exact values
  PS(m, n) = sum_k 1/sin^(2m)(k pi / n) over odd training n, then demands
  exact agreement on disjoint holdout n before calling the fit confirmed.
  Outputs are conjectures by contract, never proofs.

* rational_reconstruct scans continued-fraction convergents of a float for a
  small rational candidate, then insists the source quantity recomputed at
  twice the precision still matches.  Two independent gates make accidental
  confirmations astronomically unlikely.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .apnum import ApFloat
from .hermite import derivative_sum, hermite_fejer_basis
from .identities import inverse_power_sum
from .knots import make_knots
from .ratpoly import RatPoly, rational_interpolate


class InsufficientTrainingPoints(ValueError):
    """Too few training points to pin down the sought polynomial degree."""


@dataclass(frozen=True)
class ConjectureReport:
    """A fitted power-sum formula and its exact holdout verdict."""

    m: int
    train_n: tuple[int, ...]
    formula: RatPoly
    holdout_n: tuple[int, ...]
    confirmed: bool


@dataclass(frozen=True)
class Recognition:
    """A rational candidate for a numeric value, if one survived confirmation.

    candidate is populated only when the recomputation at confirmed_at_bits
    (strictly higher precision than the input) re-matched it.
    """

    input: ApFloat
    candidate: Fraction | None
    confirmed_at_bits: int | None


def _check_odd_list(ns: Sequence[int], label: str) -> tuple[int, ...]:
    ns = tuple(ns)
    for n in ns:
        if n < 3 or n % 2 == 0:
            raise ValueError(f"{label} entries must be odd and >= 3, got {n}")
    if len(set(ns)) != len(ns):
        raise ValueError(f"{label} entries must be distinct")
    return ns


def conjecture_power_formula(
    m: int, train_n: Sequence[int], holdout_n: Sequence[int]
) -> ConjectureReport:
    """Fit PS(m, .) as a polynomial in n on train_n; confirm exactly on holdout_n.

    PS(m, n) behaves like a degree-2m polynomial in n, so at least 2m+1
    training points are required.  The fit is a plain exact interpolation with
    no structural assumption beyond polynomiality; overfitting is caught by
    the holdout comparison, which is exact rational equality.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    train = _check_odd_list(train_n, "train_n")
    holdout = _check_odd_list(holdout_n, "holdout_n")
    if set(train) & set(holdout):
        raise ValueError("train and holdout sets must be disjoint")
    if len(train) < 2 * m + 1:
        raise InsufficientTrainingPoints(
            f"need at least {2 * m + 1} training points for m={m}, got {len(train)}"
        )
    points = [(Fraction(n), inverse_power_sum(n, m)) for n in train]
    formula = rational_interpolate(points)
    confirmed = all(formula.evaluate(Fraction(n)) == inverse_power_sum(n, m) for n in holdout)
    return ConjectureReport(
        m=m, train_n=train, formula=formula, holdout_n=holdout, confirmed=confirmed
    )


def _convergents(value: Fraction):
    """Continued-fraction convergents of value, in order."""
    h_prev, k_prev = 1, 0
    h_cur, k_cur = None, None
    rest = value
    while True:
        a = rest.numerator // rest.denominator  # floor
        if h_cur is None:
            h_cur, k_cur = a, 1
        else:
            h_cur, k_cur, h_prev, k_prev = a * h_cur + h_prev, a * k_cur + k_prev, h_cur, k_cur
        yield Fraction(h_cur, k_cur)
        rest = rest - a
        if rest == 0:
            return
        rest = 1 / rest


def rational_reconstruct(
    x: ApFloat,
    max_denominator: int,
    recompute: Callable[[int], ApFloat] | None = None,
) -> Recognition:
    """Recognize x as a rational with denominator <= max_denominator.

    Acceptance takes the first convergent within 2^(-precision_bits/2) of x.
    Confirmation recomputes the source quantity at doubled precision via the
    recompute callable (defaulting to x itself, exact in binary) and requires
    the candidate to re-match within 2^(-precision_bits) relative.  Failing
    either gate yields candidate None.
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be >= 1")
    prec = x.precision_bits
    exact = x.to_fraction()
    window = Fraction(1, 2 ** (prec // 2))
    candidate = None
    for conv in _convergents(exact):
        if conv.denominator > max_denominator:
            break
        if abs(exact - conv) < window:
            candidate = conv
            break
    if candidate is None:
        return Recognition(input=x, candidate=None, confirmed_at_bits=None)
    confirm_bits = 2 * prec
    recomputed = recompute(confirm_bits) if recompute is not None else x
    gap = abs(recomputed.to_fraction() - candidate)
    if gap > Fraction(1, 2 ** prec) * max(Fraction(1), abs(candidate)):
        return Recognition(input=x, candidate=None, confirmed_at_bits=None)
    return Recognition(input=x, candidate=candidate, confirmed_at_bits=confirm_bits)


def _aggregate_terms(
    family: str,
    params: dict,
    p: int,
    y0_exact: Fraction,
    n: int,
    precision_bits: int,
) -> tuple[ApFloat, ApFloat]:
    """(sum of off-nearest terms, nearest-knot term) of the derivative sum."""
    knots = make_knots(family, n, precision_bits, **params)
    basis = hermite_fejer_basis(knots)
    y0 = ApFloat(y0_exact, precision_bits)
    _, terms = derivative_sum(basis, p, y0)
    nearest = min(range(n), key=lambda i: abs(knots.points[i] - y0))
    rest = ApFloat(0, precision_bits)
    for i, t in enumerate(terms):
        if i != nearest:
            rest = rest + t
    return rest, terms[nearest]


def explore_knot_family(
    family: str,
    params: dict | None,
    p: int,
    y0: ApFloat,
    n_list: Sequence[int],
    precision_bits: int,
    max_denominator: int = 10 ** 6,
) -> list[Recognition]:
    """Hunt for rational structure in derivative sums over a knot family.

    For each n the h_i^(p)(y0) terms are split into the structurally special
    one (the knot nearest y0) and the aggregate of the rest, and each part is
    offered to rational_reconstruct with a genuine doubled-precision rebuild
    as its confirmation.  Results come in n order, off-nearest aggregate
    first, then the nearest-knot term; nothing is asserted about them beyond
    honest confirmation flags.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    params = dict(params or {})
    y0_exact = y0.to_fraction()
    findings: list[Recognition] = []
    for n in n_list:
        def recompute_rest(bits: int, _n=n) -> ApFloat:
            return _aggregate_terms(family, params, p, y0_exact, _n, bits)[0]

        def recompute_nearest(bits: int, _n=n) -> ApFloat:
            return _aggregate_terms(family, params, p, y0_exact, _n, bits)[1]

        rest, nearest = _aggregate_terms(family, params, p, y0_exact, n, precision_bits)
        findings.append(rational_reconstruct(rest, max_denominator, recompute_rest))
        findings.append(rational_reconstruct(nearest, max_denominator, recompute_nearest))
    return findings
