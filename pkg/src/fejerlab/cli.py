"""Batch command-line front end.

Subcommands:

* knots            dump a knot set as JSON
* verify-eq1       check that sum_i h_i^(p)(y0) vanishes, numerically, at
                   precision (identity E1 in the README)
* verify-identity  check the cosecant-sum identity exactly (identity E2)
* power-sum        print exact inverse power sums PS(m, n)
* conjecture       fit power-sum formulas / hunt rationals at general knots

Output is JSON lines by default (one object per check, streamed in sweep
order) and is byte-identical across runs for identical argv.  Exit status: 0
when every performed check passed, 1 when any failed, 2 on usage errors.
The default precision is 256 bits, overridable by the FEJERLAB_PRECISION_BITS
environment variable and per-run by --precision-bits.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import conjecture as conj
from .apnum import MIN_PRECISION_BITS, ApFloat
from .hermite import derivative_sum, hermite_fejer_basis, scaled_tolerance
from .identities import inverse_power_sum, verify_cosecant_sum
from .knots import make_knots
from .ratpoly import format_rational

PRECISION_ENV_VAR = "FEJERLAB_PRECISION_BITS"
FAMILIES = ("chebyshev1", "chebyshev2", "equispaced", "gauss_jacobi")


class UsageError(ValueError):
    pass


# The parsed argparse namespace is the run configuration: subcommand,
# precision_bits (>= 64, default 256 or the environment override), n / n_max,
# p / p_max, the y0 list, family with its parameters, and the output mode.
# Every constraint is validated before any computation starts.


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def _default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV_VAR)
    if raw is None:
        return 256
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV_VAR} must be an integer, got {raw!r}")


def _emit(obj: dict, mode: str, text: str) -> None:
    if mode == "json":
        print(json.dumps(obj))
    else:
        print(text)


def _knot_params(args) -> dict:
    params: dict = {}
    if args.family == "gauss_jacobi":
        params["alpha"] = args.alpha if args.alpha is not None else Fraction(0)
        params["beta"] = args.beta if args.beta is not None else Fraction(0)
    if args.family == "equispaced":
        params["a"] = args.a
        params["b"] = args.b
    return params


def _sweep_n(args, minimum: int, step: int = 1) -> list[int]:
    if (args.n is None) == (args.n_max is None):
        raise UsageError("give exactly one of --n / --n-max")
    if args.n is not None:
        return [args.n]
    if args.n_max < minimum:
        raise UsageError(f"--n-max must be >= {minimum}")
    return list(range(minimum, args.n_max + 1, step))


def _odd_sweep(args) -> list[int]:
    if (args.n is None) == (args.n_max is None):
        raise UsageError("give exactly one of --n / --n-max")
    if args.n is not None:
        if args.n < 3 or args.n % 2 == 0:
            raise UsageError(f"n must be odd and >= 3, got {args.n}")
        return [args.n]
    if args.n_max < 3:
        raise UsageError("--n-max must be >= 3")
    return list(range(3, args.n_max + 1, 2))


def _cmd_knots(args) -> int:
    knots = make_knots(args.family, args.n, args.precision_bits, **_knot_params(args))
    obj = {
        "family": knots.family,
        "n": knots.n,
        "alpha": format_rational(knots.alpha) if knots.alpha is not None else None,
        "beta": format_rational(knots.beta) if knots.beta is not None else None,
        "precision_bits": knots.precision_bits,
        "points": [str(x) for x in knots.points],
    }
    _emit(obj, args.output, f"{knots.family} n={knots.n}: " + " ".join(obj["points"]))
    return 0


def _cmd_verify_eq1(args) -> int:
    if args.p_max < 1:
        raise UsageError("--p-max must be >= 1")
    y0_list = args.y0 or [Fraction(0)]
    params = _knot_params(args)
    all_pass = True
    for n in _sweep_n(args, minimum=2):
        basis = hermite_fejer_basis(make_knots(args.family, n, args.precision_bits, **params))
        for p in range(1, args.p_max + 1):
            for y0 in y0_list:
                residual, terms = derivative_sum(basis, p, ApFloat(y0, args.precision_bits))
                tolerance = scaled_tolerance(terms, args.precision_bits)
                ok = abs(residual) <= tolerance
                all_pass &= ok
                obj = {
                    "family": args.family,
                    "n": n,
                    "p": p,
                    "y0": format_rational(y0),
                    "residual": str(residual),
                    "tolerance": str(tolerance),
                    "precision_bits": args.precision_bits,
                    "pass": ok,
                }
                _emit(
                    obj,
                    args.output,
                    f"{'ok  ' if ok else 'FAIL'} {args.family} n={n} p={p} y0={y0}: "
                    f"|residual| {abs(residual)} vs tolerance {tolerance}",
                )
    return 0 if all_pass else 1


def _cmd_verify_identity(args) -> int:
    all_hold = True
    for n in _odd_sweep(args):
        report = verify_cosecant_sum(n)
        all_hold &= report.holds
        obj = {
            "n": n,
            "lhs": format_rational(report.lhs),
            "rhs": format_rational(report.rhs),
            "holds": report.holds,
        }
        _emit(
            obj,
            args.output,
            f"{'ok  ' if report.holds else 'FAIL'} n={n}: {obj['lhs']} vs {obj['rhs']}",
        )
    return 0 if all_hold else 1


def _cmd_power_sum(args) -> int:
    if args.m < 1:
        raise UsageError("--m must be >= 1")
    for n in _odd_sweep(args):
        value = inverse_power_sum(n, args.m)
        obj = {"n": n, "m": args.m, "value": format_rational(value)}
        _emit(obj, args.output, f"PS({args.m},{n}) = {obj['value']}")
    return 0


def _cmd_conjecture(args) -> int:
    if args.family is not None:
        return _conjecture_explore(args)
    return _conjecture_formula(args)


def _conjecture_formula(args) -> int:
    if args.m is None or args.train is None or args.holdout is None:
        raise UsageError("formula mode needs --m, --train and --holdout")
    report = conj.conjecture_power_formula(args.m, args.train, args.holdout)
    obj = {
        "m": report.m,
        "train_n": list(report.train_n),
        "holdout_n": list(report.holdout_n),
        "formula": [format_rational(c) for c in report.formula.coeffs],
        "confirmed": report.confirmed,
    }
    _emit(
        obj,
        args.output,
        f"{'confirmed' if report.confirmed else 'REFUTED'} m={report.m}: {report.formula!r}",
    )
    return 0 if report.confirmed else 1


def _conjecture_explore(args) -> int:
    if args.p is None or not args.n_list:
        raise UsageError("explore mode needs --p and --n-list")
    y0 = args.y0[0] if args.y0 else Fraction(0)
    findings = conj.explore_knot_family(
        args.family,
        _knot_params(args),
        args.p,
        ApFloat(y0, args.precision_bits),
        args.n_list,
        args.precision_bits,
        max_denominator=args.max_denominator,
    )
    parts = ("offcenter_aggregate", "nearest_knot_term")
    for idx, rec in enumerate(findings):
        n = args.n_list[idx // 2]
        obj = {
            "family": args.family,
            "n": n,
            "p": args.p,
            "y0": format_rational(y0),
            "part": parts[idx % 2],
            "value": str(rec.input),
            "candidate": format_rational(rec.candidate) if rec.candidate is not None else None,
            "confirmed_at_bits": rec.confirmed_at_bits,
            "precision_bits": args.precision_bits,
        }
        _emit(
            obj,
            args.output,
            f"n={n} {obj['part']}: {obj['value']} ~ {obj['candidate']}",
        )
    return 0


def build_parser(default_precision: int) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fejerlab",
        description="Hermite-Fejer interpolation identities: verify and discover.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--precision-bits", type=int, default=default_precision)
        p.add_argument("--output", choices=("json", "text"), default="json")

    p_knots = sub.add_parser("knots", help="generate a knot set")
    p_knots.add_argument("--family", choices=FAMILIES, required=True)
    p_knots.add_argument("--n", type=int, required=True)
    p_knots.add_argument("--alpha", type=_fraction)
    p_knots.add_argument("--beta", type=_fraction)
    p_knots.add_argument("--a", type=_fraction, default=Fraction(-1))
    p_knots.add_argument("--b", type=_fraction, default=Fraction(1))
    common(p_knots)

    p_eq1 = sub.add_parser("verify-eq1", help="check the vanishing derivative sums")
    p_eq1.add_argument("--family", choices=FAMILIES, default="chebyshev1")
    p_eq1.add_argument("--n", type=int)
    p_eq1.add_argument("--n-max", type=int)
    p_eq1.add_argument("--p-max", type=int, default=2)
    p_eq1.add_argument("--y0", type=_fraction, action="append")
    p_eq1.add_argument("--alpha", type=_fraction)
    p_eq1.add_argument("--beta", type=_fraction)
    p_eq1.add_argument("--a", type=_fraction, default=Fraction(-1))
    p_eq1.add_argument("--b", type=_fraction, default=Fraction(1))
    common(p_eq1)

    p_id = sub.add_parser("verify-identity", help="check the cosecant sum exactly")
    p_id.add_argument("--n", type=int)
    p_id.add_argument("--n-max", type=int)
    common(p_id)

    p_ps = sub.add_parser("power-sum", help="exact inverse power sums")
    p_ps.add_argument("--m", type=int, default=1)
    p_ps.add_argument("--n", type=int)
    p_ps.add_argument("--n-max", type=int)
    common(p_ps)

    p_conj = sub.add_parser("conjecture", help="fit formulas / recognize rationals")
    p_conj.add_argument("--m", type=int)
    p_conj.add_argument("--train", type=_int_list)
    p_conj.add_argument("--holdout", type=_int_list)
    p_conj.add_argument("--family", choices=FAMILIES)
    p_conj.add_argument("--p", type=int)
    p_conj.add_argument("--y0", type=_fraction, action="append")
    p_conj.add_argument("--n-list", type=_int_list)
    p_conj.add_argument("--alpha", type=_fraction)
    p_conj.add_argument("--beta", type=_fraction)
    p_conj.add_argument("--a", type=_fraction, default=Fraction(-1))
    p_conj.add_argument("--b", type=_fraction, default=Fraction(1))
    p_conj.add_argument("--max-denominator", type=int, default=10 ** 6)
    common(p_conj)

    return parser


_COMMANDS = {
    "knots": _cmd_knots,
    "verify-eq1": _cmd_verify_eq1,
    "verify-identity": _cmd_verify_identity,
    "power-sum": _cmd_power_sum,
    "conjecture": _cmd_conjecture,
}


def main(argv=None) -> int:
    try:
        parser = build_parser(_default_precision())
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            # argparse already printed its diagnostic; keep 0 for --help.
            return 0 if not exc.code else 2
        if args.precision_bits < MIN_PRECISION_BITS:
            raise UsageError(f"--precision-bits must be >= {MIN_PRECISION_BITS}")
        return _COMMANDS[args.subcommand](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
