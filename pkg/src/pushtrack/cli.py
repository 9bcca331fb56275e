"""Command-line entry point: ``pushtrack faces|analyze|family|bounds|verify``.

Exit status: 0 on success, 1 on a mathematical failure (a bound sandwich or
verification criterion that does not hold), 2 on bad input.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import acceptance, families
from .analysis import FAIL, analyze
from .bounds import (
    POWER_CLASSES,
    PRIMITIVE,
    dilatation_bounds,
    least_dilatation_bounds,
    power_curve_bounds,
)
from .curve import SurfaceSig, load_curve
from .errors import PushtrackError
from .render import dumps, float_text, fraction_text
from .spectral import DEFAULT_TOL, is_primitive

EXIT_OK, EXIT_MATH, EXIT_INPUT = 0, 1, 2


def _tol(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return value


def cmd_faces(args) -> int:
    curve = load_curve(args.file)
    print(f"surface {curve.surface}  crossings {curve.self_intersections}  faces {len(curve.faces)}")
    for f in curve.faces:
        print(f"{f.label}\tcorners={f.n_corners}\tpunctures={f.punctures}")
    return EXIT_OK


def _print_report(rep) -> None:
    print(f"curve: {rep.name or '(unnamed)'}")
    print(f"surface: {rep.surface}   i = {rep.self_int}   filling: {'yes' if rep.filling else 'no'}")
    for w in rep.taut_warnings + rep.warnings:
        print(f"warning: {w}")
    if rep.census is None:
        return
    c = rep.census
    print(
        f"regions: {c.trigons} trigons, {c.bigons} bigons, {c.monogons} monogons, "
        f"{c.punctured_monogons} punctured monogons, {c.higher + c.punctured_higher} larger; "
        f"index sum {fraction_text(c.euler_sum)}"
    )
    print(f"track class: {c.track_class}")
    print(f"row-sum bound: {rep.row_sum_bound}   primitive: {rep.primitive}")
    if rep.enclosure is not None:
        e = rep.enclosure
        print(f"{rep.enclosure_label}: [{float_text(float(e.lo))}, {float_text(float(e.hi))}] ({e.iterations} steps)")
    b = rep.bounds
    print(f"theorem bounds: [{float_text(b.lower)}, {float_text(b.upper)}]  (log [{float_text(b.log_lower)}, {float_text(b.log_upper)}])")
    print(f"sandwich: {rep.verdict}")


def cmd_analyze(args) -> int:
    curve = load_curve(args.file)
    rep = analyze(curve, tol=args.tol)
    if args.json:
        sys.stdout.write(dumps(rep.to_json()))
    else:
        _print_report(rep)
    return EXIT_MATH if rep.verdict == FAIL else EXIT_OK


def cmd_family(args) -> int:
    g = args.genus
    if args.kind == "fixed":
        if args.winding is not None:
            raise PushtrackError("--winding only applies to the winding family")
        m, curve = families.fixed_family(g)
        first = m.row_sums()[0]
        formula = families.fixed_first_row_formula(g)
        limit = Fraction(2, 5) * 11**g
        checks = {
            "first_row_matches_formula": first == formula,
            "first_row_is_max": first == max(m.row_sums()),
            "below_limit": first < limit,
        }
        report = {
            "family": "fixed",
            "genus": g,
            "self_intersections": curve.self_intersections,
            "dimension": m.dim,
            "first_row_sum": first,
            "formula": formula,
            "limit": fraction_text(limit),
            "primitive": is_primitive(m),
            "checks": checks,
            "matrix": m.to_json(),
        }
        if args.emit_curve:
            doc = curve.to_json()
            doc["surface"] = {"genus": curve.surface.genus, "punctures": curve.surface.punctures}
            Path(args.emit_curve).write_text(dumps(doc), encoding="utf-8")
            report["curve_file"] = str(args.emit_curve)
    else:
        if args.emit_curve:
            raise PushtrackError("--emit-curve only applies to the fixed family")
        if args.winding is None:
            raise PushtrackError("the winding family needs --winding N")
        n = args.winding
        m = families.winding_family(g, n)
        first = m.row_sums()[0]
        formula = families.winding_first_row_formula(g, n)
        checks = {"first_row_matches_formula": first == formula, "below_limit": first < n * 11**g}
        report = {
            "family": "winding",
            "genus": g,
            "winding": n,
            "self_intersections": 3 * (g - 1) + n,
            "dimension": m.dim,
            "first_row_sum": first,
            "formula": formula,
            "limit": n * 11**g,
            "primitive": is_primitive(m),
            "checks": checks,
            "matrix": m.to_json(),
        }
    sys.stdout.write(dumps(report))
    ok = all(report["checks"].values()) and report["primitive"]
    return EXIT_OK if ok else EXIT_MATH


def cmd_bounds(args) -> int:
    surface = SurfaceSig(args.genus, args.punctures)
    if surface.genus < 0 or surface.punctures < 0:
        raise PushtrackError("genus and punctures must be nonnegative")
    k = args.selfint
    stratified = k is not None and surface.punctures == 0 and surface.genus >= 3 and k >= 3 * surface.genus - 1
    report = {"least": least_dilatation_bounds(surface, k if stratified else None).to_json()}
    if k is not None:
        report["curve"] = dilatation_bounds(k, surface, args.power_class).to_json()
    if args.power is not None:
        if k is None:
            raise PushtrackError("--power needs --selfint")
        if args.power_class != PRIMITIVE:
            raise PushtrackError("--power describes a power of a primitive curve; use --power-class primitive")
        log_lambda, source = args.log_lambda, "given"
        if log_lambda is None:
            # fall back on the guaranteed lower bound for the primitive curve
            log_lambda, source = math.log(k + 1) / 5, "lower bound"
        power = power_curve_bounds(k, args.power, log_lambda).to_json()
        power["log_lambda_source"] = source
        report["power"] = power
    sys.stdout.write(dumps(report))
    return EXIT_OK


def cmd_verify(args) -> int:
    outcomes = acceptance.run(args.filter)
    if not outcomes:
        print(f"no criterion matches {args.filter!r}", file=sys.stderr)
        return EXIT_INPUT
    passed = sum(o.passed for o in outcomes)
    print(f"{passed}/{len(outcomes)} criteria passed")
    return EXIT_OK if passed == len(outcomes) else EXIT_MATH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pushtrack", description="Point-pushing dilatation bounds from signed Gauss codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("faces", help="list the faces of a curve file")
    p.add_argument("file")
    p.set_defaults(func=cmd_faces)

    p = sub.add_parser("analyze", help="full analysis of a curve file")
    p.add_argument("file")
    p.add_argument("--tol", type=_tol, default=DEFAULT_TOL, help="enclosure width (default 1e-9)")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("family", help="generate one of the explicit families")
    p.add_argument("kind", choices=("fixed", "winding"))
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--winding", type=int)
    p.add_argument("--emit-curve", metavar="PATH")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("bounds", help="evaluate the closed-form bounds")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--punctures", type=int, required=True)
    p.add_argument("--selfint", type=int)
    p.add_argument("--power", type=int)
    p.add_argument("--power-class", choices=POWER_CLASSES, default=PRIMITIVE)
    p.add_argument("--log-lambda", type=float, help="log dilatation of the primitive curve, for --power")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--filter", metavar="NAME")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (PushtrackError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
