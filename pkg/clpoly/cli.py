# clpoly/cli.py
"""
clpoly command line.

Usage:
  clpoly analyze --coeffs 1,1,1
  clpoly bounds --degrees 2..10 --digits 3 --csv
  clpoly cone --degree 6 --check-appendix --json
  clpoly interlace --dmax 20
  clpoly omega --degree 3 --target 2
  clpoly families --prop36 --degree 7

Exit codes: 0 success, 2 input error, 3 domain error, 4 invariant violation.
Environment (after .env is loaded): CLPOLY_DIGITS, CLPOLY_VERBOSE,
CLPOLY_MAX_WORKERS; flags override them.
"""

import argparse
import logging
import os
import sys
import time
from typing import Any, Callable, Dict, List, Optional

from dotenv import load_dotenv

from . import __version__, configure_logging
from .cone import appendix_compare, cone_description, vertex_identity_check
from .data_models import HStarVector, NotCL, Parity, Report, poly_from_coeffs, poly_to_json
from .errors import DomainError, InvariantViolation, NotExpressibleError, ParseError
from .families import (
    bounds_table,
    degree10_family,
    degree10_sweep,
    omega_sweep,
    omega_witness,
    prop36_order_check,
    within_alpha_tilde,
)
from .hstar import (
    diamond_check,
    hibi_check,
    hstar_from_poly,
    mult_linear_update,
    mult_quadratic_update,
    poly_from_hstar,
)
from .interlace import interlace_suite
from .palindromic_basis import express_in_pal
from .parsing import parse_degrees, parse_int, parse_rational, parse_rational_list
from .poly_core import B_ODD, S_POLY, cl_detect, cl_from_cs, cl_max_imaginary, cl_roots
from .realroots import DEFAULT_DIGITS, RealRoot, certified_decimal
from .reporting import render_csv, render_json, render_text, to_jsonable
from .services import DEFAULT_MAX_WORKERS

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_INVARIANT = 4

_SHARED_KEYS = {"func", "json", "csv", "deterministic", "verbose", "digits", "command"}


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise ParseError(f"{name} must be an integer, got {raw!r}", 0) from e


def _input_poly(args: argparse.Namespace):
    if args.coeffs is not None:
        coeffs = parse_rational_list(args.coeffs)
        if not any(coeffs):
            raise ParseError("the zero polynomial is not a valid input", 0)
        return poly_from_coeffs(coeffs)
    if getattr(args, "cs", None) is not None:
        cs = parse_rational_list(args.cs) if args.cs.strip() else []
        scale = parse_rational(args.scale)
        parity = Parity.ODD if args.odd else Parity.EVEN
        _, p = cl_from_cs(scale, parity, cs)
        return p
    values = parse_rational_list(args.hstar if hasattr(args, "hstar") else args.from_hstar)
    p = poly_from_hstar(HStarVector(degree=len(values) - 1, h=values))
    if p.is_zero:
        raise ParseError("the zero h*-vector is not a valid input", 0)
    return p


def cmd_analyze(args: argparse.Namespace, digits: int) -> Dict[str, Any]:
    p = _input_poly(args)
    h = hstar_from_poly(p)
    diamond = diamond_check(p)
    results: Dict[str, Any] = {
        "poly": poly_to_json(p),
        "degree": p.degree(),
        "hstar": [str(x) for x in h.h],
        "palindromic": diamond.palindromic,
        "nonnegative": diamond.nonnegative,
        "diamond": diamond.diamond,
        "hibi": hibi_check(h),
    }
    verdict = cl_detect(p)
    results["cl"] = not isinstance(verdict, NotCL)
    if isinstance(verdict, NotCL):
        results["not_cl"] = {"reason": verdict.reason.value, "detail": verdict.detail}
    else:
        report = cl_roots(verdict)
        results["form"] = to_jsonable(verdict)
        results["roots"] = [
            {
                "re": "-1/2",
                "im": certified_decimal(RealRoot(report.imag_poly, iv), digits),
                "multiplicity": iv.multiplicity,
            }
            for iv in report.roots
        ]
        if verdict.degree >= 1:
            top = cl_max_imaginary(verdict)
            results["max_imaginary"] = certified_decimal(top, digits)
            results["within_alpha_tilde"] = within_alpha_tilde(verdict)
    if diamond.palindromic:
        try:
            results["palindromic_coeffs"] = to_jsonable(express_in_pal(p).coeffs)
        except NotExpressibleError:
            logger.debug("Palindromic h*-vector but no palindromic-basis expansion.")
    return results


def cmd_hstar(args: argparse.Namespace, digits: int) -> Dict[str, Any]:
    p = _input_poly(args)
    h = hstar_from_poly(p)
    steps: List[str] = []
    if args.times_quadratic is not None:
        c = parse_rational(args.times_quadratic)
        h = mult_quadratic_update(h, c)
        p = p * (S_POLY + poly_from_coeffs([c]))
        steps.append(f"times z^2+z+{c}")
    if args.times_linear:
        h = mult_linear_update(h)
        p = p * B_ODD
        steps.append("times 2z+1")
    if steps and hstar_from_poly(p, degree=h.degree) != h:
        raise InvariantViolation("incremental h*-update disagrees with the direct transform")
    diamond = diamond_check(p)
    return {
        "poly": poly_to_json(p),
        "hstar": [str(x) for x in h.h],
        "steps": steps,
        "palindromic": diamond.palindromic,
        "nonnegative": diamond.nonnegative,
        "diamond": diamond.diamond,
        "hibi": hibi_check(h),
    }


def cmd_bounds(args: argparse.Namespace, digits: int) -> Dict[str, Any]:
    degrees = parse_degrees(args.degrees)
    for pos, d in enumerate(degrees):
        if d < 1:
            raise ParseError(f"degrees must be at least 1, got {d}", pos)
    rows = bounds_table(degrees, digits, args.max_workers)
    return {"rows": [to_jsonable(r) for r in rows]}


def cmd_cone(args: argparse.Namespace, digits: int) -> Dict[str, Any]:
    d = parse_int(args.degree)
    if d < 2:
        raise ParseError(f"cone needs a degree of at least 2, got {d}", 0)
    desc = cone_description(d)
    identity = vertex_identity_check(d)
    rows = [
        {
            "k": k,
            "normal": list(ineq.normal),
            "offset": ineq.offset,
            "vertex": [str(x) for x in vertex.v],
            "p_index": identity.mapping[k],
        }
        for k, (ineq, vertex) in enumerate(zip(desc.inequalities, desc.vertices))
    ]
    results: Dict[str, Any] = {
        "degree": d,
        "is_lattice": desc.is_lattice,
        "bijective": identity.bijective,
        "forms": to_jsonable(desc.forms),
        "rows": rows,
    }
    if args.check_appendix:
        comparison = appendix_compare(d)
        results["appendix"] = to_jsonable(comparison)
        results["appendix"]["full_match"] = comparison.full_match
    return results


def cmd_interlace(args: argparse.Namespace, digits: int) -> Dict[str, Any]:
    report = interlace_suite(parse_int(args.dmax), args.max_workers)
    return {"all_pass": report.all_pass, "rows": [to_jsonable(r) for r in report.rows]}


def cmd_omega(args: argparse.Namespace, digits: int) -> Dict[str, Any]:
    d = parse_int(args.degree)
    if args.target is not None:
        witness = omega_witness(d, parse_rational(args.target))
        return {"ok": witness.ok, "witness": to_jsonable(witness)}
    report = omega_sweep(d, parse_int(args.sweep), args.max_workers)
    return {
        "degree": d,
        "lower": report.lower,
        "upper": report.upper,
        "all_pass": report.all_pass,
        "failures": list(report.failures),
        "rows": [to_jsonable(w) for w in report.witnesses],
    }


def cmd_families(args: argparse.Namespace, digits: int) -> Dict[str, Any]:
    if args.prop36:
        if args.degree is None:
            raise ParseError("--prop36 needs --degree", 0)
        chain = prop36_order_check(parse_int(args.degree), digits)
        return {"chain": to_jsonable(chain)}
    if args.degree10:
        if args.m is None:
            raise ParseError("--degree10 needs --m", 0)
        report = degree10_family(parse_int(args.m), digits)
        return {"exceeds_a_sr": report.exceeds_a_sr, "family": to_jsonable(report)}
    reports = degree10_sweep(digits=digits, max_workers=args.max_workers)
    return {
        "all_exceed": all(r.exceeds_a_sr for r in reports),
        "rows": [to_jsonable(r) for r in reports],
    }


def _shared_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    fmt = shared.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="Emit the report as JSON")
    fmt.add_argument("--csv", action="store_true", help="Emit the rows table as CSV")
    shared.add_argument("--digits", type=int, default=None, help="Display digits (default $CLPOLY_DIGITS or 6)")
    shared.add_argument("--deterministic", action="store_true", help="Omit timing from the report")
    shared.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=None,
        help="Increase verbosity: -v INFO, -vv DEBUG",
    )
    return shared


def _add_poly_input(parser: argparse.ArgumentParser, hstar_flag: str) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--coeffs", help="Ascending coefficients, e.g. 1,1,1 for z^2+z+1")
    group.add_argument(hstar_flag, help="h*-vector h_0*,...,h_d*")
    if hstar_flag == "--hstar":
        group.add_argument("--cs", help="c_1,...,c_m of a·b(z)·Π(z^2+z+c_i)")
        parity = parser.add_mutually_exclusive_group()
        parity.add_argument("--even", action="store_true", help="b(z) = 1 (default)")
        parity.add_argument("--odd", action="store_true", help="b(z) = 2z+1")
        parser.add_argument("--scale", default="1", help="Leading scalar a for --cs")


def build_parser() -> argparse.ArgumentParser:
    shared = _shared_parser()
    parser = argparse.ArgumentParser(prog="clpoly", description="Exact analysis of CL-polynomials")
    parser.add_argument("--version", action="version", version=f"clpoly {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[shared], help="CL status, roots and h*-data of one polynomial")
    _add_poly_input(p, "--hstar")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("hstar", parents=[shared], help="h*-vector and its multiplicative updates")
    _add_poly_input(p, "--from-hstar")
    p.add_argument("--times-quadratic", metavar="C", help="Multiply by z^2+z+C")
    p.add_argument("--times-linear", action="store_true", help="Multiply by 2z+1")
    p.set_defaults(func=cmd_hstar)

    p = sub.add_parser("bounds", parents=[shared], help="Extremal imaginary parts per degree")
    p.add_argument("--degrees", required=True, help="e.g. 2..10,20,30")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("cone", parents=[shared], help="Vieta-space simplex of the (♦) region")
    p.add_argument("--degree", required=True)
    p.add_argument("--check-appendix", action="store_true", help="Compare with the bundled reference data")
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("interlace", parents=[shared], help="Interlacing checks for the p_0 family")
    p.add_argument("--dmax", required=True)
    p.set_defaults(func=cmd_interlace)

    p = sub.add_parser("omega", parents=[shared], help="Pencil witnesses for a target imaginary part")
    p.add_argument("--degree", required=True)
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--target", help="Rational imaginary part t0")
    target.add_argument("--sweep", help="Number of evenly spaced targets")
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("families", parents=[shared], help="Ordering checks and the degree-10 family")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--prop36", action="store_true", help="Order of a_sr^d among the a_i^d")
    which.add_argument("--degree10", action="store_true", help="One member of the degree-10 family")
    which.add_argument("--degree10-sweep", action="store_true", help="Members m = 2..14")
    p.add_argument("--degree")
    p.add_argument("--m")
    p.set_defaults(func=cmd_families)
    return parser


def run(args: argparse.Namespace) -> Report:
    """Execute a parsed command and wrap its results."""
    digits = args.digits if args.digits is not None else _env_int("CLPOLY_DIGITS", DEFAULT_DIGITS)
    if digits < 0:
        raise ParseError(f"digits must be non-negative, got {digits}", 0)
    args.max_workers = _env_int("CLPOLY_MAX_WORKERS", DEFAULT_MAX_WORKERS)
    handler: Callable[[argparse.Namespace, int], Dict[str, Any]] = args.func
    start = time.perf_counter()
    results = handler(args, digits)
    took = time.perf_counter() - start
    if args.csv and not isinstance(results.get("rows"), list):
        raise ParseError(f"--csv is only available for tabular results, not '{args.command}'", 0)
    inputs = {
        k: v for k, v in sorted(vars(args).items()) if k not in _SHARED_KEYS and k != "max_workers"
    }
    return Report(
        command=args.command,
        inputs=inputs,
        results=results,
        precision=digits,
        version=__version__,
        timing=None if args.deterministic else took,
    )


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        verbosity = args.verbose if args.verbose is not None else _env_int("CLPOLY_VERBOSE", 0)
        configure_logging(verbosity)
        report = run(args)
    except ParseError as e:
        print(f"clpoly: input error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as e:
        print(f"clpoly: domain error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except InvariantViolation as e:
        logger.error("Invariant violation: %s", e)
        print(f"clpoly: invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as e:
        print(f"clpoly: input error: {e}", file=sys.stderr)
        return EXIT_PARSE

    if args.json:
        out = render_json(report)
    elif args.csv:
        out = render_csv(report)
    else:
        out = render_text(report)
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
