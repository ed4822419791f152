# clpoly/families.py
"""
Named families and the headline computations built on them: p_0^d, the
standard reflexive simplex polynomials, the extremal-root table, the
ordering checks between a_i^d and a_sr^d, the degree-10 family and the
witnesses that every imaginary part between ã_{d-1} and ã_d is attained.
"""

import logging
from fractions import Fraction
from typing import List, Sequence, Union

import mpmath
from sympy import Poly

from .data_models import (
    BoundsRow,
    ChainReport,
    CLForm,
    Degree10Report,
    HStarVector,
    IsolatingInterval,
    NotCL,
    OmegaSweepReport,
    OmegaWitness,
    as_rational,
    to_sympy,
)
from .errors import InvariantViolation, NoPositiveRootError, OutOfRangeError
from .hstar import diamond_check, poly_from_hstar
from .palindromic_basis import (
    alpha_tilde_root,
    extremal_root,
    pal_basis,
    restrict_to_cl,
)
from .poly_core import B_ODD, cl_detect, cl_max_imaginary, poly_eval, require_cl
from .realroots import (
    DEFAULT_DIGITS,
    DEFAULT_WIDTH,
    RealRoot,
    certified_decimal,
    compare_roots,
    compare_with_rational,
    format_decimal,
    refine,
)
from .services import DEFAULT_MAX_WORKERS, run_per_degree

logger = logging.getLogger(__name__)

ORDER_CHECK_DEGREES = range(2, 11)
DEGREE10_RANGE = range(2, 15)
DEFAULT_SWEEP = 20


def p0_poly(d: int) -> Poly:
    if d < 1:
        raise OutOfRangeError("p0_poly needs d >= 1")
    return pal_basis(0, d)


def simplex_sr_poly(d: int) -> Poly:
    """The polynomial with h*-vector (1, 1, ..., 1) of length d+1."""
    if d < 1:
        raise OutOfRangeError("simplex_sr_poly needs d >= 1")
    return poly_from_hstar(HStarVector(degree=d, h=[1] * (d + 1)))


def a_sr_root(d: int, width: Fraction = DEFAULT_WIDTH) -> RealRoot:
    """a_sr^d, the largest imaginary part among the roots of simplex_sr_poly(d)."""
    return cl_max_imaginary(require_cl(simplex_sr_poly(d)), width)


def a_sr(d: int, width: Fraction = DEFAULT_WIDTH) -> IsolatingInterval:
    return a_sr_root(d, width).interval


def braun_develin(d: int, digits: int = DEFAULT_DIGITS) -> str:
    """d²/π rendered to ``digits`` decimals (display only)."""
    with mpmath.workdps(digits + 40):
        scaled = mpmath.nint(mpmath.mpf(d * d) / mpmath.pi * 10**digits)
        return format_decimal(Fraction(int(scaled), 10**digits), digits)


def bounds_row(d: int, digits: int = DEFAULT_DIGITS) -> BoundsRow:
    at = alpha_tilde_root(d)
    bs = a_sr_root(d)
    disc = Fraction(d) * (d - Fraction(1, 2))
    return BoundsRow(
        degree=d,
        alpha_tilde=certified_decimal(at, digits),
        beta_sr=certified_decimal(bs, digits),
        braun_develin=braun_develin(d, digits),
        braun_disc=disc,
        within_disc=compare_with_rational(at, disc) < 0,
        alpha_tilde_interval=at.interval,
        beta_sr_interval=bs.interval,
    )


def bounds_table(
    ds: Sequence[int],
    digits: int = DEFAULT_DIGITS,
    max_workers: int = DEFAULT_MAX_WORKERS,
) -> List[BoundsRow]:
    """Rows for each degree in ``ds``, ordered by degree."""
    for d in ds:
        if d < 1:
            raise OutOfRangeError(f"bounds rows need d >= 1, got {d}")
    results, _ = run_per_degree(
        lambda d: bounds_row(d, digits), ds, max_workers, error_mode="raise"
    )
    rows = [results[d] for d in sorted(results)]
    outside = [r.degree for r in rows if r.degree >= 2 and not r.within_disc]
    if outside:
        logger.warning("ã_d reaches d(d-1/2) at degrees %s.", outside)
    return rows


def _chain_indices(d: int) -> List[int]:
    # a_1 < a_sr < a_0 up to degree 5; a_2 < a_sr < a_1 < a_0 from degree 6 on
    return [1, 0] if d <= 5 else [2, 1, 0]


def prop36_order_check(d: int, digits: int = DEFAULT_DIGITS) -> ChainReport:
    """
    Exact check of the ordering of a_sr^d among the a_i^d.

    Holds for 2 <= d <= 9. At d = 10 the four-term chain is reported with
    expected=False. An index without a root off the real axis is listed as
    "none" and skipped in the comparisons.
    """
    if d not in ORDER_CHECK_DEGREES:
        raise OutOfRangeError(f"order check is defined for 2 <= d <= 10, got {d}")
    lowest, *upper = _chain_indices(d)
    entries: List[tuple] = []
    for name, fn in [
        (f"a_{lowest}", lambda: extremal_root(lowest, d)),
        ("a_sr", lambda: a_sr_root(d)),
        *[(f"a_{i}", (lambda i=i: extremal_root(i, d))) for i in upper],
    ]:
        try:
            entries.append((name, fn()))
        except NoPositiveRootError:
            entries.append((name, None))
    present = [root for _, root in entries if root is not None]
    holds = all(compare_roots(a, b) < 0 for a, b in zip(present, present[1:]))
    return ChainReport(
        degree=d,
        names=tuple(name for name, _ in entries),
        values=tuple(
            "none" if root is None else certified_decimal(root, digits) for _, root in entries
        ),
        holds=holds,
        expected=d <= 9,
    )


def degree10_poly(m: int) -> Poly:
    """p_0 + p_1 + m·p_2 + p_3 + p_4 + p_5 at degree 10."""
    p = pal_basis(0, 10)
    for i in range(1, 6):
        term = pal_basis(i, 10)
        p = p + (term.mul_ground(m) if i == 2 else term)
    return p


def degree10_family(m: int, digits: int = DEFAULT_DIGITS) -> Degree10Report:
    if isinstance(m, bool) or not isinstance(m, int):
        raise TypeError("m must be an integer")
    f = degree10_poly(m)
    reference = a_sr_root(10)
    report = diamond_check(f)
    verdict = cl_detect(f)
    if isinstance(verdict, NotCL):
        logger.info("m=%d: not a CL-polynomial (%s).", m, verdict.reason.value)
        return Degree10Report(
            m=m,
            is_cl=False,
            diamond=report.diamond,
            a_sr=certified_decimal(reference, digits),
        )
    top = cl_max_imaginary(verdict)
    return Degree10Report(
        m=m,
        is_cl=True,
        diamond=report.diamond,
        max_imaginary=certified_decimal(top, digits),
        a_sr=certified_decimal(reference, digits),
        comparison=compare_roots(top, reference),
    )


def degree10_sweep(
    ms: Sequence[int] = DEGREE10_RANGE,
    digits: int = DEFAULT_DIGITS,
    max_workers: int = DEFAULT_MAX_WORKERS,
) -> List[Degree10Report]:
    results, _ = run_per_degree(
        lambda m: degree10_family(m, digits), ms, max_workers, error_mode="raise", label="m"
    )
    return [results[m] for m in sorted(results)]


def _lower_root(d: int) -> RealRoot:
    # ã_0 := 0 = ã_1
    return alpha_tilde_root(max(d - 1, 1))


def _restriction_value(p: Poly, t: Fraction) -> Fraction:
    r = restrict_to_cl(p)
    return r.sign * as_rational(r.q.eval(to_sympy(t)))


def omega_witness(d: int, t0: Union[Fraction, int, str]) -> OmegaWitness:
    """
    The member of the pencil p_0^d + c·(2z+1)·p_0^(d-1), c > 0, with a
    root at -1/2 + t0·i, for ã_{d-1} < t0 < ã_d.
    """
    if d < 1:
        raise OutOfRangeError("omega_witness needs d >= 1")
    t0 = as_rational(t0)
    inside = (
        d > 1
        and compare_with_rational(_lower_root(d), t0) < 0
        and compare_with_rational(alpha_tilde_root(d), t0) > 0
    )
    if not inside:
        raise OutOfRangeError(f"target {t0} is not strictly between ã_{d - 1} and ã_{d}")

    base = p0_poly(d)
    cross = B_ODD * p0_poly(d - 1)
    # both restrictions carry the same power of i, so the ratio is real
    denominator = _restriction_value(cross, t0)
    if denominator == 0:
        raise InvariantViolation(f"(2z+1)·p_0^{d - 1} vanishes at the target {t0}")
    c = -_restriction_value(base, t0) / denominator
    if c <= 0:
        raise InvariantViolation(f"pencil parameter {c} at target {t0} is not positive")

    f = base + cross.mul_ground(to_sympy(c))
    report = diamond_check(f)
    witness = OmegaWitness(
        degree=d,
        target=t0,
        c=c,
        poly=f,
        is_cl=report.is_cl,
        diamond=report.diamond,
        vanishes=poly_eval(f, (Fraction(-1, 2), t0)) == (0, 0),
    )
    if not witness.ok:
        logger.warning("Degree %d, target %s: witness failed verification.", d, t0)
    return witness


def omega_sweep(
    d: int, count: int = DEFAULT_SWEEP, max_workers: int = DEFAULT_MAX_WORKERS
) -> OmegaSweepReport:
    """``count`` evenly spaced rational targets strictly inside (ã_{d-1}, ã_d)."""
    if d < 2:
        raise OutOfRangeError("omega_sweep needs d >= 2")
    if count < 1:
        raise OutOfRangeError("omega_sweep needs at least one target")
    lower, upper = _lower_root(d), alpha_tilde_root(d)
    lo = refine(lower.poly, lower.interval).hi
    hi = refine(upper.poly, upper.interval).lo
    step = (hi - lo) / (count + 1)
    targets = {k: lo + k * step for k in range(1, count + 1)}
    results, errors = run_per_degree(
        lambda k: omega_witness(d, targets[k]), targets, max_workers, label="target"
    )
    failures = [f"{targets[e['target']]}: {e['error']}" for e in errors]
    failures += [str(w.target) for w in results.values() if not w.ok]
    return OmegaSweepReport(
        degree=d,
        lower=format_decimal(lo, DEFAULT_DIGITS),
        upper=format_decimal(hi, DEFAULT_DIGITS),
        witnesses=tuple(results[k] for k in sorted(results)),
        failures=tuple(failures),
    )


def degree2_imaginary_squared(c) -> Fraction:
    """Squared imaginary part of the roots for h* = (1, c, 1): (12+4c-c²)/(2c+4)²."""
    c = as_rational(c)
    if not 0 <= c < 6:
        raise OutOfRangeError(f"degree-2 closed form needs 0 <= c < 6, got {c}")
    return (12 + 4 * c - c * c) / (2 * c + 4) ** 2


def within_alpha_tilde(form: CLForm) -> bool:
    """Whether every root of the form has imaginary part at most ã_d."""
    if form.degree < 1:
        raise OutOfRangeError("constants have no roots to bound")
    if form.m == 0:
        return True
    return compare_roots(cl_max_imaginary(form), alpha_tilde_root(form.degree)) <= 0
