# clpoly/interlace.py
"""
Interlacing on the critical line (exact) and on the unit circle (numeric oracle).

f of degree d CL-interlaces g of degree d+1 when, ordering roots by imaginary
part with multiplicity slots, b_1 <= a_1 <= b_2 <= ... <= a_d <= b_{d+1}.
"""

import logging
import math
from fractions import Fraction
from typing import List

import numpy as np
from sympy import Poly

from .data_models import (
    Carrier,
    HStarVector,
    InterlaceRow,
    InterlaceSuiteReport,
    NotCL,
    OrderedRootList,
    as_rational,
    to_sympy,
)
from .errors import DegreeMismatchError, NotCLError, NotOnCircleError, OutOfRangeError
from .palindromic_basis import pal_basis
from .poly_core import B_ODD, cl_detect, cl_roots, in_z, require_cl
from .realroots import DEFAULT_WIDTH, RealRoot, compare_roots
from .services import DEFAULT_MAX_WORKERS, run_per_degree

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9
TWO_PI = 2 * math.pi


def cl_root_order(p: Poly, width: Fraction = DEFAULT_WIDTH) -> OrderedRootList:
    """Ascending CL roots (imaginary parts) of a CL-polynomial."""
    roots = cl_roots(require_cl(p), width).roots
    # a repeated root fills several slots at one position
    coincident = any(iv.multiplicity > 1 for iv in roots) or any(
        a.hi >= b.lo for a, b in zip(roots, roots[1:])
    )
    return OrderedRootList(carrier=Carrier.CL, positions=roots, coincident=coincident)


def _slots(p: Poly) -> List[RealRoot]:
    report = cl_roots(require_cl(p))
    out: List[RealRoot] = []
    for iv in report.roots:
        out.extend([RealRoot(report.imag_poly, iv)] * iv.multiplicity)
    return out


def cl_interlaces(f: Poly, g: Poly) -> bool:
    """Exact check that the CL roots of f weave between those of g."""
    f, g = in_z(f), in_z(g)
    if g.degree() != f.degree() + 1:
        raise DegreeMismatchError(
            f"interlacing needs deg g = deg f + 1, got {f.degree()} and {g.degree()}"
        )
    a, b = _slots(f), _slots(g)
    for k, ak in enumerate(a):
        if compare_roots(b[k], ak) > 0 or compare_roots(ak, b[k + 1]) > 0:
            logger.debug("Weaving breaks at slot %d.", k)
            return False
    return True


def _trimmed(h: HStarVector) -> List[Fraction]:
    coeffs = list(h.h)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _angles(h: HStarVector, tol: float) -> np.ndarray:
    coeffs = _trimmed(h)
    n = len(coeffs) - 1
    if n >= 1 and coeffs[0] == coeffs[-1] == 1 and not any(coeffs[1:-1]):
        # 1 + t^n: roots exp((1+2k)πi/n), taken exactly
        raw = np.array([(1 + 2 * k) * math.pi / n for k in range(n)])
        return np.angle(np.exp(1j * raw))
    roots = np.roots(np.array([float(c) for c in reversed(coeffs)]))
    off = np.abs(np.abs(roots) - 1.0)
    if roots.size and float(off.max()) > tol:
        raise NotOnCircleError(
            f"a root has modulus {float(np.abs(roots)[off.argmax()]):.12g}, off the unit circle"
        )
    return np.angle(roots)


def circle_root_order(h: HStarVector, tol: float = DEFAULT_TOLERANCE) -> OrderedRootList:
    """
    Principal angles in [0, 2pi) of the roots of h(t), ascending. Angles
    within ``tol`` of a cyclic neighbour are flagged coincident.
    """
    angles = sorted(float(x) for x in np.mod(_angles(h, tol), TWO_PI))
    gaps = [b - a for a, b in zip(angles, angles[1:])]
    if len(angles) > 1:
        gaps.append(angles[0] + TWO_PI - angles[-1])
    return OrderedRootList(
        carrier=Carrier.UNIT_CIRCLE,
        positions=tuple(angles),
        coincident=any(g <= tol for g in gaps),
    )


def circle_interlaces(
    hf: HStarVector, hg: HStarVector, tol: float = DEFAULT_TOLERANCE
) -> bool:
    """Whether the roots of h_f(t) and h_g(t) interlace on the unit circle."""
    nf, ng = len(_trimmed(hf)) - 1, len(_trimmed(hg)) - 1
    if nf + 1 != ng:
        raise DegreeMismatchError(
            f"circle interlacing needs deg hg = deg hf + 1, got {nf} and {ng}"
        )
    of, og = circle_root_order(hf, tol), circle_root_order(hg, tol)
    if of.coincident or og.coincident:
        logger.debug("Repeated roots on the unit circle; slots are compared with tolerance %g.", tol)
    af, ag = np.array(of.positions, dtype=float), np.array(og.positions, dtype=float)
    # Cyclic alternation: some root of h_g must open a b_1 <= a_1 <= ... <= b_n run.
    for start in np.mod(ag, TWO_PI):
        cut = start - tol
        a = np.sort(np.mod(af - cut, TWO_PI))
        b = np.sort(np.mod(ag - cut, TWO_PI))
        if all(b[k] <= a[k] + tol and a[k] <= b[k + 1] + tol for k in range(nf)):
            return True
    return False


def p0_times_linear(d: int) -> Poly:
    return pal_basis(0, d) * B_ODD


def pencil_check(d: int, c) -> bool:
    """p_0^{d+1} + c(2z+1)p_0^d (c > 0) is CL and CL-interlaced by p_0^d."""
    c = as_rational(c)
    if c <= 0:
        raise OutOfRangeError("pencil parameter c must be positive")
    combo = pal_basis(0, d + 1) + p0_times_linear(d).mul_ground(to_sympy(c))
    if isinstance(cl_detect(combo), NotCL):
        return False
    return cl_interlaces(pal_basis(0, d), combo)


def _suite_row(d: int) -> InterlaceRow:
    p0_chain = cl_interlaces(pal_basis(0, d), pal_basis(0, d + 1))
    combo = pal_basis(0, d + 1) + p0_times_linear(d)
    try:
        pencil = cl_interlaces(combo, p0_times_linear(d + 1))
    except NotCLError as e:
        logger.warning("Degree %d: %s", d, e)
        pencil = False
    return InterlaceRow(degree=d, p0_chain=p0_chain, pencil=pencil)


def interlace_suite(d_max: int, max_workers: int = DEFAULT_MAX_WORKERS) -> InterlaceSuiteReport:
    """
    For d = 1..d_max: p_0^d ⋖ p_0^{d+1}, and p_0^{d+1} + (2z+1)p_0^d ⋖ (2z+1)p_0^{d+1}.
    """
    if d_max < 1:
        raise OutOfRangeError("interlace_suite needs d_max >= 1")
    results, errors = run_per_degree(_suite_row, range(1, d_max + 1), max_workers)
    for err in errors:
        results[err["degree"]] = InterlaceRow(degree=err["degree"], p0_chain=False, pencil=False)
    rows = tuple(results[d] for d in sorted(results))
    failed = [r.degree for r in rows if not (r.p0_chain and r.pencil)]
    if failed:
        logger.warning("Interlacing failed at degrees %s.", failed)
    return InterlaceSuiteReport(d_max=d_max, rows=rows)
