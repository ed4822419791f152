# clpoly/poly_core.py
"""
Polynomial plumbing for CL-polynomials.

A CL-polynomial is a·b(z)·Π(z^2 + z + c_i) with real c_i >= 1/4 and
b(z) in {1, 2z+1}. Writing s = z^2 + z, it is a·b(z)·Π(s + c_i); the c_i
are kept collectively as the monic polynomial c_poly(u) = Π(u - c_i).
"""

import logging
from fractions import Fraction
from typing import Any, List, Sequence, Tuple, Union

from sympy import QQ, Poly

from .data_models import (
    CLForm,
    IsolatingInterval,
    NotCL,
    NotCLReason,
    Parity,
    RootReport,
    S,
    SDecomposition,
    T,
    U,
    W,
    Z,
    as_rational,
    coeffs_of,
    poly_from_coeffs,
    to_sympy,
    with_gen,
)
from .errors import InvariantViolation, NoRealRootError, NotCLError, RejectC, RejectScale
from .realroots import (
    DEFAULT_WIDTH,
    RealRoot,
    count_real_roots,
    isolate_real_roots,
    sqrt_root_interval,
    top_real_root,
)

logger = logging.getLogger(__name__)

QUARTER = Fraction(1, 4)
S_POLY = Poly(Z**2 + Z, Z, domain=QQ)
B_ODD = Poly(2 * Z + 1, Z, domain=QQ)

ComplexPair = Tuple[Fraction, Fraction]


def in_z(p: Poly) -> Poly:
    return p if p.gens == (Z,) else with_gen(p, Z)


def poly_eval(p: Poly, x: Union[Any, ComplexPair]) -> Union[Fraction, ComplexPair]:
    """
    Exact evaluation. A (re, im) pair is read as re + im·i and returns a pair.
    """
    coeffs = coeffs_of(p)
    if isinstance(x, tuple):
        re, im = as_rational(x[0]), as_rational(x[1])
        ar, ai = Fraction(0), Fraction(0)
        for c in reversed(coeffs):
            ar, ai = ar * re - ai * im + c, ar * im + ai * re
        return ar, ai
    x = as_rational(x)
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def s_decompose(p: Poly) -> SDecomposition:
    """Unique (g, h) with p(z) = g(z^2+z) + (2z+1)·h(z^2+z)."""
    q = in_z(p)
    g_coeffs: List[Fraction] = []
    h_coeffs: List[Fraction] = []
    while not q.is_zero:
        q, r = q.div(S_POLY)
        rc = coeffs_of(r) + [Fraction(0), Fraction(0)]
        r0, r1 = rc[0], rc[1]
        g_coeffs.append(r0 - r1 / 2)
        h_coeffs.append(r1 / 2)
    return SDecomposition(g=poly_from_coeffs(g_coeffs, S), h=poly_from_coeffs(h_coeffs, S))


def s_recompose(dec: SDecomposition) -> Poly:
    g = with_gen(dec.g, Z).compose(S_POLY)
    h = with_gen(dec.h, Z).compose(S_POLY)
    return g + B_ODD * h


def expand(form: CLForm) -> Poly:
    """scale·b(z)·Π(z^2+z+c_i), computed as scale·b(z)·(-1)^m·c_poly(-s)."""
    m = form.m
    s_coeffs = [c if (k + m) % 2 == 0 else -c for k, c in enumerate(coeffs_of(form.c_poly))]
    p = poly_from_coeffs(s_coeffs, Z).compose(S_POLY)
    if form.parity is Parity.ODD:
        p = p * B_ODD
    return p.mul_ground(to_sympy(form.scale))


def cl_from_cs(scale: Any, parity: Union[Parity, str], cs: Sequence[Any]) -> Tuple[CLForm, Poly]:
    """Build the CLForm for scale·b(z)·Π(z^2+z+c) and its expansion."""
    scale = as_rational(scale)
    if scale == 0:
        raise RejectScale("scale must be nonzero")
    cs = [as_rational(c) for c in cs]
    for c in cs:
        if c < QUARTER:
            raise RejectC(f"c = {c} is below 1/4; the factor z^2+z+{c} has roots off the critical line")
    c_poly = Poly(1, U, domain=QQ)
    for c in cs:
        c_poly = c_poly * poly_from_coeffs([-c, 1], U)
    form = CLForm(scale=scale, parity=Parity(parity), c_poly=c_poly)
    return form, expand(form)


def cl_detect(p: Poly) -> Union[CLForm, NotCL]:
    """
    Decide exactly whether p is a CL-polynomial.

    Even degree needs p = g(s), odd degree p = (2z+1)·h(s); the s-polynomial
    must then have only real roots, all at most -1/4 (Sturm counts).
    """
    if p.is_zero:
        raise ValueError("cl_detect is undefined for the zero polynomial")
    p = in_z(p)
    dec = s_decompose(p)
    if p.degree() % 2 == 0:
        if not dec.h.is_zero:
            return NotCL(reason=NotCLReason.MIXED_PARITY, detail="even degree with a (2z+1) component")
        w, parity = dec.g, Parity.EVEN
    else:
        if not dec.g.is_zero:
            return NotCL(reason=NotCLReason.MIXED_PARITY, detail="odd degree with a component free of (2z+1)")
        w, parity = dec.h, Parity.ODD

    m = w.degree()
    if m > 0:
        distinct = w.sqf_part().degree()
        real = count_real_roots(w)
        if real < distinct:
            return NotCL(
                reason=NotCLReason.COMPLEX_C,
                detail=f"{distinct - real} of {distinct} distinct c values are not real",
            )
        small = distinct - count_real_roots(w, None, -QUARTER)
        if small:
            return NotCL(reason=NotCLReason.C_SMALL, detail=f"{small} distinct c values are below 1/4")

    lc = as_rational(w.LC())
    c_coeffs = [c / lc if (k + m) % 2 == 0 else -c / lc for k, c in enumerate(coeffs_of(w))]
    logger.debug("Detected a CL-polynomial of degree %d (%s, m=%d).", p.degree(), parity.value, m)
    return CLForm(scale=lc, parity=parity, c_poly=poly_from_coeffs(c_coeffs, U))


def require_cl(p: Poly) -> CLForm:
    """cl_detect, raising NotCLError on a negative verdict."""
    verdict = cl_detect(p)
    if isinstance(verdict, NotCL):
        raise NotCLError(
            f"not a CL-polynomial: {verdict.reason.value} ({verdict.detail})",
            reason=verdict.reason.value,
        )
    return verdict


def square_substitute(r: Poly, e: int, gen=T) -> Poly:
    """t^e·r(t^2)."""
    coeffs: List[Fraction] = [Fraction(0)] * e
    for c in coeffs_of(r):
        coeffs.extend([c, Fraction(0)])
    return poly_from_coeffs(coeffs, gen)


def square_reduce(q: Poly, gen=W) -> Tuple[Poly, int]:
    """Split q(t) = t^e·r(t^2), e in {0, 1}; mixed parity raises ValueError."""
    if q.is_zero:
        raise ValueError("square_reduce is undefined for the zero polynomial")
    coeffs = coeffs_of(q)
    e = q.degree() % 2
    if any(c != 0 for c in coeffs[1 - e :: 2]):
        raise ValueError("polynomial mixes even and odd powers")
    return poly_from_coeffs(coeffs[e::2], gen), e


def _shifted_c_poly(form: CLForm) -> Poly:
    # R(w) = c_poly(w + 1/4): its roots are the squared imaginary parts.
    return with_gen(form.c_poly.shift(to_sympy(QUARTER)), W)


def cl_roots(form: CLForm, width: Fraction = DEFAULT_WIDTH) -> RootReport:
    """
    All roots -1/2 ± sqrt(c_i - 1/4)·i, plus -1/2 once for odd parity,
    as isolating intervals of the imaginary parts.
    """
    width = as_rational(width)
    r = _shifted_c_poly(form)
    imag_poly = square_substitute(r, form.parity.offset)
    zero_mult = form.parity.offset
    positive: List[IsolatingInterval] = []
    if form.m > 0:
        for iv in isolate_real_roots(r):
            t_iv = sqrt_root_interval(r, iv, width)
            if t_iv.is_exact and t_iv.lo == 0:
                zero_mult += 2 * iv.multiplicity
            else:
                positive.append(t_iv)
    roots: List[IsolatingInterval] = [iv.negated() for iv in reversed(positive)]
    if zero_mult:
        roots.append(IsolatingInterval(lo=0, hi=0, multiplicity=zero_mult))
    roots.extend(positive)
    logger.debug("Isolated %d distinct critical-line roots (degree %d).", len(roots), form.degree)
    return RootReport(parity=form.parity, imag_poly=imag_poly, roots=tuple(roots))


def cl_max_imaginary(form: CLForm, width: Fraction = DEFAULT_WIDTH) -> RealRoot:
    """The largest imaginary part among the roots, certified against t^e·c_poly(t^2+1/4)."""
    r = _shifted_c_poly(form)
    imag_poly = square_substitute(r, form.parity.offset)
    if form.m == 0:
        if form.parity is Parity.EVEN:
            raise NoRealRootError("a constant has no roots")
        return RealRoot(imag_poly, IsolatingInterval(lo=0, hi=0))
    top = top_real_root(r)
    if top is None:
        raise InvariantViolation("a CL form with quadratic factors has no real c value")
    return RealRoot(imag_poly, sqrt_root_interval(r, top, as_rational(width)))
