# clpoly/hstar.py
"""
h*-vectors of arbitrary rational polynomials.

For p of nominal degree d, Σ_k p(k) t^k = h*(t) / (1-t)^(d+1). The
numerator is recovered by finite differences and inverted through the
binomial basis binom(z+d-i, d).
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import List, Optional, Tuple

from sympy import QQ, Poly

from .data_models import DiamondReport, HStarVector, NotCL, Z, as_rational, to_sympy
from .poly_core import cl_detect, in_z, poly_eval

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def binomial_products(d: int) -> Tuple[Poly, ...]:
    """
    b_i(z) = (z+d-i)(z+d-i-1)···(z+1-i) = d!·binom(z+d-i, d), for i = 0..d.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    b = Poly(1, Z, domain=QQ)
    for j in range(1, d + 1):
        b = b * Poly(Z + j, Z, domain=QQ)
    out = [b]
    for i in range(d):
        b = (b * Poly(Z - i, Z, domain=QQ)).exquo(Poly(Z + d - i, Z, domain=QQ))
        out.append(b)
    return tuple(out)


def hstar_from_poly(p: Poly, degree: Optional[int] = None) -> HStarVector:
    """
    h_i* = Σ_{j<=i} (-1)^j·binom(d+1, j)·p(i-j).

    ``degree`` overrides the nominal degree d (it may exceed deg p; the
    extra trailing entries then carry the information).
    """
    p = in_z(p)
    if degree is None:
        if p.is_zero:
            raise ValueError("the zero polynomial needs an explicit nominal degree")
        degree = p.degree()
    elif not p.is_zero and degree < p.degree():
        raise ValueError(f"nominal degree {degree} is below the actual degree {p.degree()}")
    d = degree
    values = [poly_eval(p, k) for k in range(d + 1)]
    signed = [(-1) ** j * comb(d + 1, j) for j in range(d + 1)]
    h = [
        sum((signed[j] * values[i - j] for j in range(i + 1)), Fraction(0))
        for i in range(d + 1)
    ]
    return HStarVector(degree=d, h=h)


def poly_from_hstar(h: HStarVector) -> Poly:
    """Σ h_i*·binom(z+d-i, d)."""
    d = h.degree
    acc = Poly(0, Z, domain=QQ)
    for hi, b in zip(h.h, binomial_products(d)):
        if hi:
            acc = acc + b.mul_ground(to_sympy(hi))
    return acc.quo_ground(factorial(d))


def is_palindromic(h: HStarVector) -> bool:
    return h.h == tuple(reversed(h.h))


def diamond_check(p: Poly) -> DiamondReport:
    """(♦) = palindromic and non-negative h*-vector; CL-ness reported alongside."""
    h = hstar_from_poly(p)
    palindromic = is_palindromic(h)
    nonnegative = all(x >= 0 for x in h.h)
    is_cl = not isinstance(cl_detect(p), NotCL)
    return DiamondReport(
        is_cl=is_cl,
        palindromic=palindromic,
        nonnegative=nonnegative,
        diamond=palindromic and nonnegative,
    )


def mult_quadratic_update(h: HStarVector, c) -> HStarVector:
    """
    h*-vector of (z^2+z+c)·p from that of p: entry h_i* feeds
    α = i^2+i+c into slot i, β = 2(di-i^2+d+1-c) into i+1 and
    γ = d^2-2di-i+i^2+d+c into i+2.
    """
    c = as_rational(c)
    d = h.degree
    out: List[Fraction] = [Fraction(0)] * (d + 3)
    for i, hi in enumerate(h.h):
        if not hi:
            continue
        out[i] += (i * i + i + c) * hi
        out[i + 1] += 2 * (d * i - i * i + d + 1 - c) * hi
        out[i + 2] += (d * d - 2 * d * i - i + i * i + d + c) * hi
    return HStarVector(degree=d + 2, h=out)


def mult_linear_update(h: HStarVector) -> HStarVector:
    """h*-vector of (2z+1)·p: h_n* gives (2n+1) to slot n and (2(d-n)+1) to n+1."""
    d = h.degree
    out: List[Fraction] = [Fraction(0)] * (d + 2)
    for n, hn in enumerate(h.h):
        out[n] += (2 * n + 1) * hn
        out[n + 1] += (2 * (d - n) + 1) * hn
    return HStarVector(degree=d + 1, h=out)


def hibi_check(h: HStarVector) -> Optional[bool]:
    """
    h_1* <= h_i* for 1 <= i <= d-1; None when h_d* = 0 (the lower bound
    theorem does not apply).
    """
    d = h.degree
    if h.h[d] == 0:
        return None
    if d < 2:
        return True
    return all(h.h[1] <= h.h[i] for i in range(1, d))
