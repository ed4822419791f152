# clpoly/palindromic_basis.py
"""
The binomial basis b_i^d, the palindromic basis p_i^d = b_i^d + b_{d-i}^d,
restriction to the critical line and the extremal roots a_i^d.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import List

from sympy import Matrix, Poly

from .data_models import (
    ChainReport,
    CLRestriction,
    IsolatingInterval,
    PalindromicCoeffs,
    T,
    as_rational,
    coeffs_of,
    poly_from_coeffs,
    to_sympy,
)
from .errors import (
    InvariantViolation,
    NoPositiveRootError,
    NotCLClassError,
    NotExpressibleError,
    OutOfRangeError,
)
from .hstar import binomial_products
from .poly_core import in_z, square_reduce
from .realroots import (
    DEFAULT_DIGITS,
    DEFAULT_WIDTH,
    RealRoot,
    certified_decimal,
    compare_roots,
    roots_above,
    sign_at,
    sqrt_root_interval,
    top_real_root,
)

logger = logging.getLogger(__name__)


def binom_basis(i: int, d: int) -> Poly:
    """b_i^d(z) = (z+d-i)(z+d-i-1)···(z+1-i)."""
    if not 0 <= i <= d:
        raise OutOfRangeError(f"binomial basis index {i} outside 0..{d}")
    return binomial_products(d)[i]


@lru_cache(maxsize=256)
def pal_basis(i: int, d: int) -> Poly:
    """p_i^d = b_i^d + b_{d-i}^d, or b_i^d alone for the middle index of even d."""
    if not 0 <= i <= d // 2:
        raise OutOfRangeError(f"palindromic basis index {i} outside 0..{d // 2}")
    if 2 * i == d:
        return binom_basis(i, d)
    return binom_basis(i, d) + binom_basis(d - i, d)


def express_in_pal(p: Poly) -> PalindromicCoeffs:
    """
    Coefficients x_i with p = Σ x_i·p_i^d, d = deg p.

    The x_i coincide with h_0*..h_m* of p/d!; a polynomial whose h*-vector
    is not palindromic is outside the span.
    """
    p = in_z(p)
    if p.is_zero:
        raise ValueError("express_in_pal is undefined for the zero polynomial")
    d = p.degree()
    m = d // 2
    columns = [coeffs_of(pal_basis(i, d)) for i in range(m + 1)]
    target = coeffs_of(p)
    system = Matrix(
        [[to_sympy(col[k]) if k < len(col) else 0 for col in columns] for k in range(d + 1)]
    )
    rhs = Matrix([to_sympy(c) for c in target])
    try:
        solution, _params = system.gauss_jordan_solve(rhs)
    except ValueError as exc:
        raise NotExpressibleError(
            f"degree-{d} polynomial is not in the span of the palindromic basis"
        ) from exc
    return PalindromicCoeffs(degree=d, coeffs=[as_rational(x) for x in solution])


def restrict_to_cl(p: Poly) -> CLRestriction:
    """
    Write p(-1/2 + t·i) = A(t) + B(t)·i. Even degree needs B ≡ 0 and odd
    degree A ≡ 0; the surviving part, sign-normalized to a positive leading
    coefficient, is q.
    """
    p = in_z(p)
    if p.is_zero:
        raise ValueError("restrict_to_cl is undefined for the zero polynomial")
    d = p.degree()
    shifted = coeffs_of(p.shift(to_sympy(Fraction(-1, 2))))
    a_coeffs: List[Fraction] = []
    b_coeffs: List[Fraction] = []
    for k, c in enumerate(shifted):
        # i^k cycles through 1, i, -1, -i
        unit = c if k % 4 in (0, 1) else -c
        if k % 2:
            a_coeffs.append(Fraction(0))
            b_coeffs.append(unit)
        else:
            a_coeffs.append(unit)
            b_coeffs.append(Fraction(0))
    imaginary = bool(d % 2)
    keep, drop = (b_coeffs, a_coeffs) if imaginary else (a_coeffs, b_coeffs)
    if any(drop):
        raise NotCLClassError(
            f"p(-1/2 + t·i) has both real and imaginary parts (degree {d})"
        )
    q = poly_from_coeffs(keep, T)
    sign = 1 if q.LC() > 0 else -1
    if sign < 0:
        q = -q
    return CLRestriction(degree_mod4=d % 4, imaginary=imaginary, sign=sign, q=q)


@lru_cache(maxsize=256)
def _pal_restriction(i: int, d: int) -> CLRestriction:
    return restrict_to_cl(pal_basis(i, d))


def extremal_root(i: int, d: int, width: Fraction = DEFAULT_WIDTH) -> RealRoot:
    """
    a_i^d: the largest positive real root of the CL-restriction of p_i^d,
    together with the restriction polynomial that certifies it.
    """
    q = _pal_restriction(i, d).q
    r, _e = square_reduce(q)
    if roots_above(r, Fraction(0)) == 0:
        if sign_at(q, Fraction(0)) == 0:
            # only the real root -1/2 on the line: the largest imaginary part is 0
            return RealRoot(q, IsolatingInterval(lo=0, hi=0))
        if 2 * i == d:
            raise NoPositiveRootError(
                f"p_{i}^{d} is the middle basis element and has no root with positive imaginary part"
            )
        raise InvariantViolation(f"p_{i}^{d} has no root with positive imaginary part")
    return RealRoot(q, sqrt_root_interval(r, top_real_root(r), as_rational(width)))


def extremal_a(i: int, d: int, width: Fraction = DEFAULT_WIDTH) -> IsolatingInterval:
    return extremal_root(i, d, width).interval


def alpha_tilde_root(d: int, width: Fraction = DEFAULT_WIDTH) -> RealRoot:
    """ã_d, the largest imaginary part of a root of p_0^d (0 for d = 1)."""
    if d < 1:
        raise OutOfRangeError("alpha_tilde needs d >= 1")
    return extremal_root(0, d, width)


def alpha_tilde(d: int, width: Fraction = DEFAULT_WIDTH) -> IsolatingInterval:
    return alpha_tilde_root(d, width).interval


def extremal_chain(d: int, digits: int = DEFAULT_DIGITS) -> ChainReport:
    """a_0^d > a_1^d > ... over the indices where a_i^d exists, listed ascending."""
    found = []
    for i in range(d // 2 + 1):
        try:
            found.append((f"a_{i}", extremal_root(i, d)))
        except NoPositiveRootError:
            logger.debug("Skipping the middle index %d at degree %d.", i, d)
    found.reverse()
    holds = all(compare_roots(a, b) < 0 for (_, a), (_, b) in zip(found, found[1:]))
    return ChainReport(
        degree=d,
        names=tuple(name for name, _ in found),
        values=tuple(certified_decimal(root, digits) for _, root in found),
        holds=holds,
    )
