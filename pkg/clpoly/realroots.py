# clpoly/realroots.py
"""
Exact real-root counting, isolation and refinement over QQ.

Every yes/no decision here is an exact sign evaluation at a rational point.
Counting uses Descartes' rule where it is conclusive and Sturm chains
otherwise. Isolation delegates to sympy's real-root isolator, the greatest
root is bracketed from a numpy estimate, and refinement is plain bisection.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm
from typing import Callable, List, NamedTuple, Optional, Tuple

import numpy as np
from sympy import Poly

from .data_models import IsolatingInterval, as_rational, to_sympy
from .errors import InvariantViolation, NoRealRootError, SeparationError

logger = logging.getLogger(__name__)

DEFAULT_WIDTH = Fraction(1, 2**64)
DEFAULT_DIGITS = 6
MAX_SEPARATION_ROUNDS = 256
MAX_DECIMAL_ROUNDS = 64
HINT_SCALE = 2**20


class RealRoot(NamedTuple):
    """A real algebraic number: the unique root of ``poly`` inside ``interval``."""

    poly: Poly
    interval: IsolatingInterval

    def refined(self, width: Fraction = DEFAULT_WIDTH) -> "RealRoot":
        return RealRoot(self.poly, refine(self.poly, self.interval, width))


@lru_cache(maxsize=512)
def _int_coeffs(p: Poly) -> Tuple[int, ...]:
    # Descending coefficients scaled by a positive integer; signs are unchanged.
    coeffs = [as_rational(c) for c in p.all_coeffs()]
    den = lcm(*(c.denominator for c in coeffs))
    return tuple(int(c * den) for c in coeffs)


def sign_at(p: Poly, x: Fraction) -> int:
    """Exact sign of p(x) via homogeneous integer Horner evaluation."""
    cs = _int_coeffs(p)
    a, b = x.numerator, x.denominator
    acc = cs[0]
    pb = 1
    for c in cs[1:]:
        pb *= b
        acc = acc * a + c * pb
    return (acc > 0) - (acc < 0)


def _sign_at_infinity(p: Poly, direction: int) -> int:
    lc = as_rational(p.LC())
    s = (lc > 0) - (lc < 0)
    if direction < 0 and p.degree() % 2:
        s = -s
    return s


@lru_cache(maxsize=256)
def _sturm_chain(p: Poly) -> Tuple[Poly, ...]:
    # sympy builds the chain from the square-free part.
    return tuple(p.sturm())


@lru_cache(maxsize=256)
def _sqf(p: Poly) -> Poly:
    return p.sqf_part()


@lru_cache(maxsize=256)
def _sqf_factors(p: Poly) -> Tuple[Tuple[Poly, int], ...]:
    return tuple((g, k) for g, k in p.sqf_list()[1] if g.degree() > 0)


def _variations(chain: Tuple[Poly, ...], x: Optional[Fraction], direction: int) -> int:
    if x is None:
        signs = [_sign_at_infinity(q, direction) for q in chain]
    else:
        signs = [sign_at(q, x) for q in chain]
    nonzero = [s for s in signs if s]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def count_real_roots(
    p: Poly, lo: Optional[Fraction] = None, hi: Optional[Fraction] = None
) -> int:
    """
    Number of distinct real roots of p in (lo, hi].

    ``None`` stands for -inf (lo) or +inf (hi). A root sitting exactly at
    ``hi`` is counted, one at ``lo`` is not.
    """
    if p.is_zero:
        raise ValueError("count_real_roots is undefined for the zero polynomial")
    if p.degree() < 1:
        return 0
    lo = None if lo is None else as_rational(lo)
    hi = None if hi is None else as_rational(hi)
    if lo is not None and hi is not None and hi <= lo:
        return 0
    chain = _sturm_chain(p)
    return _variations(chain, lo, -1) - _variations(chain, hi, 1)


def roots_above(p: Poly, x: Fraction) -> int:
    """
    Number of distinct real roots of p strictly greater than x.

    Descartes' rule on f(x + y), f the square-free part, is exact when it
    shows at most one sign variation; otherwise the Sturm count decides.
    """
    f = _sqf(p)
    if f.degree() < 1:
        return 0
    x = as_rational(x)
    shifted = [as_rational(c) for c in f.shift(to_sympy(x)).all_coeffs()]
    signs = [c > 0 for c in shifted if c != 0]
    variations = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    if variations <= 1:
        return variations
    return count_real_roots(f, x, None)


def _open_count(f: Poly, lo: Fraction, hi: Fraction) -> int:
    """Distinct roots of f in the open interval (lo, hi)."""
    return roots_above(f, lo) - roots_above(f, hi) - int(sign_at(f, hi) == 0)


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational of least denominator in [lo, hi] (continued-fraction walk)."""
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_between(-hi, -lo)
    fl = lo.numerator // lo.denominator
    if fl == lo:
        return lo
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl))


def bisect(
    sign_fn: Callable[[Fraction], int],
    lo: Fraction,
    hi: Fraction,
    width: Fraction,
    s_lo: int,
) -> Tuple[Fraction, Fraction]:
    """Halve [lo, hi] around a sign change until it is at most ``width`` wide."""
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = sign_fn(mid)
        if s == 0:
            return mid, mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _collapse(sign_fn: Callable[[Fraction], int], lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    # Only an interior zero is the isolated root; an endpoint may belong to a neighbour.
    if lo == hi:
        return lo, hi
    x = simplest_between(lo, hi)
    if lo < x < hi and sign_fn(x) == 0:
        return x, x
    return lo, hi


def _tighten(f: Poly, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    """
    Shrink [lo, hi], which holds exactly one root of the square-free f in its
    interior, until f is nonzero at both ends.
    """
    while sign_at(f, lo) == 0 or sign_at(f, hi) == 0:
        mid = (lo + hi) / 2
        if sign_at(f, mid) == 0:
            return mid, mid
        if _open_count(f, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


def _settle(f: Poly, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    """
    The single root of the square-free f claimed by [lo, hi]: an interval with
    f nonzero at both ends, or [x, x] when that root is an endpoint.
    """
    if lo == hi or (sign_at(f, lo) != 0 and sign_at(f, hi) != 0):
        return lo, hi
    inside = _open_count(f, lo, hi)
    if inside == 1:
        return _tighten(f, lo, hi)
    zeros = [x for x in (lo, hi) if sign_at(f, x) == 0]
    if inside == 0 and len(zeros) == 1:
        return zeros[0], zeros[0]
    raise ValueError(f"[{lo}, {hi}] does not isolate a single real root")


def _multiplicity(p: Poly, lo: Fraction, hi: Fraction) -> int:
    # The square-free factors are coprime: exactly one of them owns the root.
    for g, k in _sqf_factors(p):
        s_lo, s_hi = sign_at(g, lo), sign_at(g, hi)
        if (lo == hi and s_lo == 0) or (lo < hi and s_lo != s_hi):
            return k
    raise InvariantViolation(f"no square-free factor has a root in [{lo}, {hi}]")


def isolate_real_roots(p: Poly) -> List[IsolatingInterval]:
    """
    Disjoint isolating intervals, ascending, for every distinct real root of p.

    Multiplicities come from sympy's square-free decomposition. sympy's
    intervals are closed and may end on a neighbouring root; such ends are
    pulled inwards, so every non-exact interval has nonzero ends. Rational
    roots are reported as exact [x, x] intervals whenever the isolator's
    interval contains x as its simplest rational.
    """
    if p.is_zero:
        raise ValueError("isolate_real_roots is undefined for the zero polynomial")
    if p.degree() < 1:
        return []
    f = _sqf(p)
    raw = [((as_rational(a), as_rational(b)), k) for (a, b), k in p.intervals()]
    claimed = {a for (a, b), _ in raw if a == b}
    out: List[IsolatingInterval] = []
    for (lo, hi), k in raw:
        if lo < hi and (sign_at(f, lo) == 0 or sign_at(f, hi) == 0):
            if _open_count(f, lo, hi) == 1:
                lo, hi = _tighten(f, lo, hi)
            else:
                zeros = [x for x in (lo, hi) if sign_at(f, x) == 0 and x not in claimed]
                if len(zeros) != 1:
                    raise InvariantViolation(f"[{lo}, {hi}] does not isolate a root")
                lo = hi = zeros[0]
                claimed.add(lo)
        lo, hi = _collapse(lambda x: sign_at(f, x), lo, hi)
        out.append(IsolatingInterval(lo=lo, hi=hi, multiplicity=k))
    out.sort(key=lambda iv: (iv.lo, iv.hi))
    for a, b in zip(out, out[1:]):
        if a.hi >= b.lo:
            raise InvariantViolation(f"isolating intervals [{a.lo}, {a.hi}] and [{b.lo}, {b.hi}] overlap")
    logger.debug(
        "Isolated %d distinct real roots of a degree-%d polynomial.", len(out), p.degree()
    )
    return out


def positive_roots(p: Poly) -> List[IsolatingInterval]:
    """Isolating intervals of the strictly positive real roots of p."""
    out: List[IsolatingInterval] = []
    f = _sqf(p)
    for iv in isolate_real_roots(p):
        if iv.lo > 0:
            out.append(iv)
        elif iv.hi > 0 and not iv.is_exact:
            s0 = sign_at(f, Fraction(0))
            if s0 != 0 and s0 != sign_at(f, iv.hi):
                out.append(IsolatingInterval(lo=0, hi=iv.hi, multiplicity=iv.multiplicity))
    return out


def refine(
    p: Poly, iv: IsolatingInterval, width: Fraction = DEFAULT_WIDTH
) -> IsolatingInterval:
    """
    Bisect ``iv`` until hi - lo <= width, keeping the root of p inside.

    A zero of p at an end of ``iv`` is the isolated root only when no root
    lies strictly inside; an exact zero at a midpoint or at the simplest
    rational of the final interval collapses it to that point.
    """
    if iv.is_exact:
        return iv
    width = as_rational(width)
    f = _sqf(p)
    lo, hi = _settle(f, iv.lo, iv.hi)
    if lo == hi:
        return IsolatingInterval(lo=lo, hi=hi, multiplicity=iv.multiplicity)
    s_lo, s_hi = sign_at(f, lo), sign_at(f, hi)
    if s_lo == s_hi:
        raise ValueError(f"[{lo}, {hi}] does not isolate a real root of the polynomial")

    def sign_fn(x: Fraction) -> int:
        return sign_at(f, x)

    lo, hi = bisect(sign_fn, lo, hi, width, s_lo)
    lo, hi = _collapse(sign_fn, lo, hi)
    return IsolatingInterval(lo=lo, hi=hi, multiplicity=iv.multiplicity)


def _cauchy_bound(f: Poly) -> Fraction:
    coeffs = [abs(as_rational(c)) for c in f.all_coeffs()]
    return 1 + max(coeffs[1:], default=Fraction(0)) / coeffs[0]


def _float_hint(f: Poly) -> Optional[Fraction]:
    """Largest real part among numpy's roots of f, or None when numpy fails."""
    coeffs = [as_rational(c) for c in f.all_coeffs()]
    top = max(abs(c) for c in coeffs)
    try:
        with np.errstate(all="ignore"):
            roots = np.roots([float(c / top) for c in coeffs])
    except np.linalg.LinAlgError:
        return None
    real = [z.real for z in roots if np.isfinite(z.real)]
    return Fraction(float(max(real))) if real else None


def top_real_root(p: Poly) -> Optional[IsolatingInterval]:
    """
    Isolating interval of the greatest real root of p, or None if p has none.

    A numpy estimate proposes a narrow bracket; exact root counts above each
    end confirm it, and bisection on those counts takes over from the Cauchy
    bound whenever the estimate is off.
    """
    if p.is_zero:
        raise ValueError("top_real_root is undefined for the zero polynomial")
    f = _sqf(p)
    if f.degree() < 1:
        return None
    bound = _cauchy_bound(f)
    lo, hi = -bound, bound
    count = roots_above(f, lo)
    if count == 0:
        return None
    hint = _float_hint(f)
    if hint is not None:
        delta = (abs(hint) + 1) / HINT_SCALE
        for x in (hint - delta, hint + delta):
            if lo < x < hi:
                above = roots_above(f, x)
                if above:
                    lo, count = x, above
                else:
                    hi = x
    # invariant: count = roots above lo >= 1, no root above hi
    while count > 1:
        mid = (lo + hi) / 2
        above = roots_above(f, mid)
        if above:
            lo, count = mid, above
        else:
            hi = mid
    if sign_at(f, hi) == 0:
        lo = hi
    else:
        lo, hi = _settle(f, lo, hi)
        lo, hi = _collapse(lambda x: sign_at(f, x), lo, hi)
    logger.debug("Bracketed the greatest root of a degree-%d polynomial in [%s, %s].", p.degree(), lo, hi)
    return IsolatingInterval(lo=lo, hi=hi, multiplicity=_multiplicity(p, lo, hi))


def max_real_root(p: Poly, width: Fraction = DEFAULT_WIDTH) -> IsolatingInterval:
    """The greatest real root of p refined to ``width``."""
    top = top_real_root(p)
    if top is None:
        raise NoRealRootError("polynomial has no real root")
    return refine(p, top, width)


def _sqrt_floor(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    n = x * scale * scale
    return Fraction(isqrt(n.numerator // n.denominator), scale)


def _sqrt_ceil(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    n = x * scale * scale
    c = -(-n.numerator // n.denominator)
    r = isqrt(c)
    if r * r < c:
        r += 1
    return Fraction(r, scale)


def _exact_sqrt(x: Fraction) -> Optional[Fraction]:
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def sqrt_root_interval(
    r: Poly, iv: IsolatingInterval, width: Fraction = DEFAULT_WIDTH
) -> IsolatingInterval:
    """
    Given ``iv`` isolating a root w >= 0 of r, isolate sqrt(w) as a root of r(t^2).

    The t-interval endpoints are chosen so their squares stay inside ``iv``,
    so isolation carries over from w to t.
    """
    width = as_rational(width)
    mult = iv.multiplicity
    if iv.is_exact:
        w = iv.lo
        if w < 0:
            raise ValueError("sqrt_root_interval needs a non-negative root")
        root = _exact_sqrt(w)
        if root is not None:
            return IsolatingInterval(lo=root, hi=root, multiplicity=mult)
        lo, hi = _sqrt_floor(w, 32), _sqrt_ceil(w, 32)
        lo, hi = bisect(lambda t: (t * t > w) - (t * t < w), lo, hi, width, -1)
        return IsolatingInterval(lo=lo, hi=hi, multiplicity=mult)

    f = _sqf(r)
    lo_w, hi_w = _settle(f, iv.lo, iv.hi)
    if lo_w == hi_w:
        return sqrt_root_interval(r, IsolatingInterval(lo=lo_w, hi=lo_w, multiplicity=mult), width)
    if hi_w <= 0:
        raise ValueError("sqrt_root_interval needs a non-negative root")
    if lo_w <= 0:
        s0 = sign_at(f, Fraction(0))
        if s0 == 0:
            # 0 is interior, so it is the isolated root
            return IsolatingInterval(lo=0, hi=0, multiplicity=mult)
        if s0 == sign_at(f, hi_w):
            raise ValueError(f"[{lo_w}, {hi_w}] isolates a negative root")
        # Push the lower end off zero: the t-interval must exclude t = 0.
        lo_w = Fraction(0)
        while lo_w == 0:
            mid = hi_w / 2
            s = sign_at(f, mid)
            if s == 0:
                return sqrt_root_interval(
                    r, IsolatingInterval(lo=mid, hi=mid, multiplicity=mult), width
                )
            if s == s0:
                lo_w = mid
            else:
                hi_w = mid
    s_lo, s_hi = sign_at(f, lo_w), sign_at(f, hi_w)
    if s_lo == s_hi:
        raise ValueError(f"[{lo_w}, {hi_w}] does not isolate a non-negative root")

    def sign_fn(t: Fraction) -> int:
        return sign_at(f, t * t)

    bits = 32
    while True:
        a, b = _sqrt_ceil(lo_w, bits), _sqrt_floor(hi_w, bits)
        if a <= b:
            sa, sb = sign_fn(a), sign_fn(b)
            if sa == 0:
                return IsolatingInterval(lo=a, hi=a, multiplicity=mult)
            if sb == 0:
                return IsolatingInterval(lo=b, hi=b, multiplicity=mult)
            if sa == s_lo and sb == s_hi:
                break
        bits *= 2
        if bits > 1 << 16:
            raise InvariantViolation("could not bracket a square root inside its isolating interval")
    lo, hi = bisect(sign_fn, a, b, width, s_lo)
    lo, hi = _collapse(sign_fn, lo, hi)
    return IsolatingInterval(lo=lo, hi=hi, multiplicity=mult)


def compare_with_rational(root: RealRoot, x: Fraction) -> int:
    """-1, 0 or 1 as the certified root is below, at or above the rational x."""
    x = as_rational(x)
    p, iv = root
    for _ in range(MAX_SEPARATION_ROUNDS):
        if iv.hi < x:
            return -1
        if iv.lo > x:
            return 1
        if sign_at(p, x) == 0:
            return 0
        iv = refine(p, iv, iv.width / 16)
    raise SeparationError(f"could not separate a root from {x}")


def _common_root_in(g: Poly, lo: Fraction, hi: Fraction) -> bool:
    if g.degree() < 1:
        return False
    if sign_at(g, lo) == 0:
        return True
    return count_real_roots(g, lo, hi) > 0


def compare_roots(a: RealRoot, b: RealRoot) -> int:
    """
    Exact comparison of two certified real roots: -1, 0 or 1.

    Equality is proven by a root of gcd(a.poly, b.poly) inside both
    intervals; otherwise both intervals are refined until they separate.
    """
    if a.interval.is_exact:
        return -compare_with_rational(b, a.interval.lo)
    if b.interval.is_exact:
        return compare_with_rational(a, b.interval.lo)
    ia, ib = a.interval, b.interval
    g: Optional[Poly] = None
    for rounds in range(MAX_SEPARATION_ROUNDS):
        if ia.hi < ib.lo:
            return -1
        if ib.hi < ia.lo:
            return 1
        if g is None:
            g = a.poly.gcd(b.poly)
            if _common_root_in(g, max(ia.lo, ib.lo), min(ia.hi, ib.hi)):
                return 0
        ia = refine(a.poly, ia, ia.width / 256)
        ib = refine(b.poly, ib, ib.width / 256)
        if ia.is_exact:
            return -compare_with_rational(RealRoot(b.poly, ib), ia.lo)
        if ib.is_exact:
            return compare_with_rational(RealRoot(a.poly, ia), ib.lo)
    raise SeparationError(
        f"roots still overlap after {MAX_SEPARATION_ROUNDS} refinement rounds"
    )


def format_decimal(x: Fraction, digits: int) -> str:
    """Render x with ``digits`` decimals, rounding half to even."""
    n = round(x * 10**digits)
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(digits + 1, "0")
    if digits == 0:
        return sign + s
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def certified_decimal(root: RealRoot, digits: int) -> str:
    """
    The ``digits``-decimal rendering shared by every point of the root's
    interval, refining as needed.
    """
    p, iv = root
    for _ in range(MAX_DECIMAL_ROUNDS):
        lo_s = format_decimal(iv.lo, digits)
        if iv.is_exact or lo_s == format_decimal(iv.hi, digits):
            return lo_s
        iv = refine(p, iv, min(iv.width / 1024, Fraction(1, 10 ** (digits + 2))))
    logger.warning(
        "Decimal rendering to %d digits could not be certified; using the interval midpoint.",
        digits,
    )
    return format_decimal(iv.midpoint, digits)
