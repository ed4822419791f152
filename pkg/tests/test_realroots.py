# tests/test_realroots.py

import random
from fractions import Fraction

import pytest
from sympy import Poly

from clpoly.data_models import IsolatingInterval, S, T, U, poly_from_coeffs
from clpoly.errors import NoRealRootError
from clpoly.realroots import (
    RealRoot,
    certified_decimal,
    compare_roots,
    compare_with_rational,
    count_real_roots,
    format_decimal,
    isolate_real_roots,
    max_real_root,
    positive_roots,
    refine,
    roots_above,
    sign_at,
    sqrt_root_interval,
    top_real_root,
)


def u(*coeffs):
    return poly_from_coeffs(coeffs, U)


S_QUAD = poly_from_coeffs([12, 22, 1], S)  # s^2+22s+12
U_QUAD = u(12, -22, 1)  # u^2-22u+12


def test_sign_at():
    """Tests exact sign evaluation at rationals."""
    assert sign_at(u(-3, 0, 1), Fraction(2)) == 1
    assert sign_at(u(-3, 0, 1), Fraction(1)) == -1
    assert sign_at(u(Fraction(-1, 3), 1), Fraction(1, 3)) == 0


def test_count_real_roots_examples():
    """Tests Sturm counts over half-open intervals."""
    assert count_real_roots(S_QUAD, None, Fraction(-1, 4)) == 2
    assert count_real_roots(poly_from_coeffs([1, 1], S)) == 1
    assert count_real_roots(poly_from_coeffs([1, 0, 1], S)) == 0


def test_count_real_roots_additive():
    """Tests that counts over adjacent intervals add up."""
    p = u(-6, 11, -6, 1)  # (u-1)(u-2)(u-3)
    a, b, c = Fraction(0), Fraction(5, 2), Fraction(10)
    assert count_real_roots(p, a, b) + count_real_roots(p, b, c) == count_real_roots(p, a, c)
    # (lo, hi]: a root at the right end is counted, at the left end it is not
    assert count_real_roots(p, Fraction(1), Fraction(2)) == 1


def test_isolate_real_roots_examples():
    """Tests isolation with multiplicities and exact rational roots."""
    roots = isolate_real_roots(u(1, -2, 1))
    assert [(iv.lo, iv.hi, iv.multiplicity) for iv in roots] == [(1, 1, 2)]

    roots = isolate_real_roots(U_QUAD)
    assert len(roots) == 2
    assert roots[0].hi < roots[1].lo
    # 11 - sqrt(109) = 0.5596934...
    lower = RealRoot(U_QUAD, roots[0])
    assert compare_with_rational(lower, Fraction(5596, 10000)) == 1
    assert compare_with_rational(lower, Fraction(5597, 10000)) == -1

    roots = isolate_real_roots(u(0, 0, 0, 1))
    assert [(iv.lo, iv.hi, iv.multiplicity) for iv in roots] == [(0, 0, 3)]


def test_isolate_real_roots_random_linear_products():
    """Tests that products of rational linear factors are recovered exactly."""
    rng = random.Random(31337)
    for _ in range(20):
        roots = [Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(rng.randint(1, 6))]
        p = u(1)
        for r in roots:
            p = p * u(-r, 1)
        found = isolate_real_roots(p)
        assert sum(iv.multiplicity for iv in found) == len(roots)
        for r in set(roots):
            hits = [iv for iv in found if iv.lo <= r <= iv.hi]
            assert len(hits) == 1
            assert hits[0].multiplicity == roots.count(r)


def test_isolate_multiplicities_plus_complex_pairs_equal_degree():
    """Tests the degree balance with nonreal roots present."""
    p = u(1, 0, 1) * u(-2, 0, 1) * u(-1, 1) ** 2
    real = sum(iv.multiplicity for iv in isolate_real_roots(p))
    assert real + 2 == p.degree()


def test_refine_examples():
    """Tests refinement to a width and collapse onto rational roots."""
    iv = refine(u(-3, 0, 1), IsolatingInterval(lo=1, hi=2), Fraction(1, 10**6))
    assert iv.width <= Fraction(1, 10**6)
    assert iv.lo**2 <= 3 <= iv.hi**2

    iv = refine(S_QUAD, IsolatingInterval(lo=-1, hi=0), Fraction(1, 10**9))
    assert Fraction(-5597, 10000) <= iv.lo <= iv.hi <= Fraction(-5596, 10000)
    assert sign_at(S_QUAD, iv.lo) != sign_at(S_QUAD, iv.hi)

    iv = refine(u(Fraction(-1, 3), 1), IsolatingInterval(lo=0, hi=1), Fraction(1, 100))
    assert (iv.lo, iv.hi) == (Fraction(1, 3), Fraction(1, 3))


def test_refine_keeps_multiplicity_and_even_roots():
    """Tests refinement of a double root, where p does not change sign."""
    p = u(-2, 0, 1) ** 2
    iv = refine(p, IsolatingInterval(lo=1, hi=2, multiplicity=2), Fraction(1, 10**6))
    assert iv.multiplicity == 2
    assert iv.lo**2 <= 2 <= iv.hi**2


def test_refine_rejects_non_isolating_interval():
    """Tests that an interval without a sign change is refused."""
    with pytest.raises(ValueError, match="does not isolate"):
        refine(u(-3, 0, 1) * u(-5, 0, 1), IsolatingInterval(lo=1, hi=3))


def test_max_real_root():
    """Tests the greatest real root and the no-root error."""
    iv = max_real_root(U_QUAD, Fraction(1, 10**6))
    # 11 + sqrt(109) = 21.4403065...
    assert Fraction(214403, 10**4) <= iv.lo <= iv.hi <= Fraction(214404, 10**4)

    with pytest.raises(NoRealRootError, match="no real root"):
        max_real_root(u(1, 0, 1))

    iv = max_real_root(poly_from_coeffs([Fraction(-3, 4), 0, 1], T), Fraction(1, 10**9))
    assert iv.lo**2 <= Fraction(3, 4) <= iv.hi**2


def test_positive_roots_skips_zero_and_negatives():
    """Tests that only strictly positive roots are returned."""
    roots = positive_roots(u(0, -4, 0, 1))  # u(u-2)(u+2)
    assert len(roots) == 1
    assert 0 < roots[0].lo <= 2 <= roots[0].hi


def test_sqrt_root_interval():
    """Tests the passage from a root w of r to sqrt(w) as a root of r(t^2)."""
    r = u(Fraction(-3, 4), 1)
    iv = sqrt_root_interval(r, IsolatingInterval(lo=Fraction(3, 4), hi=Fraction(3, 4)), Fraction(1, 10**8))
    assert iv.lo**2 <= Fraction(3, 4) <= iv.hi**2
    assert iv.width <= Fraction(1, 10**8)

    exact = sqrt_root_interval(u(Fraction(-9, 4), 1), IsolatingInterval(lo=Fraction(9, 4), hi=Fraction(9, 4)))
    assert (exact.lo, exact.hi) == (Fraction(3, 2), Fraction(3, 2))

    r = u(-5, 1) * u(-7, 1)
    iv = sqrt_root_interval(r, IsolatingInterval(lo=4, hi=6))
    assert iv.lo**2 <= 5 <= iv.hi**2


def test_compare_roots_and_rationals():
    """Tests exact ordering of certified roots, including proven equality."""
    sqrt2 = RealRoot(u(-2, 0, 1), IsolatingInterval(lo=1, hi=2))
    sqrt3 = RealRoot(u(-3, 0, 1), IsolatingInterval(lo=1, hi=2))
    assert compare_roots(sqrt2, sqrt3) == -1
    assert compare_roots(sqrt3, sqrt2) == 1

    other_sqrt2 = RealRoot(u(-2, 0, 1) * u(-5, 1), IsolatingInterval(lo=Fraction(7, 5), hi=Fraction(3, 2)))
    assert compare_roots(sqrt2, other_sqrt2) == 0

    assert compare_with_rational(sqrt2, Fraction(7, 5)) == 1
    assert compare_with_rational(sqrt2, Fraction(3, 2)) == -1
    third = RealRoot(u(Fraction(-1, 3), 1), IsolatingInterval(lo=0, hi=1))
    assert compare_with_rational(third, Fraction(1, 3)) == 0


def test_format_decimal_rounds_half_even():
    """Tests rendering, padding and half-to-even rounding."""
    assert format_decimal(Fraction(2, 3), 3) == "0.667"
    assert format_decimal(Fraction(-1, 8), 2) == "-0.12"
    assert format_decimal(Fraction(3, 8), 2) == "0.38"
    assert format_decimal(Fraction(5, 1), 0) == "5"
    assert format_decimal(Fraction(1, 20), 3) == "0.050"


def test_certified_decimal():
    """Tests that decimals are certified from intervals, not midpoints."""
    root = RealRoot(poly_from_coeffs([-3, 0, 1], T), IsolatingInterval(lo=1, hi=2))
    assert certified_decimal(root, 7) == "1.7320508"
    exact = RealRoot(Poly(0, T), IsolatingInterval(lo=0, hi=0))
    assert certified_decimal(exact, 3) == "0.000"


def product_of_linears(roots):
    p = u(1)
    for r in roots:
        p = p * u(-r, 1)
    return p


NEIGHBOURS = [Fraction(-17, 2), Fraction(-3), Fraction(-14, 5), Fraction(-1, 5), Fraction(7, 5), Fraction(6)]


def test_count_real_roots_infinite_ends_with_rational_leading_coefficient():
    """Tests Sturm counts at ±inf when the leading coefficient is a non-integer rational."""
    p = u(-2, 0, Fraction(1, 3))  # roots ±sqrt(6)
    assert count_real_roots(p) == 2
    assert count_real_roots(p, None, Fraction(0)) == 1
    assert count_real_roots(p, Fraction(0), None) == 1
    assert count_real_roots(-p) == 2
    assert count_real_roots(u(Fraction(1, 2), 0, 0, Fraction(-3, 7))) == 1


def test_isolate_real_roots_separates_neighbouring_rationals():
    """Tests that roots next to rational neighbours get their own disjoint intervals."""
    p = product_of_linears(NEIGHBOURS)
    found = isolate_real_roots(p)
    assert len(found) == len(NEIGHBOURS)
    for a, b in zip(found, found[1:]):
        assert a.hi < b.lo
    for r, iv in zip(NEIGHBOURS, found):
        assert iv.lo <= r <= iv.hi
        if not iv.is_exact:
            assert sign_at(p, iv.lo) != 0 and sign_at(p, iv.hi) != 0
        assert refine(p, iv, Fraction(1, 10**6)).lo == r


def test_refine_ignores_a_neighbouring_root_on_the_boundary():
    """Tests refinement of an interval whose end is another root."""
    p = product_of_linears(NEIGHBOURS)
    iv = refine(p, IsolatingInterval(lo=-3, hi=-2))
    assert (iv.lo, iv.hi) == (Fraction(-14, 5), Fraction(-14, 5))

    q = u(-2, 0, 1) * u(-1, 1)  # roots ±sqrt(2) and 1
    iv = refine(q, IsolatingInterval(lo=1, hi=2), Fraction(1, 10**9))
    assert 1 < iv.lo and iv.lo**2 <= 2 <= iv.hi**2

    # the only root in [1, 5/4] is the end itself
    iv = refine(q, IsolatingInterval(lo=1, hi=Fraction(5, 4)))
    assert (iv.lo, iv.hi) == (1, 1)


def test_sqrt_root_interval_with_a_root_at_zero_on_the_boundary():
    """Tests that a root at w = 0 on the lower end does not hide the positive root."""
    r = u(0, -2, 1)  # w(w-2)
    iv = sqrt_root_interval(r, IsolatingInterval(lo=0, hi=3), Fraction(1, 10**9))
    assert iv.lo > 0
    assert iv.lo**2 <= 2 <= iv.hi**2

    exact = sqrt_root_interval(u(0, -1, 1), IsolatingInterval(lo=0, hi=2))
    assert (exact.lo, exact.hi) == (1, 1)

    zero = sqrt_root_interval(r, IsolatingInterval(lo=-1, hi=1))
    assert (zero.lo, zero.hi) == (0, 0)


def test_roots_above_matches_sturm_counts():
    """Tests the Descartes shortcut against Sturm counts on random polynomials."""
    rng = random.Random(4242)
    for _ in range(40):
        p = u(*[rng.randint(-9, 9) for _ in range(rng.randint(2, 8))], rng.randint(1, 9))
        for _ in range(3):
            x = Fraction(rng.randint(-40, 40), rng.randint(1, 7))
            assert roots_above(p, x) == count_real_roots(p, x, None), (p, x)


def test_top_real_root():
    """Tests the greatest root: rational, repeated, absent, and past a complex pair."""
    iv = top_real_root(product_of_linears([1, 2, 3]))
    assert (iv.lo, iv.hi, iv.multiplicity) == (3, 3, 1)

    iv = top_real_root(u(-3, 0, 1) ** 2 * u(-1, 1))
    assert iv.multiplicity == 2
    assert iv.lo**2 <= 3 <= iv.hi**2

    assert top_real_root(u(1, 0, 1)) is None

    # complex pair 10 ± i has the largest real part; the real root is 1
    p = u(101, -20, 1) * u(-1, 1)
    iv = max_real_root(p, Fraction(1, 10**9))
    assert iv.lo <= 1 <= iv.hi
    assert iv.width <= Fraction(1, 10**9)


def test_top_real_root_matches_full_isolation():
    """Tests the bracketed greatest root against sympy's full isolation."""
    rng = random.Random(99)
    for _ in range(25):
        roots = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(rng.randint(1, 7))]
        p = product_of_linears(roots) * u(rng.randint(1, 5), 0, 1)
        top = top_real_root(p)
        assert top.lo <= max(roots) <= top.hi
        assert top.multiplicity == roots.count(max(roots))
        assert count_real_roots(p, top.hi, None) == 0
