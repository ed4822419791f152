# tests/test_interlace.py

import math
from fractions import Fraction

import pytest

from clpoly.data_models import Carrier, HStarVector, poly_from_coeffs
from clpoly.errors import DegreeMismatchError, NotCLError, NotOnCircleError, OutOfRangeError
from clpoly.hstar import hstar_from_poly
from clpoly.interlace import (
    circle_interlaces,
    circle_root_order,
    cl_interlaces,
    cl_root_order,
    interlace_suite,
    p0_times_linear,
    pencil_check,
)
from clpoly.palindromic_basis import pal_basis


def z(*coeffs):
    return poly_from_coeffs(coeffs)


def hv(*entries):
    return HStarVector(degree=len(entries) - 1, h=entries)


def test_cl_root_order():
    """Tests ascending imaginary parts of z^2+z+1."""
    order = cl_root_order(z(1, 1, 1), Fraction(1, 10**6))
    assert order.carrier is Carrier.CL
    low, high = order.positions
    assert high.lo > 0 > low.hi
    assert high.lo**2 <= Fraction(3, 4) <= high.hi**2
    assert not order.coincident


def test_cl_root_order_flags_a_double_root():
    """Tests that (z^2+z+1)^2 reports touching slots."""
    order = cl_root_order(z(1, 1, 1) ** 2)
    assert order.coincident
    assert [iv.multiplicity for iv in order.positions] == [2, 2]


def test_circle_root_order():
    """Tests the angles of 1+t+t^2 on the unit circle."""
    order = circle_root_order(hv(1, 1, 1))
    assert order.carrier is Carrier.UNIT_CIRCLE
    assert order.positions == pytest.approx([2 * math.pi / 3, 4 * math.pi / 3])
    assert not order.coincident


def test_circle_root_order_wraps_past_zero():
    """Tests that angles land in [0, 2pi) for 1+t^2."""
    order = circle_root_order(hv(1, 0, 1))
    assert order.positions == pytest.approx([math.pi / 2, 3 * math.pi / 2])
    assert all(0 <= a < 2 * math.pi for a in order.positions)


def test_circle_root_order_flags_a_double_root():
    """Tests that (1+t)^2 reports coincident angles."""
    order = circle_root_order(hv(1, 2, 1), tol=1e-6)
    assert order.coincident
    assert order.positions == pytest.approx([math.pi, math.pi], abs=1e-6)


def test_cl_interlaces_basis_chain():
    """Tests p_0^d ⋖ p_0^(d+1) for small d."""
    for d in range(1, 8):
        assert cl_interlaces(pal_basis(0, d), pal_basis(0, d + 1))


def test_cl_interlaces_negative_and_errors():
    """Tests a non-interlacing pair and the argument checks."""
    # roots ±sqrt(99/4) do not sit between ±sqrt(3/4)
    f = z(25, 1, 1)
    g = z(1, 2) * z(1, 1, 1)
    assert not cl_interlaces(f, g)
    with pytest.raises(DegreeMismatchError, match="deg g = deg f \\+ 1"):
        cl_interlaces(z(1, 1, 1), z(1, 1, 1))
    with pytest.raises(NotCLError):
        cl_interlaces(z(1, 2), z(0, 0, 1))


def test_circle_interlaces_examples():
    """Tests cyclic alternation of h*-roots on the unit circle."""
    assert circle_interlaces(hv(1, 1), hv(1, 0, 1))
    assert circle_interlaces(hv(1, 1), hv(1, -1, 1))
    assert circle_interlaces(hv(1, 1, 1), hv(1, 0, 0, 1))
    assert not circle_interlaces(hv(1, -1, 1), hv(1, 1, 1, 1))


def test_circle_interlaces_errors():
    """Tests degree and modulus checks."""
    with pytest.raises(DegreeMismatchError, match="circle interlacing"):
        circle_interlaces(hv(1, 1), hv(1, 1))
    with pytest.raises(NotOnCircleError, match="off the unit circle"):
        circle_interlaces(hv(1, 3), hv(1, 0, 1))


def test_circle_oracle_agrees_with_exact_check():
    """Tests that both interlacing checks agree on the palindromic chain."""
    for d in range(1, 7):
        f, g = pal_basis(0, d), pal_basis(0, d + 1)
        assert circle_interlaces(hstar_from_poly(f), hstar_from_poly(g)) == cl_interlaces(f, g)


def test_pencil_check():
    """Tests that the c > 0 pencil stays CL and is interlaced by p_0^d."""
    for d in range(1, 6):
        for c in (Fraction(1, 3), 1, 7):
            assert pencil_check(d, c)
    with pytest.raises(OutOfRangeError, match="positive"):
        pencil_check(3, 0)


def test_p0_times_linear():
    """Tests (2z+1)·p_0^d."""
    assert p0_times_linear(1) == z(1, 4, 4)


def test_interlace_suite_all_pass():
    """Tests the suite over d = 1..8."""
    report = interlace_suite(8, max_workers=2)
    assert report.d_max == 8
    assert [r.degree for r in report.rows] == list(range(1, 9))
    assert report.all_pass


@pytest.mark.slow
def test_interlace_suite_up_to_twenty():
    """Tests the suite over d = 1..20."""
    report = interlace_suite(20, max_workers=4)
    assert [r.degree for r in report.rows] == list(range(1, 21))
    assert report.all_pass, [r for r in report.rows if not (r.p0_chain and r.pencil)]


def test_interlace_suite_rejects_small_range():
    """Tests that d_max must be at least 1."""
    with pytest.raises(OutOfRangeError, match="d_max >= 1"):
        interlace_suite(0)
