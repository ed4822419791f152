# tests/test_families.py

import random
from fractions import Fraction
from unittest.mock import patch

import pytest

from clpoly.data_models import poly_from_coeffs
from clpoly.errors import InvariantViolation, OutOfRangeError
from clpoly.families import (
    a_sr,
    bounds_row,
    bounds_table,
    braun_develin,
    degree2_imaginary_squared,
    degree10_family,
    degree10_poly,
    degree10_sweep,
    omega_sweep,
    omega_witness,
    p0_poly,
    prop36_order_check,
    simplex_sr_poly,
    within_alpha_tilde,
)
from clpoly.palindromic_basis import alpha_tilde, alpha_tilde_root, pal_basis
from clpoly.poly_core import cl_from_cs, cl_max_imaginary, require_cl
from clpoly.realroots import compare_roots

# degree: (ã_d, a_sr^d, d²/π) at three decimals
REFERENCE_TABLE = {
    2: ("0.866", "0.645", "1.273"),
    3: ("2.398", "1.658", "2.865"),
    4: ("4.603", "3.040", "5.093"),
    5: ("7.457", "4.761", "7.958"),
    6: ("10.952", "6.811", "11.459"),
    7: ("15.085", "9.186", "15.597"),
    8: ("19.857", "11.882", "20.372"),
    9: ("25.267", "14.899", "25.783"),
    10: ("31.313", "18.236", "31.831"),
    20: ("126.802", "69.147", "127.324"),
    30: ("285.956", "151.904", "286.479"),
}

LARGE_TABLE = {
    100: ("3182.575", "1622.493", "3183.099"),
    150: ("7161.449", "3627.845", "7161.972"),
}


def z(*coeffs):
    return poly_from_coeffs(coeffs)


def test_named_polynomials():
    """Tests p_0^d and the standard reflexive simplex polynomials."""
    assert p0_poly(2) == z(2, 2, 2)
    assert simplex_sr_poly(1) == z(1, 2)
    assert simplex_sr_poly(2) == z(1, Fraction(3, 2), Fraction(3, 2))
    with pytest.raises(OutOfRangeError):
        p0_poly(0)


def test_a_sr_degree_two_closed_form():
    """Tests a_sr^2 = sqrt(5/12)."""
    iv = a_sr(2, Fraction(1, 10**9))
    assert iv.lo**2 <= Fraction(5, 12) <= iv.hi**2
    assert degree2_imaginary_squared(1) == Fraction(5, 12)


def test_degree2_imaginary_squared():
    """Tests the closed form against the roots for several middle entries."""
    for c in (0, Fraction(1, 2), 3, Fraction(11, 2)):
        # h* = (1, c, 1) gives z^2 + z + 2/(c+2)
        form, _ = cl_from_cs(1, "even", [Fraction(2) / (c + 2)])
        top = cl_max_imaginary(form, Fraction(1, 10**12))
        value = degree2_imaginary_squared(c)
        assert top.interval.lo**2 <= value <= top.interval.hi**2
    with pytest.raises(OutOfRangeError, match="0 <= c < 6"):
        degree2_imaginary_squared(6)


def test_braun_develin():
    """Tests d²/π rendering."""
    assert braun_develin(2, 3) == "1.273"
    assert braun_develin(10, 6) == "31.830989"


def test_bounds_table_matches_reference():
    """Tests ã_d, a_sr^d and d²/π against the three-decimal reference table."""
    rows = bounds_table(list(REFERENCE_TABLE), digits=3, max_workers=4)
    assert [r.degree for r in rows] == list(REFERENCE_TABLE)
    for row in rows:
        assert (row.alpha_tilde, row.beta_sr, row.braun_develin) == REFERENCE_TABLE[row.degree]
        assert row.within_disc
        assert row.braun_disc == row.degree * (row.degree - Fraction(1, 2))


@pytest.mark.slow
def test_bounds_table_large_degrees():
    """Tests the d = 100 and d = 150 rows."""
    rows = bounds_table(list(LARGE_TABLE), digits=3)
    for row in rows:
        assert (row.alpha_tilde, row.beta_sr, row.braun_develin) == LARGE_TABLE[row.degree]


def test_bounds_row_degree_one():
    """Tests the degenerate first row, where both extremal parts are 0."""
    row = bounds_row(1, digits=2)
    assert row.alpha_tilde == "0.00"
    assert row.beta_sr == "0.00"
    with pytest.raises(OutOfRangeError, match="d >= 1"):
        bounds_table([0, 2])


def test_prop36_order_check_holds_up_to_nine():
    """Tests the ordering of a_sr^d among the a_i^d for d = 2..9."""
    for d in range(2, 10):
        report = prop36_order_check(d, digits=3)
        assert report.expected
        assert report.holds, report
        assert "a_sr" in report.names
    report = prop36_order_check(4, digits=3)
    assert report.names == ("a_1", "a_sr", "a_0")
    assert report.values[1:] == ("3.040", "4.603")
    assert prop36_order_check(7).names == ("a_2", "a_sr", "a_1", "a_0")


def test_prop36_order_check_degree_ten_and_range():
    """Tests the degree-10 regime flag and the degree range."""
    report = prop36_order_check(10)
    assert not report.expected
    assert len(report.names) == 4
    with pytest.raises(OutOfRangeError, match="2 <= d <= 10"):
        prop36_order_check(11)


def test_degree10_family_m_one_is_the_simplex():
    """Tests that m = 1 reproduces a_sr^10 exactly."""
    report = degree10_family(1, digits=3)
    assert report.is_cl and report.diamond
    assert report.max_imaginary == report.a_sr == "18.236"
    assert report.comparison == 0
    assert degree10_poly(1) == sum((pal_basis(i, 10) for i in range(1, 6)), pal_basis(0, 10))


def test_degree10_sweep_exceeds_a_sr():
    """Tests that m = 2..14 are CL-polynomials beyond a_sr^10."""
    reports = degree10_sweep(digits=3, max_workers=4)
    assert [r.m for r in reports] == list(range(2, 15))
    for report in reports:
        assert report.is_cl
        assert report.exceeds_a_sr, report


def test_degree10_family_rejects_non_integer():
    """Tests the integer check on m."""
    with pytest.raises(TypeError, match="integer"):
        degree10_family(True)


def test_omega_witness_degree_two():
    """Tests the d = 2 witness at target 1/2: c = 1 and f = 6z^2+6z+3."""
    w = omega_witness(2, Fraction(1, 2))
    assert w.c == 1
    assert w.poly == z(3, 6, 6)
    assert w.ok


def test_omega_witness_degree_three():
    """Tests a target inside (ã_2, ã_3)."""
    w = omega_witness(3, "2")
    assert w.target == 2
    assert w.c > 0
    assert w.is_cl and w.diamond and w.vanishes


def test_omega_witness_rejects_outside_targets():
    """Tests targets on or beyond the interval ends."""
    with pytest.raises(OutOfRangeError, match="not strictly between"):
        omega_witness(3, Fraction(1, 2))
    with pytest.raises(OutOfRangeError, match="not strictly between"):
        omega_witness(2, 0)
    with pytest.raises(OutOfRangeError, match="not strictly between"):
        omega_witness(1, Fraction(1, 10))


def test_omega_sweep():
    """Tests evenly spaced witnesses across (ã_3, ã_4)."""
    report = omega_sweep(4, count=6, max_workers=3)
    assert report.degree == 4
    assert len(report.witnesses) == 6
    assert report.all_pass
    targets = [w.target for w in report.witnesses]
    assert targets == sorted(targets)
    with pytest.raises(OutOfRangeError, match="at least one target"):
        omega_sweep(4, count=0)


def test_within_alpha_tilde():
    """Tests the bound on the simplex polynomials and on p_0^d itself."""
    for d in range(1, 9):
        assert within_alpha_tilde(require_cl(simplex_sr_poly(d)))
        assert within_alpha_tilde(require_cl(p0_poly(d)))
    form, _ = cl_from_cs(1, "even", [50])
    assert not within_alpha_tilde(form)


def test_alpha_tilde_is_attained_by_p0():
    """Tests that p_0^d attains ã_d exactly."""
    for d in range(2, 7):
        top = cl_max_imaginary(require_cl(p0_poly(d)))
        assert compare_roots(top, alpha_tilde_root(d)) == 0


def test_invariant_violation_is_runtime_error():
    """Tests that invariant failures are catchable as RuntimeError."""
    assert issubclass(InvariantViolation, RuntimeError)


def check_diamond_forms(degrees, per_degree, seed):
    rng = random.Random(seed)
    for d in degrees:
        slack = 2 if d % 2 else 1
        for _ in range(per_degree):
            cs = [
                Fraction(1, 4) + Fraction(rng.randint(0, 50), 50) * (2 * i + slack - Fraction(1, 4))
                for i in range(d // 2)
            ]
            form, _ = cl_from_cs(rng.randint(1, 5), "odd" if d % 2 else "even", cs)
            assert within_alpha_tilde(form), (d, cs)


def test_diamond_forms_stay_below_alpha_tilde():
    """Tests the ã_d bound on random (♦) forms built from the sufficient condition."""
    check_diamond_forms(range(3, 9), 4, seed=31)


@pytest.mark.slow
def test_diamond_forms_stay_below_alpha_tilde_full():
    """Tests 200 random (♦) forms per degree for d = 3..12."""
    check_diamond_forms(range(3, 13), 200, seed=35)


@pytest.mark.slow
def test_omega_sweep_every_degree():
    """Tests 20 pencil witnesses per degree for d = 2..12."""
    for d in range(2, 13):
        report = omega_sweep(d, count=20, max_workers=4)
        assert len(report.witnesses) == 20, d
        assert report.all_pass, (d, report.failures)


def test_extremal_bounds_skip_full_isolation():
    """Tests that ã_d and a_sr^d come from the top-root bracket, not a full isolation."""
    guard = AssertionError("full real-root isolation used")
    with patch("clpoly.realroots.isolate_real_roots", side_effect=guard), patch(
        "clpoly.poly_core.isolate_real_roots", side_effect=guard
    ):
        top = alpha_tilde(12)
        sr = a_sr(12)
    assert top.hi - top.lo <= Fraction(1, 10**12)
    assert 0 < sr.lo < top.lo
