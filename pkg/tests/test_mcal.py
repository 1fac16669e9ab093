from __future__ import annotations

from fractions import Fraction

import pytest

from gjms_verify.exact import var
from gjms_verify.mcal import (
    build_M,
    build_M_by_composition,
    gf_left_side,
    gf_right_side,
    partial_sum,
    primary_part,
    verify_closed_form,
    verify_generating_function,
)
from gjms_verify.report import VerificationReport
from gjms_verify import mcal
from gjms_verify.spaces import ALL_SPACES, EINSTEIN, PSEUDOSPHERE, SPHERE, SPHERE_HYPERBOLIC, gjms

nu, x, c = var("nu"), var("x"), var("c")
b2, c2 = var("b2"), var("c2")


def test_examples():
    assert build_M(SPHERE, 2).poly == (x - nu * (nu - 1)) * 2
    assert build_M(PSEUDOSPHERE, 2).poly == 1 - b2 * 2 - c2 * 2
    assert build_M(EINSTEIN, 3).poly == gjms(EINSTEIN, 1).poly * c ** 2 * 12


def test_primary_examples():
    p3 = primary_part(SPHERE, 3)
    assert {str(k): v for k, v in p3.primary} == {"(1,2)": 2, "(2,1)": 2, "(1,1,1)": -3}
    p2 = primary_part(SPHERE, 2)
    assert p2.poly == gjms(SPHERE, 1).poly ** 2
    assert dict((str(k), v) for k, v in primary_part(SPHERE, 4).primary)["(1,2,1)"] == -8
    p1 = primary_part(SPHERE, 1)
    assert p1.primary == () and p1.poly.is_zero()


def test_grouped_equals_literal():
    for space in ALL_SPACES:
        for n in range(1, 6):
            assert build_M(space, n).poly == build_M_by_composition(space, n)


@pytest.mark.parametrize("space,bound", [(SPHERE, 8), (EINSTEIN, 6), (PSEUDOSPHERE, 7), (SPHERE_HYPERBOLIC, 7)])
def test_closed_forms(space, bound):
    for n in range(1, bound + 1):
        assert verify_closed_form(space, n).passed


def test_pseudo_closed_form_examples():
    assert build_M(PSEUDOSPHERE, 3).poly == (c2 - b2) * 12
    assert build_M(PSEUDOSPHERE, 4).poly == (Fraction(1, 2) - b2 - c2) * 144


def test_partial_sum_examples():
    assert partial_sum(SPHERE, 1, 2).passed
    assert partial_sum(SPHERE, 1, 3).passed
    assert partial_sum(SPHERE, 2, 3).passed
    lhs, rhs = mcal.partial_sum_sides(1, 2)
    assert lhs == rhs == -gjms(SPHERE, 1).poly
    with pytest.raises(ValueError):
        partial_sum(PSEUDOSPHERE, 1, 3)
    with pytest.raises(ValueError):
        partial_sum(SPHERE, 3, 3)


def test_generating_function_low_coefficients():
    lhs = gf_left_side(EINSTEIN, 2)
    assert lhs[0] == -gjms(EINSTEIN, 1).poly
    rhs = gf_right_side(EINSTEIN, 2)
    assert rhs[0] == -x + (nu - 1) * nu * c
    assert rhs[2] == (-x + nu * (nu - 1) * c).scale(Fraction(1, 2)) * c
    assert gf_right_side(PSEUDOSPHERE, 0)[0] == -(c2 - b2)


@pytest.mark.parametrize("space", [EINSTEIN, PSEUDOSPHERE, SPHERE_HYPERBOLIC])
def test_generating_function(space):
    assert verify_generating_function(space, 12).passed


def test_operator_suites():
    report = VerificationReport("mcal")
    for space in ALL_SPACES:
        mcal.check_nonlinear(report, space, 6)
        mcal.check_decomposition(report, space, 5)
        mcal.check_leading_part(report, space, 5)
        mcal.check_flat_divergence(report, space, 6)
    mcal.check_partial_sums(report, 6)
    assert report.passed, report.failures()[:3]
