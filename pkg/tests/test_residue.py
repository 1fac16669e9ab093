from __future__ import annotations

import pytest

from gjms_verify.exact import var
from gjms_verify.mcal import build_M
from gjms_verify.residue import (
    lagrange_interpolate,
    nodal_values,
    q_res_sphere,
    residue_poly,
    verify_residue_properties,
)
from gjms_verify.spaces import ALL_SPACES, PSEUDOSPHERE, SPHERE, gjms, q_value

nu, lam = var("nu"), var("lam")


def test_low_orders():
    assert residue_poly(SPHERE, 1).poly == gjms(SPHERE, 1).poly
    p2, p4 = gjms(SPHERE, 1).poly, gjms(SPHERE, 2).poly
    assert residue_poly(SPHERE, 2).poly == (lam + nu - 3) * p4 - (lam + nu - 2) * p2 * p2
    assert residue_poly(SPHERE, 2).at(-nu + 2) == -p4


def test_mystic_examples():
    res2 = residue_poly(SPHERE, 2).poly
    assert res2.derivative("lam").substitute("lam", 0) == build_M(SPHERE, 2).poly
    res3 = residue_poly(SPHERE, 3).poly
    assert res3.derivative("lam", 2).substitute("lam", 0) == gjms(SPHERE, 1).poly * 12


def test_interpolation_example():
    node = -nu + 5
    lhs = residue_poly(SPHERE, 3).at(node)
    assert lhs == -gjms(SPHERE, 1).poly * residue_poly(SPHERE, 2).at(node)


@pytest.mark.parametrize("space", ALL_SPACES)
def test_degree_and_properties(space):
    for n in range(1, 6):
        assert residue_poly(space, n).degree == n - 1
    assert verify_residue_properties(space, 5, "interpolation").passed
    assert verify_residue_properties(space, 5, "mystic").passed


def test_property_errors():
    with pytest.raises(ValueError):
        verify_residue_properties(SPHERE, 1, "mystic")
    with pytest.raises(ValueError):
        verify_residue_properties(SPHERE, 3, "other")
    with pytest.raises(ValueError):
        residue_poly(SPHERE, 0)


def test_generic_lagrange():
    nodes = [nu, nu + 1, nu + 3]
    target = lam * lam - nu * lam + 7
    values = [target.substitute("lam", n) for n in nodes]
    assert lagrange_interpolate(nodes, values) == target
    with pytest.raises(ValueError):
        lagrange_interpolate([nu, nu * 2], [lam, lam])
    with pytest.raises(ValueError):
        lagrange_interpolate([nu], [])


def test_nodal_values_count():
    assert len(nodal_values(PSEUDOSPHERE, 4)) == 4


def test_q_res_examples():
    res1, report1 = q_res_sphere(1)
    assert res1.poly == nu * lam and report1.passed
    assert res1.at(-nu + 1) == -(nu - 1) * nu
    res2, report2 = q_res_sphere(2)
    assert res2.at(0).is_zero() and report2.passed
    critical = res2.poly.substitute("nu", 2).derivative("lam").substitute("lam", 0)
    assert critical == q_value(SPHERE, 2).value.substitute("nu", 2) == 6


def test_q_res_up_to_six():
    for n in range(1, 7):
        assert q_res_sphere(n)[1].passed
