from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gjms_verify.compositions import (
    COEFFICIENT_CHECKS,
    Composition,
    beta_by_integration,
    beta_value,
    coefficient_table,
    enumerate_compositions,
    m_coefficient,
    m_coefficient_recursive,
    partition_weights,
    verify_coefficient_identity,
)
from gjms_verify.report import VerificationReport

# frozen values of m_I read off the displayed operator expansions
FROZEN_M = {
    (1, 1): -1,
    (1, 1, 1): 3, (1, 2): -2, (2, 1): -2,
    (2, 2): -9, (1, 2, 1): 8, (1, 1, 1, 1): -18,
    (1, 3, 1): 15, (2, 1, 2): 80, (1, 1, 1, 1, 1): 180, (2, 3): -24,
}


def test_enumeration_order_and_count():
    assert [str(c) for c in enumerate_compositions(3)] == ["(1,1,1)", "(1,2)", "(2,1)", "(3)"]
    for n in range(1, 11):
        assert len(enumerate_compositions(n)) == 2 ** (n - 1)
    with pytest.raises(ValueError):
        enumerate_compositions(0)


def test_composition_validation():
    with pytest.raises(ValueError):
        Composition(())
    with pytest.raises(ValueError):
        Composition((1, 0))
    c = Composition.of(2, 1, 3)
    assert (c.size, c.length, c.last) == (6, 3, 3)
    assert c.reversed() == Composition.of(3, 1, 2)
    assert c.split(1) == (Composition.of(2), Composition.of(1, 3))


@pytest.mark.parametrize("parts,value", sorted(FROZEN_M.items()))
def test_frozen_coefficients(parts, value):
    assert m_coefficient(parts) == value


def test_single_part_is_one():
    for n in range(1, 9):
        assert m_coefficient((n,)) == 1


def test_table_lookup():
    table = coefficient_table(4)
    assert table[(2, 2)] == -9
    assert len(table.as_dict()) == 8


@given(st.lists(st.integers(1, 4), min_size=1, max_size=6))
def test_closed_form_matches_recursion(parts):
    assert m_coefficient(tuple(parts)) == m_coefficient_recursive(tuple(parts))


@given(st.lists(st.integers(1, 4), min_size=1, max_size=6))
def test_reversal_symmetry(parts):
    assert m_coefficient(tuple(parts)) == m_coefficient(tuple(reversed(parts)))


def test_two_part_formula_by_hand():
    # m_(a,b) = -(N!(N-1)!) / (a!(a-1)! b!(b-1)! (a+b))
    for n in range(2, 9):
        for a in range(1, n):
            b = n - a
            expected = -Fraction(factorial(n) * factorial(n - 1),
                                 factorial(a) * factorial(a - 1) * factorial(b) * factorial(b - 1) * n)
            assert m_coefficient((a, b)) == expected


def test_partition_weights_sum_to_zero():
    for n in range(2, 9):
        assert sum(w for _, w in partition_weights(n)) == 0
        assert sum(w for _, w in partition_weights(n, exclude_top=True)) == -1


def test_beta_routes():
    assert beta_value(1, 1) == Fraction(1, 2)
    assert beta_value(2, 3) == Fraction(1, 20)
    for m in range(1, 6):
        for n in range(1, 6):
            assert beta_by_integration(m, n) == beta_value(m, n)


def test_beta_kernel_identity_example():
    # N=3, a=1: C(3,1)^2 * 1*2/3 times the inner sum is -C(2,0)
    inner = Fraction(-1, 1 + 1) * comb(1, 0) + Fraction(1, 1 + 2) * comb(1, 1)
    assert Fraction(9 * 2, 3) * inner == -1


@pytest.mark.parametrize("kind", sorted(COEFFICIENT_CHECKS))
def test_coefficient_suites_pass(kind):
    report = verify_coefficient_identity(kind, 7)
    assert report.passed, report.failures()[:3]
    assert report.entries


def test_sum_zero_needs_two():
    report = verify_coefficient_identity("sum_zero", 1)
    assert report.entries == []


def test_unknown_identity():
    with pytest.raises(ValueError):
        verify_coefficient_identity("nope", 3)


def test_integrality_is_empirical():
    report = verify_coefficient_identity("integrality", 8)
    assert [e.status for e in report.entries] == ["pass"] * 8


def test_displayed_tables():
    from gjms_verify.compositions import check_tables

    report = VerificationReport("tables")
    check_tables(report)
    assert report.passed and len(report.entries) == 4 + 1 + 3 + 7 + 15


def test_three_factor_relation_rejects_extra_denominator():
    # with the extra 1/(|I|-k) on the left the relation fails already at (1,1,1)
    i = j = k = 1
    n = 3
    extra_denominator_lhs = m_coefficient((i, j, k)) / (n - k)
    rhs = -Fraction(comb(n, k) ** 2 * k * (n - k), n) * m_coefficient((j, i)) / (n - i)
    assert extra_denominator_lhs != rhs
    assert m_coefficient((i, j, k)) == rhs
