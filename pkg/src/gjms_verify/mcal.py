"""The operators M_{2N} = sum_I m_I P_{2I} and the primary parts P_{2N} - M_{2N}.

Model-space operators commute, so ``sum_I m_I P_{2I}`` is evaluated by first
summing the coefficients of compositions with the same multiset of parts.
``build_M_by_composition`` keeps the literal left-to-right evaluation for
cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .compositions import Composition, enumerate_compositions, m_coefficient, partition_weights
from .exact import ONE, ZERO, MultiPoly, TruncSeries, binom, var
from .report import VerificationReport
from .spaces import (
    SPHERE,
    ModelSpace,
    OperatorElem,
    apply_to_constant,
    get_space,
    gjms_poly,
)

C = var("c")
B2 = var("b2")
C2 = var("c2")


@dataclass(frozen=True)
class McalResult:
    space: ModelSpace
    order: int
    operator: OperatorElem
    primary: tuple[tuple[Composition, Fraction], ...]

    @property
    def poly(self) -> MultiPoly:
        return self.operator.poly


def _product(space: ModelSpace, parts) -> MultiPoly:
    return _sorted_product(space, tuple(sorted(parts, reverse=True)))


@lru_cache(maxsize=None)
def _sorted_product(space: ModelSpace, parts: tuple[int, ...]) -> MultiPoly:
    if not parts:
        return ONE
    return _sorted_product(space, parts[1:]) * gjms_poly(space, parts[0])


@lru_cache(maxsize=None)
def m_operator(space: ModelSpace, n: int) -> MultiPoly:
    if n < 1:
        raise ValueError("M_{2N} needs N >= 1")
    out = ZERO
    for parts, weight in partition_weights(n):
        if weight:
            out = out + _product(space, parts).scale(weight)
    return out


def build_M_by_composition(space: ModelSpace | str, n: int) -> MultiPoly:
    """Literal evaluation, one ordered product per composition."""
    space = get_space(space)
    out = ZERO
    for comp in enumerate_compositions(n):
        out = out + _product(space, comp.parts).scale(m_coefficient(comp))
    return out


def _primary_terms(n: int) -> tuple[tuple[Composition, Fraction], ...]:
    return tuple((comp, -m_coefficient(comp)) for comp in enumerate_compositions(n)
                 if comp.length > 1)


def build_M(space: ModelSpace | str, n: int) -> McalResult:
    space = get_space(space)
    return McalResult(space, n, OperatorElem(space, m_operator(space, n)), _primary_terms(n))


def primary_operator(space: ModelSpace | str, n: int) -> MultiPoly:
    space = get_space(space)
    return gjms_poly(space, n) - m_operator(space, n)


def primary_part(space: ModelSpace | str, n: int) -> McalResult:
    """The primary part; for N = 1 it is zero and has no terms."""
    space = get_space(space)
    return McalResult(space, n, OperatorElem(space, primary_operator(space, n)), _primary_terms(n))


def closed_form(space: ModelSpace, n: int) -> MultiPoly:
    """Closed form of M_{2N} on each model space."""
    coeff = factorial(n) * factorial(n - 1)
    if space.tag == "sphere":
        return gjms_poly(space, 1) * coeff
    if space.tag == "einstein":
        return gjms_poly(space, 1) * C ** (n - 1) * coeff
    if n % 2 == 0:
        return (Fraction(1, 2) - B2 - C2) * coeff
    return (C2 - B2) * coeff


def v_operator(space: ModelSpace, n: int) -> MultiPoly:
    """The normalized operator -M_{2N} / ((N-1)!)^2."""
    return m_operator(space, n).scale(Fraction(-1, factorial(n - 1) ** 2))


# -- checks --------------------------------------------------------------------

def check_closed_form(report: VerificationReport, space: ModelSpace, n_max: int) -> None:
    for n in range(1, n_max + 1):
        params = {"space": space.tag, "N": n}
        m = m_operator(space, n)
        report.check_equal("closed_form", "mcal.closed-form", params, m, closed_form(space, n))
        if not space.is_product:
            report.check_true("closed_form", "mcal.first-order", params,
                              m.degree_in(space.symbols) <= 1,
                              f"operator degree {m.degree_in(space.symbols)}")


def check_nonlinear(report: VerificationReport, space: ModelSpace, n_max: int) -> None:
    """Product-space M_{2N} through P_2 and P_4 only."""
    if not space.is_product:
        return
    p2, p4 = gjms_poly(space, 1), gjms_poly(space, 2)
    for n in range(1, n_max + 1):
        half = n // 2
        if n % 2 == 0:
            lhs = m_operator(space, n) * 2
            rhs = (p4 - p2 * p2) * (factorial(2 * half) * factorial(2 * half - 1))
        else:
            lhs = m_operator(space, n)
            rhs = p2 * (factorial(2 * half + 1) * factorial(2 * half))
        report.check_equal("nonlinear", "mcal.nonlinear", {"space": space.tag, "N": n}, lhs, rhs)


def check_decomposition(report: VerificationReport, space: ModelSpace, n_max: int,
                        literal_max: int = 5) -> None:
    """P_{2N} = M_{2N} + primary part, plus the grouped evaluation on small N."""
    for n in range(1, n_max + 1):
        params = {"space": space.tag, "N": n}
        primary = ZERO
        for comp, coeff in _primary_terms(n):
            primary = primary + _product(space, comp.parts).scale(coeff)
        report.check_equal("decomposition", "mcal.decomposition", params,
                           gjms_poly(space, n), m_operator(space, n) + primary)
        if n <= literal_max:
            report.check_equal("decomposition", "mcal.grouped-evaluation", params,
                               m_operator(space, n), build_M_by_composition(space, n))


def check_leading_part(report: VerificationReport, space: ModelSpace, n_max: int) -> None:
    """Primary part has the principal symbol of P_{2N}."""
    p2 = gjms_poly(space, 1)
    for n in range(2, n_max + 1):
        top = primary_operator(space, n).homogeneous_part(space.symbols, n)
        report.check_equal("leading_part", "primary.principal-part", {"space": space.tag, "N": n},
                           top, (p2 ** n).homogeneous_part(space.symbols, n))


def partial_sum_sides(a: int, n: int) -> tuple[MultiPoly, MultiPoly]:
    space = SPHERE
    lhs = ZERO
    for comp in enumerate_compositions(n - a):
        lhs = lhs + _product(space, comp.parts).scale(m_coefficient((a,) + comp.parts))
    rhs = ZERO
    rest = n - a
    for k in range(rest):
        coeff = Fraction((-1) ** (rest - k) * binom(n, k) * factorial(rest) * factorial(rest - 1),
                         factorial(rest - k) * factorial(rest - k - 1))
        rhs = rhs + gjms_poly(space, rest - k).scale(coeff)
    return lhs, rhs.scale(binom(n - 1, a - 1))


def partial_sum(space: ModelSpace | str, a: int, n: int) -> VerificationReport:
    space = get_space(space)
    if space != SPHERE:
        raise ValueError("partial sums are stated on the round sphere")
    if not 1 <= a <= n - 1:
        raise ValueError("need 1 <= a <= N-1")
    report = VerificationReport("partial_sum", config={"a": a, "N": n})
    lhs, rhs = partial_sum_sides(a, n)
    report.check_equal("partial_sum", "mcal.partial-sum", {"space": "sphere", "N": n, "a": a}, lhs, rhs)
    return report


def check_partial_sums(report: VerificationReport, n_max: int) -> None:
    for n in range(2, n_max + 1):
        for a in range(1, n):
            lhs, rhs = partial_sum_sides(a, n)
            report.check_equal("partial_sum", "mcal.partial-sum",
                               {"space": "sphere", "N": n, "a": a}, lhs, rhs)


def verify_closed_form(space: ModelSpace | str, n: int) -> VerificationReport:
    space = get_space(space)
    report = VerificationReport("closed_form", config={"space": space.tag, "N": n})
    m = m_operator(space, n)
    report.check_equal("closed_form", "mcal.closed-form", {"space": space.tag, "N": n},
                       m, closed_form(space, n))
    return report


# -- generating functions ------------------------------------------------------

def _resolvent_series(eigenvalue: MultiPoly, order: int) -> TruncSeries:
    """(1 - r^2 eigenvalue / 2)^(-2) as a series in r."""
    base = TruncSeries(order, (ONE, ZERO, eigenvalue.scale(Fraction(-1, 2))))
    return (base * base).inverse()


def gf_right_side(space: ModelSpace, order: int) -> TruncSeries:
    """Divergence term plus trace term, reduced to Schouten eigenblocks."""
    out = TruncSeries(order, ())
    for block in space.schouten_blocks():
        f = _resolvent_series(block.eigenvalue, order)
        weight = block.multiplicity * (block.multiplicity.scale(Fraction(1, 2)) - 1) * block.eigenvalue
        out = out + f * (weight - block.laplacian)
    return out


def gf_left_side(space: ModelSpace, order: int) -> TruncSeries:
    coeffs = [ZERO] * (order + 1)
    for k in range(order // 2 + 1):
        coeffs[2 * k] = v_operator(space, k + 1).scale(Fraction(1, 4 ** k))
    return TruncSeries(order, tuple(coeffs))


def verify_generating_function(space: ModelSpace | str, order: int) -> VerificationReport:
    space = get_space(space)
    report = VerificationReport("generating_function", config={"space": space.tag, "K": order})
    check_generating_function(report, space, order)
    return report


def check_generating_function(report: VerificationReport, space: ModelSpace, order: int) -> None:
    if space == SPHERE:
        # the sphere is the unit-curvature Einstein case; checked there
        return
    lhs, rhs = gf_left_side(space, order), gf_right_side(space, order)
    for k in range(0, order + 1, 2):
        report.check_equal("generating_function", "mcal.generating-function",
                           {"space": space.tag, "power": k}, lhs[k], rhs[k])


def check_flat_divergence(report: VerificationReport, space: ModelSpace, n_max: int) -> None:
    """Non-constant part of M_{2N} as a multiple of div(P^{N-1} # d)."""
    for n in range(1, n_max + 1):
        m = m_operator(space, n)
        m0 = m - apply_to_constant(m, space)
        divergence = ZERO
        for block in space.schouten_blocks():
            divergence = divergence - block.eigenvalue ** (n - 1) * block.laplacian
        c_n = 2 ** (n - 1) * factorial(n) * factorial(n - 1)
        report.check_equal("flat_divergence", "mcal.non-constant-part", {"space": space.tag, "N": n},
                           m0, divergence * (-c_n))

