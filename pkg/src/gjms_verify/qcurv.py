"""Primary parts of Q-curvatures, defects, volume series and their identities.

On model spaces every Q_{2a} is a constant, so a composition of GJMS
operators applied to Q_{2a} just multiplies it by the constant terms
P_{2k}(1). That constant-evaluation chain is how ``q_primary`` evaluates the
defining sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .compositions import enumerate_compositions, m_coefficient
from .exact import ONE, ZERO, MultiPoly, TruncSeries, binom, binom_poly, binomial_series, register_variable, var
from .report import VerificationReport
from .spaces import (
    PSEUDOSPHERE,
    SPHERE,
    SPHERE_HYPERBOLIC,
    ModelSpace,
    get_space,
    gjms_on_constant,
    q_value_poly,
)

Q = var("q")
P = var("p")
NU = var("nu")

NUMERIC_PAIRS = ((1, 1), (1, 3), (3, 3), (3, 5), (5, 5))

# displayed primary Q-curvatures: (inner composition J, outer order a) -> coefficient
DISPLAYED_Q_PRIMARY = {
    2: {((1,), 1): -1},
    3: {((1,), 2): -2, ((2,), 1): 2, ((1, 1), 1): -3},
    4: {((1,), 3): -3, ((3,), 1): -3, ((2,), 2): 9, ((1, 2), 1): 8,
        ((1, 1), 2): -12, ((2, 1), 1): 12, ((1, 1, 1), 1): -18},
}


@dataclass(frozen=True)
class QDefect:
    space: ModelSpace
    order: int
    q_primary: MultiPoly
    value: MultiPoly


@dataclass(frozen=True)
class VolumeSeries:
    space: ModelSpace
    v: TruncSeries
    w: TruncSeries
    g: TruncSeries


def q_primary_terms(n: int) -> dict[tuple[tuple[int, ...], int], Fraction]:
    """Coefficients of P_{2J}(Q_{2a}) in the primary part of Q_{2N}."""
    out = {}
    for comp in enumerate_compositions(n):
        if comp.length == 1:
            continue
        inner, a = comp.parts[:-1], comp.parts[-1]
        out[(inner, a)] = m_coefficient(comp) * (-1) ** (n + 1 + a)
    return out


@lru_cache(maxsize=None)
def _constant_chain(space: ModelSpace, parts: tuple[int, ...]) -> MultiPoly:
    out = ONE
    for part in parts:
        out = out * gjms_on_constant(space, part)
    return out


@lru_cache(maxsize=None)
def _q_primary(space: ModelSpace, n: int) -> MultiPoly:
    if n < 1:
        raise ValueError("Q-curvatures are indexed by N >= 1")
    grouped: dict[tuple[tuple[int, ...], int], Fraction] = {}
    for (inner, a), coeff in q_primary_terms(n).items():
        key = (tuple(sorted(inner)), a)
        grouped[key] = grouped.get(key, Fraction(0)) + coeff
    out = ZERO
    for (inner, a), coeff in sorted(grouped.items()):
        if coeff:
            out = out + (_constant_chain(space, inner) * q_value_poly(space, a)).scale(coeff)
    return out


def q_primary(space: ModelSpace | str, n: int) -> MultiPoly:
    return _q_primary(get_space(space), n)


@lru_cache(maxsize=None)
def _defect(space: ModelSpace, n: int) -> MultiPoly:
    return q_value_poly(space, n) - _q_primary(space, n)


def lambda_defect(space: ModelSpace | str, n: int) -> QDefect:
    space = get_space(space)
    return QDefect(space, n, _q_primary(space, n), _defect(space, n))


# -- series --------------------------------------------------------------------

def volume_v(space: ModelSpace, order: int) -> TruncSeries:
    if space.tag == "sphere":
        return binomial_series(Fraction(-1, 4), NU * 2, order, step=2)
    if space.tag == "einstein":
        return binomial_series(var("c").scale(Fraction(-1, 4)), NU * 2, order, step=2)
    return (binomial_series(Fraction(-1, 4), Q, order, step=2)
            * binomial_series(Fraction(1, 4), P, order, step=2))


def g_series(space: ModelSpace | str, order: int) -> TruncSeries:
    """1 + sum_N (-1)^N Lambda_{2N} r^N / (N! (N-1)!)."""
    space = get_space(space)
    if order < 1:
        raise ValueError("series order must be at least 1")
    coeffs = [ONE]
    for n in range(1, order + 1):
        coeffs.append(_defect(space, n).scale(Fraction((-1) ** n, factorial(n) * factorial(n - 1))))
    return TruncSeries(order, tuple(coeffs))


def volume_series(space: ModelSpace | str, order: int) -> VolumeSeries:
    space = get_space(space)
    if order < 2:
        raise ValueError("series order must be at least 2")
    v = volume_v(space, order)
    return VolumeSeries(space, v, v.sqrt(), g_series(space, order // 2))


def power_sums(space: ModelSpace, k_max: int) -> list[MultiPoly]:
    """tr(P^k) for k = 0..k_max from the Schouten eigenblocks."""
    out = []
    for k in range(k_max + 1):
        acc = ZERO
        for block in space.schouten_blocks():
            acc = acc + block.multiplicity * block.eigenvalue ** k
        out.append(acc)
    return out


def elementary_traces(space: ModelSpace, j_max: int) -> list[MultiPoly]:
    """tr(wedge^j P) via Newton's identities."""
    p = power_sums(space, j_max)
    e = [ONE]
    for k in range(1, j_max + 1):
        acc = ZERO
        for i in range(1, k + 1):
            acc = acc + e[k - i] * p[i] * (-1) ** (i - 1)
        e.append(acc.scale(Fraction(1, k)))
    return e


def trace_v(space: ModelSpace, j_max: int) -> list[MultiPoly]:
    """v_{2j} = (-1/2)^j tr(wedge^j P)."""
    return [e.scale(Fraction(-1, 2) ** j) for j, e in enumerate(elementary_traces(space, j_max))]


# -- identities ------------------------------------------------------------------

def check_q_primary_table(report: VerificationReport) -> None:
    for n, displayed in DISPLAYED_Q_PRIMARY.items():
        computed = q_primary_terms(n)
        report.check_true("q_primary", "q-primary.displayed-terms", {"N": n},
                          computed == {k: Fraction(v) for k, v in displayed.items()},
                          f"computed {sorted(computed.items())}")
    for n in range(2, 9):
        # weight of the top Laplacian power of J in the primary part
        weight = sum(m_coefficient(c) for c in enumerate_compositions(n) if c.length > 1)
        report.check_equal("q_primary", "q-primary.laplacian-weight", {"N": n}, weight, -1)


def check_sphere_defect(report: VerificationReport, n_max: int) -> None:
    for n in range(1, n_max + 1):
        expected = ONE
        for j in range(n):
            expected = expected * (NU - j)
        report.check_equal("sphere_defect", "defect.sphere-product", {"space": "sphere", "N": n},
                           _defect(SPHERE, n).scale(Fraction(1, factorial(n - 1))), expected)
    order = n_max
    binom_series = TruncSeries(order, tuple(binom_poly(NU, k) * (-1) ** k for k in range(order + 1)))
    report.check_equal("sphere_defect", "defect.sphere-generating-function", {"space": "sphere", "K": order},
                       g_series(SPHERE, order), binom_series)


def check_volume(report: VerificationReport, space: ModelSpace, order: int) -> None:
    vol = volume_v(space, order)
    traces = trace_v(space, order // 2)
    for j in range(order // 2 + 1):
        report.check_equal("volume", "volume.trace-coefficients", {"space": space.tag, "j": j},
                           vol[2 * j], traces[j])
    w = vol.sqrt()
    report.check_equal("volume", "volume.square-root", {"space": space.tag, "K": order}, w * w, vol)


def check_duality(report: VerificationReport, space: ModelSpace, order: int) -> None:
    vs = volume_series(space, order)
    lhs = vs.g.dilate(Fraction(1, 4), 2, order)
    diff = lhs - vs.w
    for k in range(order + 1):
        report.check_equal("duality", "duality.coefficient", {"space": space.tag, "power": k},
                           diff[k], 0)


def quadratic_sides(space: ModelSpace, n: int) -> tuple[MultiPoly, MultiPoly]:
    lhs = _defect(space, n) * 2
    for j in range(1, n):
        lhs = lhs + (_defect(space, n - j) * _defect(space, j)).scale(
            Fraction(j * (n - j) * binom(n, j) ** 2, n))
    rhs = volume_v(space, 2 * n)[2 * n] * ((-1) ** n * factorial(n) * factorial(n - 1) * 4 ** n)
    return lhs, rhs


def check_quadratic(report: VerificationReport, space: ModelSpace, n_max: int) -> None:
    g = g_series(space, n_max)
    g_squared = g * g
    vol = volume_v(space, 2 * n_max)
    for n in range(1, n_max + 1):
        params = {"space": space.tag, "N": n}
        lhs, rhs = quadratic_sides(space, n)
        report.check_equal("quadratic", "quadratic.recursion", params, lhs, rhs)
        scaled = (g_squared[n] - vol[2 * n] * 4 ** n) * ((-1) ** n * factorial(n) * factorial(n - 1))
        report.check_equal("quadratic", "quadratic.agrees-with-duality", params, lhs - rhs, scaled)
    v = vol.coeffs
    d = [None] + [_defect(space, n) for n in range(1, n_max + 1)]
    q2 = q_value_poly(space, 1)
    instances = [
        (2, d[2] + q2 * q2, v[4] * 16),
        (3, d[3] + d[2] * q2 * 6, v[6] * -384),
        (4, d[4] + d[3] * q2 * 12 + d[2] * d[2] * 18, v[8] * 18432),
    ]
    for n, lhs, rhs in instances:
        if n <= n_max:
            report.check_equal("quadratic", "quadratic.low-order-instance",
                               {"space": space.tag, "N": n}, lhs, rhs)


def _symbolic_volume() -> tuple[list[MultiPoly], TruncSeries]:
    names = ["v2", "v4", "v6", "v8"]
    for name in names:
        register_variable(name)
    vs = [var(name) for name in names]
    series = TruncSeries(8, (ONE, ZERO, vs[0], ZERO, vs[1], ZERO, vs[2], ZERO, vs[3]))
    return vs, series


def check_w_beta(report: VerificationReport, space: ModelSpace, n_max: int) -> None:
    order = 2 * n_max
    w = volume_v(space, order).sqrt()
    for n in range(1, n_max + 1):
        report.check_equal("w_beta", "w.defect-relation", {"space": space.tag, "N": n},
                           _defect(space, n) * (-1) ** n,
                           w[2 * n] * (4 ** n * factorial(n) * factorial(n - 1)))
    (v2, v4, v6, v8), generic = _symbolic_volume()
    root = generic.sqrt()
    explicit = [
        v2.scale(Fraction(1, 2)),
        (v4 * 4 - v2 * v2).scale(Fraction(1, 8)),
        (v6 * 8 - v4 * v2 * 4 + v2 ** 3).scale(Fraction(1, 16)),
        (v8 * 64 - v6 * v2 * 32 - v4 * v4 * 16 + v2 * v2 * v4 * 24 - v2 ** 4 * 5).scale(Fraction(1, 128)),
    ]
    for j, form in enumerate(explicit, start=1):
        report.check_equal("w_beta", "w.explicit-form", {"j": j}, root[2 * j], form)
    vol = volume_v(space, 8)
    at = {"v2": vol[2], "v4": vol[4], "v6": vol[6], "v8": vol[8]}
    sv = {k: MultiPoly.coerce(x) for k, x in at.items()}
    params = {"space": space.tag}
    named = [
        (1, q_value_poly(space, 1), sv["v2"] * -2),
        (2, q_value_poly(space, 2), _q_primary(space, 2) + (sv["v4"] * 4 - sv["v2"] ** 2) * 4),
        (3, q_value_poly(space, 3),
         _q_primary(space, 3) - (sv["v6"] * 8 - sv["v4"] * sv["v2"] * 4 + sv["v2"] ** 3) * 48),
        (4, q_value_poly(space, 4) - _q_primary(space, 4),
         explicit[3].substitute_many(at) * (factorial(3) * factorial(4) * 2 ** 8)),
    ]
    for n, lhs, rhs in named:
        if n <= n_max:
            report.check_equal("w_beta", "w.low-order-instance", dict(params, N=n), lhs, rhs)


def pseudo_final_sides(n: int) -> tuple[MultiPoly, MultiPoly]:
    space = PSEUDOSPHERE
    lhs = ZERO
    for comp in enumerate_compositions(n):
        *inner, last = comp.parts
        term = _constant_chain(space, tuple(inner)) * q_value_poly(space, last) * (-1) ** last
        lhs = lhs + term.scale(m_coefficient(comp))
    rhs = ZERO
    for m in range(n + 1):
        rhs = rhs + binom_poly(Q.scale(Fraction(1, 2)), m) * binom_poly(P.scale(Fraction(1, 2)), n - m) * (-1) ** m
    return lhs, rhs * (factorial(n) * factorial(n - 1))


def check_pseudo_final(report: VerificationReport, n_max: int) -> None:
    for n in range(1, n_max + 1):
        lhs, rhs = pseudo_final_sides(n)
        report.check_equal("pseudo_final", "pseudo.summation", {"space": "pseudosphere", "N": n}, lhs, rhs)


def check_vanishing_critical(report: VerificationReport, pairs=NUMERIC_PAIRS) -> None:
    for q_val, p_val in pairs:
        params = {"q": q_val, "p": p_val}
        if q_val % 2 == 0 or p_val % 2 == 0:
            report.note(f"pair ({q_val},{p_val}) skipped: the vanishing statement needs odd q and p")
            continue
        n = q_val + p_val
        big_n = n // 2
        qn = q_value_poly(SPHERE_HYPERBOLIC, big_n).substitute_many({"q": q_val, "p": p_val})
        report.check_equal("vanishing_critical", "critical.q-vanishes", params, qn, 0)
        product = 1
        for j in range(1, big_n):
            product *= n - 2 * j
        for j in range(big_n):
            product *= 2 * j + 1 - p_val
        report.check_equal("vanishing_critical", "critical.product-form", params, qn, product)
        alternating = sum((-1) ** i * binom(q_val, i) * binom(n - q_val, big_n - i) for i in range(q_val + 1))
        report.check_equal("vanishing_critical", "critical.alternating-sum", params, alternating, 0)
        series = (binomial_series(Fraction(-1, 2), q_val, n, step=2)
                  * binomial_series(Fraction(1, 2), p_val, n, step=2))
        report.check_equal("vanishing_critical", "critical.volume-coefficient", params, series[n], 0)


def check_low_order(report: VerificationReport, space: ModelSpace, include_variants: bool = False) -> None:
    """Explicit low-order formulas with the Schouten data of the space."""
    params = {"space": space.tag}
    e = elementary_traces(space, 4)
    p = power_sums(space, 2)
    trace, norm2 = p[1], p[2]
    nu = space.half_dim
    q2, q4, q6, q8 = (q_value_poly(space, n) for n in (1, 2, 3, 4))
    report.check_equal("low_order", "low-order.q2-trace", params, q2, trace)
    # the J-Laplacian term drops: J is constant
    report.check_equal("low_order", "low-order.q4-general", params, nu * trace * trace - norm2 * 2, q4)
    if include_variants and space == SPHERE:
        report.expect_mismatch("low_order", "low-order.q4-variant", params,
                               nu * trace * trace - norm2 * 4, q4,
                               "coefficient -4 on |P|^2 instead of -2")
    report.check_equal("low_order", "low-order.q4-recursive", params,
                       q4 - _q_primary(space, 2), q2 * q2 * -1 + e[2] * 4)
    v6 = e[3].scale(Fraction(-1, 8))
    report.check_equal("low_order", "low-order.q6", params,
                       _q_primary(space, 3) - (q4 - _q_primary(space, 2)) * q2 * 6 - v6 * 384, q6)
    v8 = e[4].scale(Fraction(1, 16))
    report.check_equal("low_order", "low-order.v8-trace", params, v8, volume_v(space, 8)[8])
    report.check_equal("low_order", "low-order.q8", params,
                       _q_primary(space, 4) - _defect(space, 3) * q2 * 12
                       - _defect(space, 2) ** 2 * 18 + v8 * 18432, q8)


def verify_q_identity(kind: str, params: dict | None = None) -> VerificationReport:
    params = dict(params or {})
    space = get_space(params.get("space", "sphere"))
    n_max = params.get("N_max", 6)
    report = VerificationReport(kind, config=dict(params))
    if kind == "duality":
        check_duality(report, space, params.get("K", 2 * n_max))
    elif kind == "quadratic":
        check_quadratic(report, space, n_max)
    elif kind == "w_beta":
        check_w_beta(report, space, n_max)
    elif kind == "pseudo_final":
        check_pseudo_final(report, n_max)
    elif kind == "vanishing_critical":
        check_vanishing_critical(report, params.get("pairs", NUMERIC_PAIRS))
    elif kind == "low_order":
        check_low_order(report, space, params.get("include_variants", False))
    else:
        raise ValueError(f"unknown Q identity {kind!r}")
    return report
