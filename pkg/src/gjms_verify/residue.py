"""Residue polynomials P^res_{2N}(lam) and the sphere Q^res_{2N}(lam).

P^res_{2N} is built from the recursion that interpolates GJMS products at
the nodes ``lam = -nu + N, ..., -nu + 2N - 1``. Node differences are
integers, so a plain Lagrange formula over the polynomial ring can rebuild
any of these polynomials from its nodal values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exact import LAM, NU, ONE, ZERO, MultiPoly
from .report import VerificationReport
from .spaces import SPHERE, ModelSpace, get_space, gjms_on_constant, gjms_poly, q_value_poly


@dataclass(frozen=True)
class ResiduePoly:
    space: ModelSpace
    order: int
    poly: MultiPoly

    @property
    def degree(self) -> int:
        return self.poly.degree("lam")

    def at(self, value: MultiPoly | int) -> MultiPoly:
        return self.poly.substitute("lam", value)

    def coefficients(self) -> list[MultiPoly]:
        """Coefficients in ascending powers of lam."""
        return self.poly.coefficients("lam")


def _node(space: ModelSpace, shift: int) -> MultiPoly:
    return -space.half_dim + shift


@lru_cache(maxsize=None)
def _residue(space: ModelSpace, n: int) -> MultiPoly:
    if n < 1:
        raise ValueError("residue polynomials are indexed by N >= 1")
    if n == 1:
        return gjms_poly(space, 1)
    shifted = LAM + space.half_dim - 2 * n
    lead = ONE
    for k in range(1, n):
        lead = lead * (shifted + k).scale(Fraction(1, k))
    out = lead * gjms_poly(space, n)
    for j in range(1, n):
        weight = ONE
        for k in range(1, n + 1):
            if k != j:
                weight = weight * (shifted + k).scale(Fraction(1, k - j))
        lower = _residue(space, n - j).substitute("lam", _node(space, 2 * n - j))
        out = out + weight * gjms_poly(space, j) * lower * (-1) ** j
    return out


def residue_poly(space: ModelSpace | str, n: int) -> ResiduePoly:
    space = get_space(space)
    return ResiduePoly(space, n, _residue(space, n))


def lagrange_interpolate(nodes: list[MultiPoly], values: list[MultiPoly],
                         variable: str = "lam") -> MultiPoly:
    """Polynomial of degree < len(nodes) in ``variable`` through the given values.

    Nodes may be polynomials in other variables as long as pairwise
    differences are rational constants.
    """
    if len(nodes) != len(values):
        raise ValueError("need one value per node")
    t = MultiPoly.var(variable)
    out = ZERO
    for i, (node_i, value) in enumerate(zip(nodes, values)):
        basis = ONE
        for k, node_k in enumerate(nodes):
            if k == i:
                continue
            gap = node_i - node_k
            if not gap.is_constant() or gap.is_zero():
                raise ValueError("node differences must be non-zero constants")
            basis = (basis * (t - node_k)).scale(1 / gap.constant_value())
        out = out + basis * value
    return out


def nodal_values(space: ModelSpace, n: int) -> list[tuple[MultiPoly, MultiPoly]]:
    """The N interpolation conditions as (node, required value) pairs."""
    out = [(_node(space, n), gjms_poly(space, n) * (-1) ** (n - 1))]
    for j in range(1, n):
        node = _node(space, 2 * n - j)
        out.append((node, gjms_poly(space, j) * _residue(space, n - j).substitute("lam", node) * (-1) ** j))
    return out


def check_interpolation(report: VerificationReport, space: ModelSpace, n_max: int) -> None:
    for n in range(1, n_max + 1):
        params = {"space": space.tag, "N": n}
        res = residue_poly(space, n)
        report.check_true("interpolation", "residue.degree", params,
                          res.degree == n - 1, f"lam-degree {res.degree}")
        conditions = nodal_values(space, n)
        for index, (node, expected) in enumerate(conditions):
            report.check_equal("interpolation", "residue.nodal-value", dict(params, node=index),
                               res.at(node), expected)
        rebuilt = lagrange_interpolate([c[0] for c in conditions], [c[1] for c in conditions])
        report.check_equal("interpolation", "residue.uniqueness", params, rebuilt, res.poly)


def check_mystic(report: VerificationReport, space: ModelSpace, n_max: int) -> None:
    from .mcal import m_operator

    for n in range(2, n_max + 1):
        params = {"space": space.tag, "N": n}
        res = residue_poly(space, n)
        m = m_operator(space, n)
        derived = res.poly.derivative("lam", n - 1).substitute("lam", 0)
        report.check_equal("mystic", "residue.leading-derivative", params, derived, m)
        report.check_equal("mystic", "residue.leading-coefficient", params,
                           res.poly.coefficient("lam", n - 1) * factorial(n - 1), m)


def verify_residue_properties(space: ModelSpace | str, n: int, kind: str) -> VerificationReport:
    space = get_space(space)
    report = VerificationReport(kind, config={"space": space.tag, "N": n})
    if kind == "interpolation":
        check_interpolation(report, space, n)
    elif kind == "mystic":
        if n < 2:
            raise ValueError("the derivative check needs N >= 2")
        check_mystic(report, space, n)
    else:
        raise ValueError(f"unknown residue property {kind!r}")
    return report


# -- sphere Q-polynomials ------------------------------------------------------

@lru_cache(maxsize=None)
def _q_res_sphere(n: int) -> MultiPoly:
    if n < 1:
        raise ValueError("Q-polynomials are indexed by N >= 1")
    out = NU * LAM * (1 if n % 2 else -1)
    for j in range(1, n):
        out = out * (NU - j) * (LAM - n - j)
    return out


def q_res_sphere(n: int) -> tuple[ResiduePoly, VerificationReport]:
    report = VerificationReport("q_res_sphere", config={"N": n})
    check_q_res_sphere(report, n)
    return ResiduePoly(SPHERE, n, _q_res_sphere(n)), report


def _q_res_conditions(n: int) -> list[tuple[MultiPoly, MultiPoly]]:
    out = []
    for j in range(1, n):
        node = _node(SPHERE, 2 * n - j)
        out.append((node, gjms_on_constant(SPHERE, j) * _q_res_sphere(n - j).substitute("lam", node)
                    * (-1) ** j))
    out.append((_node(SPHERE, n), -(NU - n) * q_value_poly(SPHERE, n)))
    out.append((ZERO, ZERO))
    return out


def check_q_res_sphere(report: VerificationReport, n: int) -> None:
    from .qcurv import lambda_defect

    qres = _q_res_sphere(n)
    params = {"space": "sphere", "N": n}
    conditions = _q_res_conditions(n)
    for j, (node, expected) in enumerate(conditions[: n - 1], start=1):
        report.check_equal("q_res", "qres.recursive-node", dict(params, j=j),
                           qres.substitute("lam", node), expected)
    node, expected = conditions[n - 1]
    report.check_equal("q_res", "qres.shifted-node", params, qres.substitute("lam", node), expected)
    report.check_equal("q_res", "qres.vanishes-at-zero", params, qres.substitute("lam", 0), 0)
    critical = qres.substitute("nu", n)
    report.check_equal("q_res", "qres.critical-derivative", params,
                       critical.derivative("lam").substitute("lam", 0),
                       q_value_poly(SPHERE, n).substitute("nu", n))
    report.check_equal("q_res", "qres.leading-coefficient", params,
                       qres.coefficient("lam", n),
                       lambda_defect(SPHERE, n).value.scale(Fraction(-(-1) ** n, factorial(n - 1))))
