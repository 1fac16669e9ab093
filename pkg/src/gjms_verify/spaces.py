"""GJMS operators and Q-curvatures on model geometries.

On every model space the GJMS operators are polynomials in commuting
second-order symbols:

* ``sphere``: one symbol ``x`` for the Laplacian, half dimension ``nu``;
* ``einstein``: as the sphere, with the normalized scalar curvature ``c``;
* ``pseudosphere`` and ``sphere-hyperbolic``: the symbols ``b2``, ``c2``
  (squares of the shifted factor Laplacians), formal factor dimensions
  ``q`` and ``p``, half dimension ``(q + p)/2``.

The two product geometries share their operator polynomials; they differ only
in how ``b2`` and ``c2`` relate to the factor Laplacians, which matters for
the restriction formulas and the Schouten eigen-data below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exact import NU, ONE, ZERO, MultiPoly, binom_poly, const, var
from .report import VerificationReport

Q = var("q")
P = var("p")
C = var("c")
X = var("x")
B2 = var("b2")
C2 = var("c2")

SPACE_TAGS = ("sphere", "einstein", "pseudosphere", "sphere-hyperbolic")


@dataclass(frozen=True)
class SchoutenBlock:
    """An eigenspace of the (constant) Schouten endomorphism.

    ``laplacian`` is the block Laplacian in operator symbols, normalized so
    that the divergence term of a function ``f`` of the Schouten tensor acts as
    ``-sum_b f(eigenvalue_b) * laplacian_b``.
    """

    eigenvalue: MultiPoly
    multiplicity: MultiPoly
    laplacian: MultiPoly


@dataclass(frozen=True)
class ModelSpace:
    tag: str

    def __post_init__(self):
        if self.tag not in SPACE_TAGS:
            raise ValueError(f"unknown model space {self.tag!r}")

    @property
    def is_product(self) -> bool:
        return self.tag in ("pseudosphere", "sphere-hyperbolic")

    @property
    def half_dim(self) -> MultiPoly:
        return (Q + P).scale(Fraction(1, 2)) if self.is_product else NU

    @property
    def symbols(self) -> tuple[str, ...]:
        return ("b2", "c2") if self.is_product else ("x",)

    @property
    def parameters(self) -> tuple[str, ...]:
        return {"sphere": ("nu",), "einstein": ("nu", "c")}.get(self.tag, ("q", "p"))

    def constant_values(self) -> dict[str, MultiPoly]:
        """What each operator symbol becomes on constant functions."""
        if self.is_product:
            return {"b2": ((Q - 1) * (Q - 1)).scale(Fraction(1, 4)),
                    "c2": ((P - 1) * (P - 1)).scale(Fraction(1, 4))}
        return {"x": ZERO}

    def schouten_blocks(self) -> tuple[SchoutenBlock, ...]:
        half = const(Fraction(1, 2))
        if self.tag == "sphere":
            return (SchoutenBlock(half, NU * 2, X),)
        if self.tag == "einstein":
            return (SchoutenBlock(C.scale(Fraction(1, 2)), NU * 2, X),)
        b_const, c_const = self.constant_values()["b2"], self.constant_values()["c2"]
        # sphere factor Laplacian: b_const - b2; second block, metric sign folded in
        return (SchoutenBlock(half, Q, b_const - B2),
                SchoutenBlock(-half, P, C2 - c_const))

    def __str__(self) -> str:
        return self.tag


SPHERE = ModelSpace("sphere")
EINSTEIN = ModelSpace("einstein")
PSEUDOSPHERE = ModelSpace("pseudosphere")
SPHERE_HYPERBOLIC = ModelSpace("sphere-hyperbolic")
ALL_SPACES = (SPHERE, EINSTEIN, PSEUDOSPHERE, SPHERE_HYPERBOLIC)


def get_space(tag: str | ModelSpace) -> ModelSpace:
    return tag if isinstance(tag, ModelSpace) else ModelSpace(tag)


@dataclass(frozen=True)
class OperatorElem:
    space: ModelSpace
    poly: MultiPoly

    def operator_degree(self) -> int:
        """Degree in the operator symbols; each symbol is second order."""
        return self.poly.degree_in(self.space.symbols)


@dataclass(frozen=True)
class QValue:
    space: ModelSpace
    order: int
    value: MultiPoly


# -- operators ---------------------------------------------------------------

def _product_factor(k: int) -> MultiPoly:
    d = B2 - C2
    return d * d - (B2 + C2) * (2 * k * k) + k ** 4


@lru_cache(maxsize=None)
def gjms_poly(space: ModelSpace, n: int) -> MultiPoly:
    if n < 1:
        raise ValueError("GJMS operators are indexed by N >= 1")
    if space.is_product:
        half = n // 2
        out = ONE if n % 2 == 0 else C2 - B2
        for j in range(1, half + 1):
            out = out * _product_factor(2 * j - 1 if n % 2 == 0 else 2 * j)
        return out
    scale = C if space.tag == "einstein" else ONE
    out = ONE
    for i in range(n):
        # factor j = nu + i of the product over nu <= j <= nu + N - 1
        j = NU + i
        out = out * (X - j * (NU * 2 - 1 - j) * scale)
    return out


def gjms(space: ModelSpace | str, n: int) -> OperatorElem:
    space = get_space(space)
    return OperatorElem(space, gjms_poly(space, n))


@lru_cache(maxsize=None)
def q_value_poly(space: ModelSpace, n: int) -> MultiPoly:
    if n < 1:
        raise ValueError("Q-curvatures are indexed by N >= 1")
    if space.is_product:
        out = ONE
        half_sum = (P + Q).scale(Fraction(1, 2))
        half_diff = (Q - P).scale(Fraction(1, 2))
        for j in range(1, n):
            out = out * (half_sum + n - 2 * j)
        for j in range(n):
            out = out * (half_diff - n + 1 + 2 * j)
        return out
    out = NU
    for j in range(1, n):
        out = out * (NU - j) * (NU + j)
    if space.tag == "einstein":
        out = out * C ** n
    return out


def q_value(space: ModelSpace | str, n: int) -> QValue:
    space = get_space(space)
    return QValue(space, n, q_value_poly(space, n))


def apply_to_constant(op: OperatorElem | MultiPoly, space: ModelSpace | None = None) -> MultiPoly:
    """Evaluate an operator on the constant function 1."""
    if isinstance(op, OperatorElem):
        space, poly = op.space, op.poly
    else:
        if space is None:
            raise ValueError("a bare polynomial needs its model space")
        poly = op
    return poly.substitute_many(space.constant_values())


@lru_cache(maxsize=None)
def gjms_on_constant(space: ModelSpace, n: int) -> MultiPoly:
    return apply_to_constant(gjms_poly(space, n), space)


def non_constant_part(poly: MultiPoly, space: ModelSpace) -> MultiPoly:
    return poly - apply_to_constant(poly, space)


def expand_product(a: int, b: int, space: ModelSpace | str = SPHERE) -> list[tuple[int, Fraction]]:
    """Coefficients of P_{2(A+B-j)} in P_{2A} P_{2B}.

    On Einstein spaces the j-th coefficient additionally carries ``c**j``.
    """
    space = get_space(space)
    if space.is_product:
        raise ValueError("product expansion is defined on spheres and Einstein spaces")
    if a < 0 or b < 0:
        raise ValueError("orders must be non-negative")
    out = []
    for j in range(min(a, b) + 1):
        coeff = Fraction((-1) ** j * factorial(a) * factorial(b) * factorial(a + b),
                         factorial(j) * factorial(a - j) * factorial(b - j) * factorial(a + b - j))
        out.append((a + b - j, coeff))
    return out


def _gjms_or_one(space: ModelSpace, n: int) -> MultiPoly:
    return ONE if n == 0 else gjms_poly(space, n)


def product_from_expansion(a: int, b: int, space: ModelSpace) -> MultiPoly:
    out = ZERO
    for j, (order, coeff) in enumerate(expand_product(a, b, space)):
        term = _gjms_or_one(space, order).scale(coeff)
        if space.tag == "einstein":
            term = term * C ** j
        out = out + term
    return out


# -- restriction to functions constant on one factor ---------------------------

def restricted_gjms(n: int, half: str) -> MultiPoly:
    """P_{2N} on sphere x hyperbolic acting on functions constant on one factor.

    ``x`` stands for the Laplacian of the remaining factor.
    """
    b_const = ((Q - 1) * (Q - 1)).scale(Fraction(1, 4))
    c_const = ((P - 1) * (P - 1)).scale(Fraction(1, 4))
    if half == "plus":
        values = {"b2": b_const - X, "c2": c_const}
    elif half == "minus":
        values = {"b2": b_const, "c2": c_const + X}
    else:
        raise ValueError("half must be 'plus' or 'minus'")
    return gjms_poly(SPHERE_HYPERBOLIC, n).substitute_many(values)


def restriction_shifts(n: int, half: str) -> list[MultiPoly]:
    """Shift constants s_j of the factorization prod_j (x + s_j)."""
    half_sum = (P + Q).scale(Fraction(1, 2))
    half_diff = (P - Q).scale(Fraction(1, 2))
    shifts = []
    for j in range(n):
        if half == "plus":
            shifts.append((half_sum - n + 2 * j) * (half_diff - n + 2 * j + 1))
        else:
            shifts.append((half_sum - n + 2 * j) * (half_diff + n - 2 * j - 1))
    return shifts


def verify_restriction(n: int, half: str, numeric_pairs=()) -> VerificationReport:
    report = VerificationReport("restriction", config={"N": n, "half": half})
    check_restriction(report, n, half, numeric_pairs)
    return report


def check_restriction(report: VerificationReport, n: int, half: str, numeric_pairs=()) -> None:
    restricted = restricted_gjms(n, half)
    product = ONE
    for s in restriction_shifts(n, half):
        product = product * (X + s)
    params = {"space": "sphere-hyperbolic", "N": n, "half": half}
    report.check_equal("restriction", "restriction.factorization", params, restricted, product)
    for j, s in enumerate(restriction_shifts(n, half)):
        report.check_equal("restriction", "restriction.root", dict(params, j=j),
                           restricted.substitute("x", -s), 0)
    for q_val, p_val in numeric_pairs:
        if (q_val + p_val) % 2 or (q_val + p_val) // 2 != n:
            continue
        at_pair = restricted.substitute_many({"q": q_val, "p": p_val})
        critical = ONE
        for j in range(n):
            shift = 2 * j * (2 * j + 1 - q_val) if half == "plus" else 2 * j * (p_val - 1 - 2 * j)
            critical = critical * (X + shift)
        report.check_equal("restriction", "restriction.critical-kernel",
                           dict(params, q=q_val, p=p_val), at_pair, critical)


# -- checks --------------------------------------------------------------------

def check_q_curvature(report: VerificationReport, space: ModelSpace, n_max: int) -> None:
    """Constant term of P_{2N} against the closed-form Q-curvature."""
    for n in range(1, n_max + 1):
        lhs = gjms_on_constant(space, n)
        rhs = (space.half_dim - n) * q_value_poly(space, n) * (-1) ** n
        report.check_equal("q_curv", "gjms.constant-term", {"space": space.tag, "N": n}, lhs, rhs)


def check_operator_degree(report: VerificationReport, space: ModelSpace, n_max: int) -> None:
    p2 = gjms_poly(space, 1)
    for n in range(1, n_max + 1):
        op = gjms(space, n)
        params = {"space": space.tag, "N": n}
        report.check_true("operator_degree", "gjms.operator-degree", params,
                          op.operator_degree() == n, f"degree {op.operator_degree()}")
        top = op.poly.homogeneous_part(space.symbols, n)
        report.check_equal("operator_degree", "gjms.principal-part", params,
                           top, (p2 ** n).homogeneous_part(space.symbols, n))


def check_univ(report: VerificationReport, space: ModelSpace, n_max: int) -> None:
    """Sphere and Einstein operators as polynomials in P_2."""
    if space.is_product:
        return
    scale = C if space.tag == "einstein" else ONE
    p2 = gjms_poly(space, 1)
    for n in range(1, n_max + 1):
        out = ONE
        for j in range(n):
            out = out * (p2 + scale * (j * (j + 1)))
        report.check_equal("univ", "gjms.polynomial-in-yamabe", {"space": space.tag, "N": n},
                           gjms_poly(space, n), out)


def check_linear_factors(report: VerificationReport, n_max: int) -> None:
    """Product-space operators from the four linear factors in B and C."""
    b, c = var("B"), var("C")
    for n in range(1, n_max + 1):
        out = ONE if n % 2 == 0 else c * c - b * b
        for j in range(1, n // 2 + 1):
            k = 2 * j - 1 if n % 2 == 0 else 2 * j
            out = out * (b + c + k) * (b - c - k) * (b + c - k) * (b - c + k)
        expected = gjms_poly(PSEUDOSPHERE, n).substitute_many({"b2": b * b, "c2": c * c})
        report.check_equal("linear_factors", "gjms.linear-factorization", {"N": n}, out, expected)


def check_specialization(report: VerificationReport, n_max: int) -> None:
    """Pseudo-sphere formulas at p = 0 give the round sphere."""
    q_of_nu = NU * 2
    values = {"p": 0, "q": q_of_nu, "c2": Fraction(1, 4),
              "b2": ((q_of_nu - 1) * (q_of_nu - 1)).scale(Fraction(1, 4)) - X}
    for n in range(1, n_max + 1):
        params = {"N": n}
        report.check_equal("specialization", "pseudosphere.p-zero.operator", params,
                           gjms_poly(PSEUDOSPHERE, n).substitute_many(values), gjms_poly(SPHERE, n))
        report.check_equal("specialization", "pseudosphere.p-zero.q-curvature", params,
                           q_value_poly(PSEUDOSPHERE, n).substitute_many({"p": 0, "q": q_of_nu}),
                           q_value_poly(SPHERE, n))
        report.check_equal("specialization", "einstein.unit-curvature", params,
                           gjms_poly(EINSTEIN, n).substitute("c", 1), gjms_poly(SPHERE, n))


def check_product_expansion(report: VerificationReport, space: ModelSpace, bound: int) -> None:
    if space.is_product:
        return
    for a in range(bound + 1):
        for b in range(bound + 1):
            direct = _gjms_or_one(space, a) * _gjms_or_one(space, b)
            report.check_equal("product_expansion", "gjms.product-expansion",
                               {"space": space.tag, "A": a, "B": b},
                               product_from_expansion(a, b, space), direct)
