from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gjms_verify.exact import (
    ONE,
    ZERO,
    MultiPoly,
    TruncSeries,
    binom_poly,
    binomial_series,
    const,
    falling_factorial,
    poly_arith,
    series_ops,
    var,
)

NAMES = ("nu", "q", "p", "x")


def to_sympy(poly: MultiPoly):
    symbols = {n: sympy.Symbol(n) for n in poly.variables()}
    expr = sympy.Integer(0)
    for mono, coeff in poly.items():
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for name in poly.variables():
            from gjms_verify.exact import variable_index
            i = variable_index(name)
            if i < len(mono) and mono[i]:
                term *= symbols[name] ** mono[i]
        expr += term
    return sympy.expand(expr)


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
monos = st.tuples(*[st.integers(0, 2) for _ in NAMES])


@st.composite
def polys(draw):
    terms = draw(st.dictionaries(monos, coeffs, max_size=4))
    out = ZERO
    for mono, c in terms.items():
        term = const(c)
        for name, e in zip(NAMES, mono):
            term = term * var(name) ** e
        out = out + term
    return out


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a - a == ZERO


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_product_matches_sympy(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@given(polys())
@settings(max_examples=40, deadline=None)
def test_substitution_and_derivative_match_sympy(a):
    nu, x = sympy.symbols("nu x")
    sub = a.substitute("nu", var("x") + Fraction(1, 2))
    assert sympy.expand(to_sympy(sub) - to_sympy(a).subs(nu, x + sympy.Rational(1, 2))) == 0
    assert sympy.expand(to_sympy(a.derivative("nu", 2)) - sympy.diff(to_sympy(a), nu, 2)) == 0


@given(st.lists(coeffs, min_size=1, max_size=6))
@settings(max_examples=40, deadline=None)
def test_series_sqrt_squares_back(tail):
    s = TruncSeries(len(tail), (ONE,) + tuple(const(c) for c in tail))
    root = s.sqrt()
    assert root * root == s
    assert s * s.inverse() == TruncSeries.one(s.order)


def test_zero_terms_are_dropped():
    p = var("x") - var("x")
    assert p.is_zero() and len(p) == 0
    assert MultiPoly({(1,): 0}) == ZERO


def test_canonical_rendering():
    nu, x = var("nu"), var("x")
    assert str(nu * nu * x - nu) == "nu^2*x - nu"
    assert str(nu.scale(Fraction(3, 2))) == "3/2*nu"
    assert str(ZERO) == "0"
    assert str(x - nu * (nu - 1)) == "-nu^2 + nu + x"


def test_term_map_is_ordered():
    p = var("nu") ** 2 - var("x") + 3
    assert p.term_map() == [
        {"monomial": {"nu": 2}, "coeff": "1"},
        {"monomial": {"x": 1}, "coeff": "-1"},
        {"monomial": {}, "coeff": "3"},
    ]


def test_division_by_scalar_only():
    assert var("x") / 2 == var("x").scale(Fraction(1, 2))
    with pytest.raises((TypeError, ZeroDivisionError, ValueError)):
        var("x") / 0


def test_degree_and_coefficients():
    p = (var("lam") + var("nu")) ** 3
    assert p.degree("lam") == 3
    assert p.coefficient("lam", 1) == var("nu") ** 2 * 3
    assert p.degree_in(["lam", "nu"]) == 3
    assert p.homogeneous_part(["lam"], 3) == var("lam") ** 3


def test_simultaneous_substitution():
    x, y = var("x"), var("q")
    swapped = (x - y * 2).substitute_many({"x": y, "q": x})
    assert swapped == y - x * 2


def test_poly_arith_kinds():
    a, b = var("x"), var("nu")
    assert poly_arith(a, b, "mul") == a * b
    assert poly_arith(a, b, "sub") == a - b
    with pytest.raises(ValueError):
        poly_arith(a, b, "pow")


def test_binomial_helpers():
    assert binom_poly(var("nu"), 2) == (var("nu") * (var("nu") - 1)).scale(Fraction(1, 2))
    assert falling_factorial(5, 3) == const(60)
    s = binomial_series(Fraction(-1, 4), 3, 6, step=2)
    assert s.to_list() == ["1", "0", "-3/4", "0", "3/16", "0", "-1/64"]


def test_series_sqrt_needs_unit_constant():
    with pytest.raises(ValueError):
        TruncSeries(2, (const(2), ONE)).sqrt()
    s = TruncSeries(3, (ONE, var("x")))
    assert series_ops(s, None, "sqrt") == s.sqrt()
    with pytest.raises(ValueError):
        series_ops(s, None, "exp")


def test_dilate():
    s = TruncSeries(3, (ONE, const(1), const(1), const(1)))
    d = s.dilate(Fraction(1, 4), 2, 6)
    assert d.to_list() == ["1", "0", "1/4", "0", "1/16", "0", "1/64"]
