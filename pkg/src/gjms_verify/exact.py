"""Exact arithmetic substrate: rationals, sparse multivariate polynomials and
truncated power series.

Every quantity in the package lives in the polynomial ring over the rationals
in a small set of named variables. Variable names are interned in a single
append-only registry, so monomials from different polynomials always line up
and equality of polynomials is plain equality of their term maps.

The half dimension ``nu = n/2`` is a formal variable: an identity that holds as
a polynomial identity in ``nu`` holds in every dimension at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping, Union

Rational = Fraction

#: Canonical variable order. Rendering and term ordering follow it.
CANONICAL_VARIABLES = ("nu", "q", "p", "c", "lam", "x", "b2", "c2", "r")

_names: list[str] = list(CANONICAL_VARIABLES)
_index: dict[str, int] = {name: i for i, name in enumerate(_names)}


def register_variable(name: str) -> int:
    """Intern ``name`` and return its slot. Idempotent."""
    slot = _index.get(name)
    if slot is None:
        slot = len(_names)
        _names.append(name)
        _index[name] = slot
    return slot


def variable_index(name: str) -> int:
    try:
        return _index[name]
    except KeyError:
        raise KeyError(f"unknown variable {name!r}") from None


def variable_names() -> tuple[str, ...]:
    return tuple(_names)


Scalar = Union[int, Fraction]
Monomial = tuple  # exponents by registry slot, trailing zeros stripped


def _strip(exps: Iterable[int]) -> Monomial:
    exps = list(exps)
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    out = list(a)
    for i, e in enumerate(b):
        out[i] += e
    return tuple(out)


def _mono_degree(m: Monomial, slots: Iterable[int]) -> int:
    return sum(m[s] for s in slots if s < len(m))


def as_rational(value: Scalar | str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


class MultiPoly:
    """Sparse polynomial with rational coefficients.

    Instances are immutable; all operations return new polynomials. Zero
    coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = as_rational(coeff)
                if coeff:
                    mono = _strip(mono)
                    total = clean.get(mono, 0) + coeff
                    if total:
                        clean[mono] = total
                    else:
                        clean.pop(mono, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> MultiPoly:
        # terms already canonical: stripped monomials, nonzero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, value: Scalar | str) -> MultiPoly:
        value = as_rational(value)
        return cls._raw({(): value} if value else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> MultiPoly:
        slot = register_variable(name)
        exps = [0] * (slot + 1)
        exps[slot] = power
        return cls._raw({_strip(exps): Fraction(1)})

    @classmethod
    def coerce(cls, value: MultiPoly | Scalar) -> MultiPoly:
        if isinstance(value, MultiPoly):
            return value
        return cls.const(value)

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return self._terms.get((), Fraction(0))

    def variables(self) -> tuple[str, ...]:
        used = set()
        for mono in self._terms:
            used.update(i for i, e in enumerate(mono) if e)
        return tuple(_names[i] for i in sorted(used))

    def degree(self, name: str | None = None) -> int:
        """Degree in ``name`` (total degree if omitted); -1 for zero."""
        if not self._terms:
            return -1
        if name is None:
            return max(sum(m) for m in self._terms)
        slot = variable_index(name)
        return max((m[slot] if slot < len(m) else 0) for m in self._terms)

    def degree_in(self, names: Iterable[str]) -> int:
        """Total degree in the given subset of variables; -1 for zero."""
        slots = [variable_index(n) for n in names]
        if not self._terms:
            return -1
        return max(_mono_degree(m, slots) for m in self._terms)

    def homogeneous_part(self, names: Iterable[str], degree: int) -> MultiPoly:
        """Terms whose total degree in ``names`` equals ``degree``."""
        slots = [variable_index(n) for n in names]
        return MultiPoly._raw(
            {m: c for m, c in self._terms.items() if _mono_degree(m, slots) == degree}
        )

    def coefficient(self, name: str, k: int) -> MultiPoly:
        """Coefficient of ``name**k`` as a polynomial in the other variables."""
        slot = variable_index(name)
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            e = mono[slot] if slot < len(mono) else 0
            if e == k:
                if slot < len(mono):
                    rest = list(mono)
                    rest[slot] = 0
                    mono = _strip(rest)
                out[mono] = coeff
        return MultiPoly._raw(out)

    def coefficients(self, name: str) -> list[MultiPoly]:
        """Coefficient list in ``name``, lowest power first."""
        return [self.coefficient(name, k) for k in range(self.degree(name) + 1)]

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = MultiPoly.const(other)
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            total = out.get(mono, 0) + coeff
            if total:
                out[mono] = total
            else:
                out.pop(mono, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (MultiPoly, int, Fraction)):
            return NotImplemented
        return self + (-MultiPoly.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return MultiPoly.const(other) - self

    def scale(self, factor: Scalar) -> MultiPoly:
        factor = as_rational(factor)
        if not factor:
            return ZERO
        return MultiPoly._raw({m: c * factor for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        out: dict[Monomial, Fraction] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                mono = _mono_mul(ma, mb)
                out[mono] = get(mono, 0) + ca * cb
        return MultiPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            other = other.constant_value()
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self.scale(Fraction(1) / as_rational(other))

    def __pow__(self, k: int) -> MultiPoly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # calculus -----------------------------------------------------------
    def substitute(self, name: str, value: MultiPoly | Scalar) -> MultiPoly:
        return self.substitute_many({name: value})

    def substitute_many(self, values: Mapping[str, MultiPoly | Scalar]) -> MultiPoly:
        """Simultaneous substitution of several variables."""
        slots = {variable_index(n): MultiPoly.coerce(v) for n, v in values.items()}
        if not slots:
            return self
        power_cache: dict[tuple[int, int], MultiPoly] = {}

        def power(slot: int, e: int) -> MultiPoly:
            key = (slot, e)
            hit = power_cache.get(key)
            if hit is None:
                hit = slots[slot] ** e
                power_cache[key] = hit
            return hit

        # group by the untouched part of each monomial
        grouped: dict[tuple, dict[Monomial, Fraction]] = {}
        for mono, coeff in self._terms.items():
            kept = list(mono)
            hit = []
            for s in slots:
                if s < len(mono) and mono[s]:
                    hit.append((s, mono[s]))
                    kept[s] = 0
            grouped.setdefault(tuple(hit), {})[_strip(kept)] = coeff
        out = ZERO
        for hit, rest in grouped.items():
            factor = ONE
            for s, e in hit:
                factor = factor * power(s, e)
            out = out + factor * MultiPoly._raw(rest)
        return out

    def derivative(self, name: str, k: int = 1) -> MultiPoly:
        if k < 0:
            raise ValueError("derivative order must be non-negative")
        slot = variable_index(name)
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            e = mono[slot] if slot < len(mono) else 0
            if e < k:
                continue
            falling = 1
            for i in range(k):
                falling *= e - i
            new = list(mono)
            new[slot] = e - k
            out[_strip(new)] = coeff * falling
        return MultiPoly._raw(out)

    # rendering ----------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical order: total degree descending, then lex."""
        width = max((len(m) for m in self._terms), default=0)

        def key(item):
            mono = item[0] + (0,) * (width - len(item[0]))
            return (-sum(mono), tuple(-e for e in mono))

        return sorted(self._terms.items(), key=key)

    def term_map(self) -> list[dict]:
        return [
            {
                "monomial": {_names[i]: e for i, e in enumerate(m) if e},
                "coeff": str(c),
            }
            for m, c in self.sorted_terms()
        ]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            factors = []
            for i, e in enumerate(mono):
                if e == 1:
                    factors.append(_names[i])
                elif e:
                    factors.append(f"{_names[i]}^{e}")
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            if factors:
                body = "*".join(factors)
                if mag != 1:
                    body = f"{mag}*{body}"
            else:
                body = str(mag)
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


ZERO = MultiPoly._raw({})
ONE = MultiPoly._raw({(): Fraction(1)})


def var(name: str) -> MultiPoly:
    return MultiPoly.var(name)


def const(value: Scalar | str) -> MultiPoly:
    return MultiPoly.const(value)


def poly_arith(a: MultiPoly, b: MultiPoly, kind: str) -> MultiPoly:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def substitute(p: MultiPoly, name: str, value: MultiPoly | Scalar) -> MultiPoly:
    return p.substitute(name, value)


def derivative(p: MultiPoly, name: str, k: int = 1) -> MultiPoly:
    return p.derivative(name, k)


def falling_factorial(xp: MultiPoly | Scalar, k: int) -> MultiPoly:
    """xp (xp - 1) ... (xp - k + 1)."""
    xp = MultiPoly.coerce(xp)
    out = ONE
    for i in range(k):
        out = out * (xp - i)
    return out


def binom_poly(xp: MultiPoly | Scalar, k: int) -> MultiPoly:
    """Binomial coefficient with a polynomial top argument."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return falling_factorial(xp, k).scale(Fraction(1, factorial(k)))


def binom(n: int, k: int) -> int:
    """Integer binomial coefficient; zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class TruncSeries:
    """Power series in one variable truncated after ``order``.

    ``coeffs[i]`` is the coefficient of ``var**i``; coefficients are
    polynomials in the remaining variables.
    """

    order: int
    coeffs: tuple[MultiPoly, ...]
    var: str = "r"

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")
        coeffs = tuple(MultiPoly.coerce(c) for c in self.coeffs[: self.order + 1])
        coeffs += (ZERO,) * (self.order + 1 - len(coeffs))
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_poly(cls, p: MultiPoly, order: int, var: str = "r") -> TruncSeries:
        return cls(order, tuple(p.coefficient(var, i) for i in range(order + 1)), var)

    @classmethod
    def one(cls, order: int, var: str = "r") -> TruncSeries:
        return cls(order, (ONE,), var)

    def __getitem__(self, i: int) -> MultiPoly:
        return self.coeffs[i] if 0 <= i <= self.order else ZERO

    def _check(self, other: TruncSeries) -> int:
        if self.var != other.var:
            raise ValueError("series in different variables")
        return min(self.order, other.order)

    def __add__(self, other: TruncSeries) -> TruncSeries:
        k = self._check(other)
        return TruncSeries(k, tuple(self[i] + other[i] for i in range(k + 1)), self.var)

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        k = self._check(other)
        return TruncSeries(k, tuple(self[i] - other[i] for i in range(k + 1)), self.var)

    def __mul__(self, other):
        if isinstance(other, (MultiPoly, int, Fraction)):
            other = MultiPoly.coerce(other)
            return TruncSeries(self.order, tuple(c * other for c in self.coeffs), self.var)
        k = self._check(other)
        out = []
        for m in range(k + 1):
            acc = ZERO
            for i in range(m + 1):
                a = self.coeffs[i]
                if a:
                    b = other.coeffs[m - i]
                    if b:
                        acc = acc + a * b
            out.append(acc)
        return TruncSeries(k, tuple(out), self.var)

    __rmul__ = __mul__

    def truncate(self, order: int) -> TruncSeries:
        return TruncSeries(min(order, self.order), self.coeffs, self.var)

    def sqrt(self) -> TruncSeries:
        """Square root with constant term 1.

        Solves ``w_0 = 1``, ``w_m = (s_m - sum_{0<i<m} w_i w_{m-i}) / 2``.
        """
        if self.coeffs[0] != ONE:
            raise ValueError("square root needs constant term 1")
        w = [ONE]
        for m in range(1, self.order + 1):
            acc = self.coeffs[m]
            for i in range(1, m):
                acc = acc - w[i] * w[m - i]
            w.append(acc.scale(Fraction(1, 2)))
        return TruncSeries(self.order, tuple(w), self.var)

    def inverse(self) -> TruncSeries:
        """Reciprocal of a series with constant term 1."""
        if self.coeffs[0] != ONE:
            raise ValueError("inverse needs constant term 1")
        inv = [ONE]
        for m in range(1, self.order + 1):
            acc = ZERO
            for i in range(1, m + 1):
                acc = acc - self.coeffs[i] * inv[m - i]
            inv.append(acc)
        return TruncSeries(self.order, tuple(inv), self.var)

    def dilate(self, factor: Scalar | MultiPoly, step: int, order: int) -> TruncSeries:
        """Substitute ``var -> factor * var**step`` and truncate at ``order``."""
        factor = MultiPoly.coerce(factor)
        out = [ZERO] * (order + 1)
        power = ONE
        for i, c in enumerate(self.coeffs):
            if i * step > order:
                break
            out[i * step] = c * power
            power = power * factor
        return TruncSeries(order, tuple(out), self.var)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def to_list(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def series_ops(s: TruncSeries, t: TruncSeries | None, kind: str) -> TruncSeries:
    if kind == "mul":
        if t is None:
            raise ValueError("mul needs two series")
        return s * t
    if kind == "sqrt":
        return s.sqrt()
    if kind == "truncate":
        if t is None:
            return s
        return s.truncate(t.order)
    raise ValueError(f"unknown series op {kind!r}")


def binomial_series(base: MultiPoly | Scalar, exponent: MultiPoly | Scalar,
                    order: int, step: int = 1, var: str = "r") -> TruncSeries:
    """Expansion of ``(1 + base * var**step) ** exponent`` up to ``order``."""
    base = MultiPoly.coerce(base)
    coeffs = [ZERO] * (order + 1)
    power = ONE
    for k in range(order // step + 1):
        coeffs[k * step] = binom_poly(exponent, k) * power
        power = power * base
    return TruncSeries(order, tuple(coeffs), var)


NU = var("nu")
LAM = var("lam")
X = var("x")
