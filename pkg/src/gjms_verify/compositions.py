"""Integer compositions and the universal coefficients ``m_I``.

A composition ``I = (I_1, ..., I_r)`` of ``N`` indexes the product
``P_{2I_1} ... P_{2I_r}`` of GJMS operators. The coefficient attached to it is

    m_I = -(-1)^r |I|! (|I|-1)! prod_j 1/(I_j! (I_j-1)!) prod_j 1/(I_j + I_{j+1})

computed here in closed form, with the first-part recursion kept as an
independent second route.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exact import binom
from .report import VerificationReport


@dataclass(frozen=True, order=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise ValueError("a composition needs at least one part")
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> Composition:
        return cls(tuple(parts))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def last(self) -> int:
        return self.parts[-1]

    def reversed(self) -> Composition:
        return Composition(self.parts[::-1])

    def split(self, a: int) -> tuple[Composition, Composition]:
        """Split after the first ``a`` parts."""
        return Composition(self.parts[:a]), Composition(self.parts[a:])

    def partition(self) -> tuple[int, ...]:
        return tuple(sorted(self.parts, reverse=True))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def _compositions(n: int) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def enumerate_compositions(n: int) -> tuple[Composition, ...]:
    """All compositions of ``n``; first part outermost, ascending."""
    if n < 1:
        raise ValueError("compositions are enumerated for N >= 1")
    return tuple(Composition(c) for c in _compositions(n))


@lru_cache(maxsize=None)
def _m_closed(parts: tuple[int, ...]) -> Fraction:
    n = sum(parts)
    r = len(parts)
    value = Fraction(factorial(n) * factorial(n - 1))
    for part in parts:
        value /= factorial(part) * factorial(part - 1)
    for a, b in zip(parts, parts[1:]):
        value /= a + b
    return value if r % 2 else -value


def m_coefficient(comp: Composition | tuple[int, ...]) -> Fraction:
    parts = comp.parts if isinstance(comp, Composition) else tuple(comp)
    Composition(parts)
    return _m_closed(parts)


@lru_cache(maxsize=None)
def m_coefficient_recursive(parts: tuple[int, ...]) -> Fraction:
    """Second route: peel off the first part.

    m_(a) = 1 and m_(a,b,K) = -1/(a+b) * C(N,a)^2 * a (N-a)/N * m_(b,K).
    """
    if len(parts) == 1:
        return Fraction(1)
    n = sum(parts)
    a, b = parts[0], parts[1]
    factor = Fraction(binom(n, a) ** 2 * a * (n - a), n * (a + b))
    return -factor * m_coefficient_recursive(parts[1:])


@dataclass(frozen=True)
class CoefficientTable:
    order: int
    coefficients: tuple[tuple[Composition, Fraction], ...]

    def as_dict(self) -> dict[Composition, Fraction]:
        return dict(self.coefficients)

    def __getitem__(self, comp) -> Fraction:
        if not isinstance(comp, Composition):
            comp = Composition(tuple(comp))
        return self.as_dict()[comp]


def coefficient_table(n: int) -> CoefficientTable:
    return CoefficientTable(n, tuple((c, m_coefficient(c)) for c in enumerate_compositions(n)))


def partition_weights(n: int, exclude_top: bool = False) -> list[tuple[tuple[int, ...], Fraction]]:
    """Sum of ``m_I`` over compositions sharing a multiset of parts.

    In a commutative operator ring ``sum_I m_I P_{2I}`` only depends on these
    sums, which cuts 2^(N-1) products down to one per partition.
    """
    acc: dict[tuple[int, ...], Fraction] = {}
    for comp in enumerate_compositions(n):
        if exclude_top and comp.length == 1:
            continue
        key = comp.partition()
        acc[key] = acc.get(key, Fraction(0)) + m_coefficient(comp)
    return sorted(acc.items(), reverse=True)


# -- identity suites ---------------------------------------------------------

def _prefix_sums(parts: tuple[int, ...]) -> list[int]:
    out, total = [], 0
    for p in parts:
        total += p
        out.append(total)
    return out


def check_sum_zero(report: VerificationReport, n_max: int) -> None:
    for n in range(2, n_max + 1):
        total = sum(m_coefficient(c) for c in enumerate_compositions(n))
        report.check_equal("sum_zero", "coefficients.sum-zero", {"N": n}, total, 0)
    if n_max < 2:
        report.note("sum_zero needs N >= 2; nothing to check")


def check_strong(report: VerificationReport, n_max: int) -> None:
    for n in range(1, n_max + 1):
        by_first: Counter = Counter()
        for comp in enumerate_compositions(n):
            by_first[comp.parts[0]] += m_coefficient(comp)
        for a in range(1, n + 1):
            expected = (-1) ** (n - a) * binom(n - 1, a - 1)
            report.check_equal("strong", "coefficients.first-part-sums",
                               {"N": n, "a": a}, by_first[a], expected)


def check_reversal(report: VerificationReport, n_max: int) -> None:
    for n in range(1, n_max + 1):
        for comp in enumerate_compositions(n):
            rev = comp.reversed()
            if rev.parts < comp.parts:
                continue
            report.check_equal("reversal", "coefficients.reversal-symmetry",
                               {"I": str(comp)}, m_coefficient(comp), m_coefficient(rev))


def check_two_routes(report: VerificationReport, n_max: int) -> None:
    for n in range(1, n_max + 1):
        for comp in enumerate_compositions(n):
            report.check_equal("two_routes", "coefficients.first-part-recursion",
                               {"I": str(comp)}, m_coefficient(comp),
                               m_coefficient_recursive(comp.parts))


def check_two_part(report: VerificationReport, n_max: int) -> None:
    for n in range(2, n_max + 1):
        for i1 in range(1, n):
            comp = Composition.of(i1, n - i1)
            expected = -binom(n - 1, i1) * binom(n - 1, n - i1)
            report.check_equal("two_part", "coefficients.two-part-closed-form",
                               {"I": str(comp)}, m_coefficient(comp), expected)


def check_integrality(report: VerificationReport, n_max: int) -> None:
    """Empirical integrality; a non-integer is flagged, not failed."""
    for n in range(1, n_max + 1):
        odd = [c for c in enumerate_compositions(n) if m_coefficient(c).denominator != 1]
        status = "pass" if not odd else "flagged"
        detail = "all integral" if not odd else "non-integral: " + ", ".join(map(str, odd))
        report.add("integrality", "coefficients.integrality", {"N": n}, status, detail=detail)


def check_tables(report: VerificationReport) -> None:
    """The displayed primary parts of orders 4 to 10."""
    displayed = {
        2: {(1, 1): 1},
        3: {(1, 2): 2, (2, 1): 2, (1, 1, 1): -3},
        4: {(1, 3): 3, (3, 1): 3, (2, 2): 9, (1, 1, 2): -12, (2, 1, 1): -12,
            (1, 2, 1): -8, (1, 1, 1, 1): 18},
        5: {(1, 4): 4, (4, 1): 4, (2, 3): 24, (3, 2): 24,
            (1, 2, 2): -60, (2, 2, 1): -60, (1, 1, 3): -30, (3, 1, 1): -30,
            (1, 3, 1): -15, (2, 1, 2): -80,
            (1, 1, 1, 2): 120, (2, 1, 1, 1): 120, (1, 1, 2, 1): 80, (1, 2, 1, 1): 80,
            (1, 1, 1, 1, 1): -180},
    }
    for n, primary in displayed.items():
        comps = [c for c in enumerate_compositions(n) if c.length > 1]
        report.check_equal("tables", "coefficients.displayed-count", {"N": n},
                           len(comps), len(primary))
        for parts, coeff in primary.items():
            # primary part carries -m_I
            report.check_equal("tables", "coefficients.displayed-primary-part",
                               {"I": str(Composition(parts))},
                               -m_coefficient(Composition(parts)), coeff)


def check_variation(report: VerificationReport, n_max: int) -> None:
    """Coefficient identities behind the conformal variation of the primary part.

    For every composition of size N with r >= 2 parts: the last-factor
    identity, its reversed form and the split-point identity for each a.
    """
    for n in range(2, n_max + 1):
        for comp in enumerate_compositions(n):
            parts = comp.parts
            r = len(parts)
            if r < 2:
                continue
            m = m_coefficient(comp)
            prefix = _prefix_sums(parts)
            splits = [comp.split(s) for s in range(1, r)]
            weights = [m_coefficient(head) * m_coefficient(tail) for head, tail in splits]

            last = sum(binom(n - 1, prefix[s - 1] - 1) ** 2 * (n - prefix[s - 1]) * w
                       for s, w in zip(range(1, r), weights))
            report.check_equal("variation", "variation.last-factor", {"I": str(comp)},
                               -(n - parts[-1]) * m, last)

            first = sum(binom(n - 1, n - prefix[s - 1] - 1) ** 2 * prefix[s - 1] * w
                        for s, w in zip(range(1, r), weights))
            report.check_equal("variation", "variation.first-factor", {"I": str(comp)},
                               -(n - parts[0]) * m, first)

            for s, w in zip(range(1, r), weights):
                head = prefix[s - 1]
                tail = n - head
                rhs = (binom(n - 1, head - 1) ** 2 * (n - head)
                       + binom(n - 1, tail - 1) ** 2 * (n - tail)) * w
                report.check_equal("variation", "variation.split-point",
                                   {"I": str(comp), "a": s},
                                   -(parts[s - 1] + parts[s]) * m, rhs)

            telescoped = sum(prefix[s - 1] * (parts[s - 1] + parts[s]) for s in range(1, r))
            report.check_equal("variation", "variation.telescoping-sum", {"I": str(comp)},
                               telescoped, n * prefix[-2])


def beta_value(m: int, n: int) -> Fraction:
    """B(m, n+1) = (m-1)! n! / (m+n)!."""
    return Fraction(factorial(m - 1) * factorial(n), factorial(m + n))


def beta_by_integration(m: int, n: int) -> Fraction:
    """Integrate x^(m-1) (1-x)^n over [0,1] term by term."""
    return sum((Fraction((-1) ** j * binom(n, j), j + m) for j in range(n + 1)), Fraction(0))


def check_beta_kernel(report: VerificationReport, bound: int) -> None:
    for m in range(1, bound + 1):
        for n in range(1, bound + 1):
            report.check_equal("beta_kernel", "beta.alternating-sum", {"M": m, "N": n},
                               beta_by_integration(m, n), beta_value(m, n))
    for n in range(2, bound + 1):
        for a in range(1, n):
            inner = sum((Fraction((-1) ** b * binom(n - a - 1, b - 1), a + b)
                         for b in range(1, n - a + 1)), Fraction(0))
            report.check_equal("beta_kernel", "beta.inner-sum", {"N": n, "a": a},
                               inner, -Fraction(factorial(a) * factorial(n - a - 1), factorial(n)))
            scale = Fraction(binom(n, a) ** 2 * a * (n - a), n)
            report.check_equal("beta_kernel", "beta.kernel", {"N": n, "a": a},
                               scale * inner, -binom(n - 1, a - 1))


def check_divergence_cancel(report: VerificationReport, n_max: int) -> None:
    """Cancellation of two- and three-factor coefficients in the critical integrand."""
    for n in range(2, n_max + 1):
        for i in range(1, n):
            j = n - i
            left = -2 * ((n - i) * m_coefficient((i, j)) + (n - j) * m_coefficient((j, i)))
            right = (Fraction(i * (n - i), n) * binom(n, i) ** 2
                     + Fraction(j * (n - j), n) * binom(n, j) ** 2)
            report.check_equal("divergence_cancel", "cancellation.two-factor",
                               {"I": f"({i},{j})"}, left - right, 0)
    for n in range(3, n_max + 1):
        for comp in enumerate_compositions(n):
            if comp.length != 3:
                continue
            i, j, k = comp.parts
            lhs = m_coefficient(comp)
            rhs = (-Fraction(binom(n, k) ** 2 * k * (n - k), n)
                   * m_coefficient((j, i)) / (n - i))
            report.check_equal("divergence_cancel", "cancellation.three-factor",
                               {"I": str(comp)}, lhs, rhs)


COEFFICIENT_CHECKS = {
    "sum_zero": check_sum_zero,
    "strong": check_strong,
    "reversal": check_reversal,
    "variation": check_variation,
    "beta_kernel": check_beta_kernel,
    "divergence_cancel": check_divergence_cancel,
    "two_routes": check_two_routes,
    "two_part": check_two_part,
    "integrality": check_integrality,
}


def verify_coefficient_identity(kind: str, n: int) -> VerificationReport:
    if kind not in COEFFICIENT_CHECKS:
        raise ValueError(f"unknown coefficient identity {kind!r}")
    report = VerificationReport(kind, config={"N_max": n})
    COEFFICIENT_CHECKS[kind](report, n)
    return report
