"""Closed forms, recurrences and generating functions for the small cases.

Each variant of a count is computed from its own formula with no shared
intermediate code, so agreement between variants is meaningful.
"""
from __future__ import annotations

import enum
import itertools
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

from .finite_field import FieldSpec


class Poly:
    """Dense univariate polynomial with exact rational coefficients, constant first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def _coerce(self, other) -> "Poly":
        return other if isinstance(other, Poly) else Poly([other])

    def __add__(self, other):
        other = self._coerce(other)
        m = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] + other[i] for i in range(m)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = Poly([1])
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def to_list(self) -> list:
        return [int(c) if c.denominator == 1 else str(c) for c in self.coeffs]


def _integral(x: Fraction) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise ArithmeticError(f"expected an integer, got {x}")
    return int(x)


def _odd_q(spec_or_q) -> int:
    q = spec_or_q.q if isinstance(spec_or_q, FieldSpec) else int(spec_or_q)
    if q % 2 == 0:
        raise ValueError("closed forms for k=1 need odd characteristic")
    return q


# -- k = 1

def k1_nonneg(spec, n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    h = (_odd_q(spec) + 1) // 2
    return sum(h ** i for i in range(n))


def k1_pos(spec, n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return ((_odd_q(spec) - 1) // 2) ** (n - 1)


def k1_nonneg_poly(n: int) -> Poly:
    """|Gr^{>=0}_{1,n}| as a polynomial in q, from the double binomial sum."""
    return Poly([sum(Fraction(comb(j, i), 2 ** j) for j in range(i, n)) for i in range(n)])


def k1_pos_poly(n: int) -> Poly:
    """|Gr^{>0}_{1,n}| as a polynomial in q, from the binomial expansion."""
    return Poly([Fraction((-1) ** (n - 1 - i) * comb(n - 1, i), 2 ** (n - 1))
                 for i in range(n)])


def k1_nonneg_poly_geometric(n: int) -> Poly:
    """Same count expanded from sum_i ((q+1)/2)^i by polynomial arithmetic."""
    half = Poly([Fraction(1, 2), Fraction(1, 2)])
    return sum((half ** i for i in range(n)), Poly())


def k1_pos_poly_power(n: int) -> Poly:
    return Poly([Fraction(-1, 2), Fraction(1, 2)]) ** (n - 1)


# printed lists for n = 2..5, constant term first
K1_NONNEG_PRINTED = {
    2: Poly([Fraction(3, 2), Fraction(1, 2)]),
    3: Poly([Fraction(7, 4), 1, Fraction(1, 4)]),
    4: Poly([Fraction(15, 8), Fraction(11, 8), Fraction(5, 8), Fraction(1, 8)]),
    5: Poly([Fraction(31, 16), Fraction(13, 8), 1, Fraction(3, 8), Fraction(1, 16)]),
}
K1_POS_PRINTED = {
    2: Poly([Fraction(-1, 2), Fraction(1, 2)]),
    3: Poly([Fraction(1, 4), Fraction(-1, 2), Fraction(1, 4)]),
    4: Poly([Fraction(-1, 8), Fraction(3, 8), Fraction(-3, 8), Fraction(1, 8)]),
    5: Poly([Fraction(1, 16), Fraction(-1, 4), Fraction(3, 8), Fraction(-1, 4), Fraction(1, 16)]),
}


# -- formal power series

def series_coeff(numerator, denominator, m: int) -> Fraction:
    """[x^m] of numerator/denominator as a formal power series."""
    num = numerator if isinstance(numerator, Poly) else Poly(numerator)
    den = denominator if isinstance(denominator, Poly) else Poly(denominator)
    if den[0] == 0:
        raise ZeroDivisionError("denominator has zero constant term")
    if m < 0:
        return Fraction(0)
    c0 = den[0]
    out: list[Fraction] = []
    for i in range(m + 1):
        acc = num[i]
        for j in range(1, min(i, den.degree) + 1):
            acc -= den[j] * out[i - j]
        out.append(acc / c0)
    return out[m]


# -- Chebyshev polynomials

def chebyshev_poly(n: int) -> Poly:
    if n < 0:
        raise ValueError("n must be >= 0")
    prev, cur = Poly([1]), Poly.x()
    if n == 0:
        return prev
    two_x = Poly([0, 2])
    for _ in range(n - 1):
        prev, cur = cur, two_x * cur - prev
    return cur


class Piece(enum.Enum):
    SQUARE = 1
    DOMINO = 2


TILING_CAP = 30


def tilings(n: int) -> Iterator[tuple[Piece, ...]]:
    """All square/domino tilings of a 1 x n strip."""
    if n > TILING_CAP:
        raise ValueError(f"tiling enumeration capped at n <= {TILING_CAP}")
    if n == 0:
        yield ()
        return
    for rest in tilings(n - 1):
        yield (Piece.SQUARE,) + rest
    if n >= 2:
        for rest in tilings(n - 2):
            yield (Piece.DOMINO,) + rest


def tiling_weight(t: Sequence[Piece]) -> Poly:
    """-1 per domino, x for a square in the leftmost cell, 2x for any other square."""
    coef, deg = 1, 0
    for idx, piece in enumerate(t):
        if piece is Piece.DOMINO:
            coef = -coef
        else:
            coef *= 1 if idx == 0 else 2
            deg += 1
    return Poly([0] * deg + [coef])


def chebyshev_via_tilings(n: int) -> Poly:
    total = Poly()
    for t in tilings(n):
        total = total + tiling_weight(t)
    return total


def fibonacci(m: int) -> int:
    a, b = 0, 1
    for _ in range(m):
        a, b = b, a + b
    return a


def chebyshev_low_coeff(n: int) -> int:
    """-2^(n-2)(n+1)(n+2)(n+6)/3, exact for every n >= 0."""
    return _integral(-Fraction(2) ** (n - 2) * (n + 1) * (n + 2) * (n + 6) / 3)


def rec_sequence_term(n: int) -> int:
    """a_n = 2^(n-2)(n+1)(n+2)(n+6)/3."""
    return _integral(Fraction(2) ** (n - 2) * (n + 1) * (n + 2) * (n + 6) / 3)


def plane_recurrence_check(max_n: int) -> dict:
    if max_n < 4:
        raise ValueError("max_n must be >= 4")
    a = [rec_sequence_term(i) for i in range(max_n + 1)]
    initial_ok = a[:4] == [1, 7, 32, 120]
    first_failure = None
    for n in range(4, max_n + 1):
        if a[n] - 8 * a[n - 1] + 24 * a[n - 2] - 32 * a[n - 3] + 16 * a[n - 4] != 0:
            first_failure = n
            break
    return {"suite": "lemma-rec", "n_range": [4, max_n], "initial": a[:4],
            "status": "pass" if initial_ok and first_failure is None else "fail",
            "first_failure": first_failure}


# -- k = 2 over F_3

def _f3_v1(n: int) -> int:
    t1 = sum(Fraction(2) ** (n - i - 3)
             for i, j, l, m in itertools.combinations(range(1, n + 1), 4))
    t2 = sum(2 * Fraction(2) ** (n - i - 2)
             for i, j, l in itertools.combinations(range(1, n + 1), 3))
    t3 = sum(Fraction(2) ** (n - i - 1)
             for i, j in itertools.combinations(range(1, n + 1), 2))
    return _integral(t1 + t2 + t3)


def _f3_v2(n: int) -> int:
    total = Fraction(0)
    for i in range(1, n + 1):
        total += Fraction(2) ** (n - i - 3) * comb(n - i, 3)
        total += Fraction(2) ** (n - i - 1) * comb(n - i, 2)
        total += Fraction(2) ** (n - i - 1) * comb(n - i, 1)
    return _integral(total)


def _f3_v3(n: int) -> int:
    return _integral(Fraction(2) ** (n - 4) * (n - 1) * n * (n + 4) / 3)


def _f3_v4(n: int) -> int:
    return _integral(series_coeff(Poly([1, -1]), Poly([1, -2]) ** 4, n - 2))


def _f3_v5(n: int) -> int:
    return _integral(-chebyshev_poly(n + 4)[n - 2])


def bivariate_chebyshev_coeff(tdeg: int, xdeg: int) -> Fraction:
    """[x^xdeg t^tdeg] of (1 - t x) / (1 - 2 t x + t^2), by division in t."""
    num = {0: Poly([1]), 1: Poly([0, -1])}
    den = {1: Poly([0, -2]), 2: Poly([1])}  # constant term 1 omitted
    series: list[Poly] = []
    for m in range(tdeg + 1):
        acc = num.get(m, Poly())
        for j, dj in den.items():
            if m - j >= 0:
                acc = acc - dj * series[m - j]
        series.append(acc)
    return series[tdeg][xdeg]


def _f3_v6(n: int) -> int:
    # the generating function yields T_{n+4}; the count is its negated coefficient
    return _integral(-bivariate_chebyshev_coeff(n + 4, n - 2))


_F3_VARIANTS = {1: _f3_v1, 2: _f3_v2, 3: _f3_v3, 4: _f3_v4, 5: _f3_v5, 6: _f3_v6}


def f3_k2(n: int, variant: int = 3) -> int:
    """|Gr^{>=0}_{2,n}(F_3)| by one of six independent formulas."""
    if n < 2:
        raise ValueError("n must be >= 2")
    try:
        fn = _F3_VARIANTS[variant]
    except KeyError:
        raise ValueError(f"variant must be 1..6, got {variant}") from None
    return fn(n)


# -- k = 2 over F_5

def _f5_v1(n: int) -> int:
    t1 = sum(3 ** (j - i - 1) * 5 ** (n - j)
             for i, j in itertools.combinations(range(1, n + 1), 2))
    t2 = sum(4 * 3 ** (j - i - 1) * 5 ** (l - j - 1) * 7 ** (n - l)
             for i, j, l in itertools.combinations(range(1, n + 1), 3))
    return t1 + t2


def _f5_v2(n: int) -> int:
    return _integral(Fraction(2 * 7 ** n - 3 * 5 ** n + 1, 24))


def _f5_v3(n: int) -> int:
    den = Poly([1, -1]) * Poly([1, -5]) * Poly([1, -7])
    return _integral(series_coeff(Poly([1]), den, n - 2))


_F5_VARIANTS = {1: _f5_v1, 2: _f5_v2, 3: _f5_v3}


def f5_k2(n: int, variant: int = 2) -> int:
    """|Gr^{>=0}_{2,n}(F_5)| by one of three independent formulas."""
    if n < 2:
        raise ValueError("n must be >= 2")
    try:
        fn = _F5_VARIANTS[variant]
    except KeyError:
        raise ValueError(f"variant must be 1..3, got {variant}") from None
    return fn(n)


def partial_fraction_check(order: int = 20) -> dict:
    """Coefficients of 49/(12(1-7x)) - 25/(8(1-5x)) + 1/(24(1-x)) vs the product form."""
    den = Poly([1, -1]) * Poly([1, -5]) * Poly([1, -7])
    mismatches = []
    for m in range(order + 1):
        lhs = series_coeff(Poly([1]), den, m)
        rhs = Fraction(49, 12) * 7 ** m - Fraction(25, 8) * 5 ** m + Fraction(1, 24)
        if lhs != rhs:
            mismatches.append(m)
    return {"suite": "partial-fraction", "n_range": [0, order],
            "status": "fail" if mismatches else "pass", "mismatches": mismatches}


def f5_column_pair_table() -> dict:
    """Truth table over a,b,c,d in {1,4} of 'ad-bc >= 0' vs '(c,d) = +-(a,b)'."""
    from .finite_field import Sign, make_field

    F = make_field(5)
    rows = []
    for a, b, c, d in itertools.product((1, 4), repeat=4):
        val = (a * d - b * c) % 5
        nonneg = F.sign(val) != Sign.NEGATIVE
        stated = (a == c and b == d) or (a == (-c) % 5 and b == (-d) % 5)
        rows.append({"a": a, "b": b, "c": c, "d": d, "ad_minus_bc": val,
                     "nonneg": nonneg, "stated": stated, "agree": nonneg == stated})
    disagreements = [r for r in rows if not r["agree"]]
    return {"suite": "lemma-2x2-f5", "rows": rows,
            "status": "pass" if not disagreements else "fail",
            "disagreements": len(disagreements),
            "nonneg_partners_per_column": _partners(rows)}


def _partners(rows) -> int:
    # number of (c,d) with both entries nonzero that are allowed after a fixed (a,b)
    per = {}
    for r in rows:
        per.setdefault((r["a"], r["b"]), 0)
        per[(r["a"], r["b"])] += r["nonneg"]
    values = set(per.values())
    return values.pop() if len(values) == 1 else -1
