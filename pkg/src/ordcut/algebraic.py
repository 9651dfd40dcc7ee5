"""Irrational real algebraic numbers as (minimal polynomial, isolating interval).

Polynomials are tuples of ``Fraction`` coefficients, lowest degree first.
Every comparison is decided by exact sign evaluation; no floating point.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence, Tuple, Union

import sympy

from .errors import InvalidPivot
from .group import Order, as_fraction

Poly = Tuple[Fraction, ...]

MAX_DEGREE = 16


def poly_strip(p: Sequence) -> Poly:
    p = [as_fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def degree(p: Poly) -> int:
    return len(p) - 1


def poly_eval(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sign_at(p: Poly, x: Fraction) -> int:
    v = poly_eval(p, x)
    return (v > 0) - (v < 0)


def poly_sub(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    p = p + (Fraction(0),) * (n - len(p))
    q = q + (Fraction(0),) * (n - len(q))
    return poly_strip(a - b for a, b in zip(p, q))


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_strip(out)


def poly_divmod(p: Poly, q: Poly):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    lead = q[-1]
    while len(p) >= len(q) and p:
        shift = len(p) - len(q)
        f = p[-1] / lead
        quot[shift] = f
        for i, c in enumerate(q):
            p[i + shift] -= f * c
        p = list(poly_strip(p))
    return poly_strip(quot), tuple(p)


def derivative(p: Poly) -> Poly:
    return poly_strip(i * c for i, c in enumerate(p) if i)


def compose_linear(p: Poly, a: Fraction, b: Fraction) -> Poly:
    """``p(a*x + b)``."""
    out: Poly = ()
    power: Poly = (Fraction(1),)
    lin = poly_strip((b, a))
    for c in p:
        out = _poly_add(out, tuple(c * t for t in power))
        power = poly_mul(power, lin)
    return poly_strip(out)


def _poly_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    p = p + (Fraction(0),) * (n - len(p))
    q = q + (Fraction(0),) * (n - len(q))
    return poly_strip(a + b for a, b in zip(p, q))


def primitive(p: Poly) -> Poly:
    """Integer coefficients with content 1 and positive leading coefficient."""
    p = poly_strip(p)
    if not p:
        raise InvalidPivot("zero polynomial")
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return tuple(Fraction(c // g) for c in ints)


def sturm_sequence(p: Poly):
    seq = [p, derivative(p)]
    while seq[-1] and degree(seq[-1]) > 0:
        _, r = poly_divmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append(tuple(-c for c in r))
    return seq


def _variations(seq, x: Fraction) -> int:
    signs = [s for s in (sign_at(q, x) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: Poly, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots of a squarefree ``p`` in the open interval ``(lo, hi)``."""
    if lo >= hi:
        return 0
    if degree(p) == 1:
        root = -p[0] / p[1]
        return int(lo < root < hi)
    seq = sturm_sequence(p)
    n = _variations(seq, lo) - _variations(seq, hi)
    if poly_eval(p, hi) == 0:
        n -= 1
    return n


def _sym(p: Poly, var):
    return sum(sympy.Rational(c.numerator, c.denominator) * var ** i for i, c in enumerate(p))


_X = sympy.Symbol("x")
_Y = sympy.Symbol("y")


def _from_sym(expr, var) -> Poly:
    coeffs = sympy.Poly(expr, var).all_coeffs()[::-1]
    return poly_strip(Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in coeffs)


@functools.lru_cache(maxsize=4096)
def is_irreducible(p: Poly) -> bool:
    return bool(sympy.Poly(_sym(p, _X), _X, domain="QQ").is_irreducible)


def format_poly(p: Poly, var: str = "x") -> str:
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_REFINED: dict = {}


@dataclass(frozen=True, eq=False)
class AlgebraicReal:
    """The unique root of ``poly`` strictly between ``lo`` and ``hi``.

    ``poly`` is primitive, irreducible over Q and of degree >= 2, so the
    number is irrational and no rational endpoint is ever a root.
    """

    poly: Poly
    lo: Fraction
    hi: Fraction

    @classmethod
    def from_root(cls, poly: Sequence, lo, hi) -> "AlgebraicReal":
        p = primitive(poly_strip(poly))
        lo, hi = as_fraction(lo), as_fraction(hi)
        if degree(p) < 2:
            raise InvalidPivot(f"degree {degree(p)} polynomial has only rational roots")
        if degree(p) > MAX_DEGREE:
            raise InvalidPivot(f"degree {degree(p)} exceeds {MAX_DEGREE}")
        if lo >= hi:
            raise InvalidPivot(f"empty isolating interval ({lo}, {hi})")
        if not is_irreducible(p):
            raise InvalidPivot(f"{format_poly(p)} is reducible over Q")
        n = count_roots(p, lo, hi)
        if n != 1:
            raise InvalidPivot(f"{format_poly(p)} has {n} roots in ({lo}, {hi})")
        return cls(p, lo, hi)

    @classmethod
    def sqrt(cls, n) -> "AlgebraicReal":
        n = as_fraction(n)
        if n <= 0:
            raise InvalidPivot(f"sqrt({n}) is not a positive irrational")
        lo = Fraction(isqrt(n.numerator // n.denominator))
        return cls.from_root((-n, 0, 1), lo, lo + 1)

    def degree(self) -> int:
        return degree(self.poly)

    def _lo_sign(self) -> int:
        return sign_at(self.poly, self.lo)

    def bisect(self) -> "AlgebraicReal":
        mid = (self.lo + self.hi) / 2
        if sign_at(self.poly, mid) == self._lo_sign():
            return AlgebraicReal(self.poly, mid, self.hi)
        return AlgebraicReal(self.poly, self.lo, mid)

    def refined(self, width) -> "AlgebraicReal":
        """An equal number whose isolating interval has width ``<= width``."""
        width = as_fraction(width)
        if self.hi - self.lo <= width:
            return self
        key = (self.poly, self.lo, self.hi, width)
        r = _REFINED.get(key)
        if r is None:
            r = self
            while r.hi - r.lo > width:
                r = r.bisect()
            if len(_REFINED) > 100_000:
                _REFINED.clear()
            _REFINED[key] = r
        return r

    def cmp_rational(self, q) -> Order:
        q = as_fraction(q)
        if q <= self.lo:
            return Order.GT
        if q >= self.hi:
            return Order.LT
        # q is never a root; the root lies on the side where the sign flips
        return Order.GT if sign_at(self.poly, q) == self._lo_sign() else Order.LT

    def __eq__(self, other):
        if not isinstance(other, AlgebraicReal):
            return NotImplemented
        if self.poly != other.poly:
            return False
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo >= hi:
            return False
        return sign_at(self.poly, lo) != sign_at(self.poly, hi)

    def __hash__(self):
        return hash(self.poly)

    def __neg__(self) -> "AlgebraicReal":
        return AlgebraicReal(primitive(compose_linear(self.poly, Fraction(-1), Fraction(0))), -self.hi, -self.lo)

    def add_rational(self, q) -> "AlgebraicReal":
        q = as_fraction(q)
        if not q:
            return self
        return AlgebraicReal(primitive(compose_linear(self.poly, Fraction(1), -q)), self.lo + q, self.hi + q)

    def mul_rational(self, q) -> "AlgebraicReal":
        q = as_fraction(q)
        if not q:
            raise InvalidPivot("scaling an irrational by zero")
        lo, hi = sorted((self.lo * q, self.hi * q))
        return AlgebraicReal(primitive(compose_linear(self.poly, 1 / q, Fraction(0))), lo, hi)

    def sign(self) -> int:
        return int(self.cmp_rational(0))

    def __str__(self):
        return f"root({format_poly(self.poly)}, {self.lo}, {self.hi})"

    __repr__ = __str__


def cmp_alg(r: AlgebraicReal, s: AlgebraicReal) -> Order:
    if r == s:
        return Order.EQ
    while True:
        if r.hi <= s.lo:
            return Order.LT
        if s.hi <= r.lo:
            return Order.GT
        r, s = r.bisect(), s.bisect()


def alg_cmp(r: AlgebraicReal, q) -> Order:
    return r.cmp_rational(q)


Number = Union[Fraction, AlgebraicReal]


@functools.lru_cache(maxsize=4096)
def _sum_factors(p: Poly, q: Poly):
    """Irreducible factors of the resultant whose roots include every ``a + b``."""
    res = sympy.resultant(_sym(p, _Y), _sym(q, _X - _Y), _Y)
    _, factors = sympy.factor_list(sympy.expand(res), _X)
    return tuple(primitive(_from_sym(f, _X)) for f, _ in factors)


def add_alg(r: Number, s: Number) -> Number:
    """Exact sum; a ``Fraction`` when the sum is rational."""
    if isinstance(r, Fraction) or isinstance(s, Fraction) or isinstance(r, int) or isinstance(s, int):
        if isinstance(r, AlgebraicReal):
            return r.add_rational(s)
        if isinstance(s, AlgebraicReal):
            return s.add_rational(r)
        return as_fraction(r) + as_fraction(s)
    factors = _sum_factors(r.poly, s.poly)
    while True:
        lo, hi = r.lo + s.lo, r.hi + s.hi
        hits = [f for f in factors if count_roots(f, lo, hi)]
        if len(hits) == 1 and count_roots(hits[0], lo, hi) == 1:
            f = hits[0]
            if degree(f) == 1:
                return -f[0] / f[1]
            return AlgebraicReal(f, lo, hi)
        r, s = r.bisect(), s.bisect()


def negate(r: Number) -> Number:
    return -r


def alg_arith(op: str, *args) -> Number:
    if op == "add_rational":
        r, q = args
        return r.add_rational(q)
    if op == "negate":
        (r,) = args
        return -r
    if op == "add_alg":
        r, s = args
        return add_alg(r, s)
    raise ValueError(f"unknown algebraic operation {op!r}")


def cmp_number(x: Number, q) -> Order:
    """Compare a rational-or-algebraic ``x`` with the rational ``q``."""
    if isinstance(x, AlgebraicReal):
        return x.cmp_rational(q)
    q = as_fraction(q)
    x = as_fraction(x)
    return Order.LT if x < q else Order.GT if x > q else Order.EQ
