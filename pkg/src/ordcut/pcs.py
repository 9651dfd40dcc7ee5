"""Pseudo Cauchy sequences given by a finite prefix and an optional tail rule.

With prefix ``a_0, ..., a_{P-1}`` and tail rule ``(start, step, c)`` the
sequence continues as

    a_{P-1+j} = a_{P-1} + sum_{i<j} c_i t^(start + i*step),

so the consecutive difference values past the prefix are ``g_i = start + i*step``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from . import cuts as C
from .errors import (FiniteSequence, GroupMismatch, InvalidSequence,
                     NotIncreasing)
from .fields import BallF, FieldCut, ModuleDesc, PrinF, canonical_field_cut
from .group import INFINITY, GroupElement, OrderedGroup, as_fraction, nat_val
from .series import Series, TailSeries, lead_of_difference

FIELD = "field"
GROUP = "group"


@dataclass(frozen=True)
class TailRule:
    step: GroupElement
    coeffs: Tuple[Fraction, ...]
    repeat: Tuple[Fraction, ...] = ()
    start: Optional[GroupElement] = None

    def __post_init__(self):
        coeffs = tuple(as_fraction(c) for c in self.coeffs)
        repeat = tuple(as_fraction(c) for c in self.repeat)
        if not repeat:
            # a bare coefficient list is the repeating pattern itself
            coeffs, repeat = (), coeffs
        if not repeat:
            raise InvalidSequence("a tail rule needs at least one coefficient")
        if any(c == 0 for c in coeffs + repeat):
            raise InvalidSequence("tail coefficients must be nonzero")
        if self.step.sign() <= 0:
            raise InvalidSequence("tail step must be positive")
        if self.start is not None and self.start.group != self.step.group:
            raise GroupMismatch("tail start and step live in different groups")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "repeat", repeat)

    def coef(self, i: int) -> Fraction:
        if i < len(self.coeffs):
            return self.coeffs[i]
        return self.repeat[(i - len(self.coeffs)) % len(self.repeat)]


@dataclass(frozen=True)
class Validation:
    ok: bool
    witness: Optional[Tuple[int, int, int]] = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def _diff_value(x, y):
    d = x - y
    return d.valuation() if isinstance(d, (Series, TailSeries)) else nat_val(d)


@dataclass(frozen=True)
class PCSeq:
    """A pseudo Cauchy sequence over ``group`` (as a field ``Q((group))`` or the group itself)."""

    group: OrderedGroup
    prefix: Tuple[Union[Series, GroupElement], ...]
    tail: Optional[TailRule] = None
    ambient: str = FIELD

    def __post_init__(self):
        prefix = tuple(self.prefix)
        if self.ambient not in (FIELD, GROUP):
            raise InvalidSequence(f"unknown ambient {self.ambient!r}")
        if self.ambient == GROUP and self.tail is not None:
            raise InvalidSequence("a finite-rank group carries no infinite pseudo Cauchy sequence")
        if self.ambient == FIELD:
            if not prefix:
                prefix = (Series.zero(self.group),)
            for a in prefix:
                if not isinstance(a, Series) or a.group != self.group or not a.is_exact():
                    raise InvalidSequence(f"prefix entry {a} is not an exact series over {self.group}")
        else:
            for a in prefix:
                if not isinstance(a, GroupElement) or a.group != self.group:
                    raise InvalidSequence(f"prefix entry {a!r} is not an element of {self.group}")
        if self.tail is not None and self.tail.step.group != self.group:
            raise GroupMismatch("tail rule over a different group")
        object.__setattr__(self, "prefix", prefix)

    @property
    def is_infinite(self) -> bool:
        return self.tail is not None

    def prefix_values(self):
        return [_diff_value(self.prefix[i + 1], self.prefix[i]) for i in range(len(self.prefix) - 1)]

    @cached_property
    def start(self) -> GroupElement:
        """Exponent of the first tail difference."""
        if self.tail is None:
            raise FiniteSequence("the sequence has no tail")
        if self.tail.start is not None:
            return self.tail.start
        vals = self.prefix_values()
        if vals and vals[-1] is not INFINITY:
            return vals[-1] + self.tail.step
        return self.group.zero()

    def tail_exponent(self, i: int) -> GroupElement:
        return self.start + self.tail.step.scale(i)

    def term(self, nu: int):
        p = len(self.prefix)
        if nu < p:
            return self.prefix[nu]
        if self.tail is None:
            raise IndexError(f"finite sequence of length {p}")
        terms = self.__dict__.setdefault("_terms", [self.prefix[-1]])
        while len(terms) <= nu - p + 1:
            i = len(terms) - 1
            terms.append(terms[-1] + Series.monomial(self.group, self.tail.coef(i), self.tail_exponent(i)))
        return terms[nu - p + 1]

    def value(self, nu: int):
        """``v(a_{nu+1} - a_nu)``."""
        p = len(self.prefix)
        if nu < p - 1:
            return _diff_value(self.prefix[nu + 1], self.prefix[nu])
        if self.tail is None:
            raise IndexError(f"finite sequence of length {p}")
        return self.tail_exponent(nu - p + 1)

    def limit_anchor(self) -> TailSeries:
        """The infinite-support series every ``a_nu`` truncates."""
        if self.tail is None:
            raise FiniteSequence("a finite sequence has no limit anchor")
        return TailSeries(self.prefix[-1], self.start, self.tail.step, self.tail.coeffs, self.tail.repeat)

    def __str__(self):
        items = ", ".join(str(a) for a in self.prefix)
        out = f"pcs prefix [{items}]"
        if self.tail is not None:
            t = self.tail
            out += " tail"
            if t.start is not None:
                out += f" start={t.start!r}"
            out += f" step={t.step!r}"
            if t.coeffs:
                out += " coeffs=[" + ", ".join(map(str, t.coeffs)) + "]"
                out += " repeat=[" + ", ".join(map(str, t.repeat)) + "]"
            else:
                out += " coeffs=[" + ", ".join(map(str, t.repeat)) + "]"
        return out


def validate_pcs(s: PCSeq) -> Validation:
    """Check ``v(a_s - a_r) < v(a_t - a_s)`` for ``r < s < t`` in reach."""
    a = s.prefix
    n = len(a)

    def val(i, j):
        return _diff_value(a[j], a[i])

    for r in range(n):
        for t_ in range(r + 1, n):
            for t in range(t_ + 1, n):
                lo, hi = val(r, t_), val(t_, t)
                if lo is INFINITY or hi is INFINITY or not lo < hi:
                    return Validation(False, (r, t_, t), "values do not increase strictly")
    if n == 2 and val(0, 1) is INFINITY:
        return Validation(False, (0, 1, 1), "repeated element")
    if s.tail is not None:
        vals = s.prefix_values()
        if vals and not vals[-1] < s.start:
            return Validation(False, (n - 2, n - 1, n), "the tail starts below the last prefix value")
    return Validation(True)


def _require_valid(s: PCSeq):
    res = validate_pcs(s)
    if not res:
        raise InvalidSequence(f"not a pseudo Cauchy sequence: witness {res.witness} ({res.reason})")


def breadth(s: PCSeq) -> ModuleDesc:
    """``{b : v b > v(a_{nu+1} - a_nu) for all nu}``."""
    if s.tail is None:
        raise FiniteSequence("breadth is defined for sequences of limit length")
    _require_valid(s)
    return ModuleDesc(C.progression_cut(s.start, s.tail.step))


def progression_reaches(start: GroupElement, step: GroupElement, e: GroupElement) -> bool:
    """Whether ``start + i*step >= e`` for some ``i >= 0``."""
    d = e - start
    if d.sign() <= 0:
        return True
    return nat_val(d) >= nat_val(step)


def is_limit(x, s: PCSeq) -> bool:
    """Whether ``v(x - a_nu) == v(a_{nu+1} - a_nu)`` for every ``nu``."""
    _require_valid(s)
    for nu in range(len(s.prefix) - 1):
        if _diff_value(x, s.prefix[nu]) != s.value(nu):
            return False
    if s.tail is None:
        return True
    lead = lead_of_difference(x, s.limit_anchor())
    if lead is None:
        return True
    return not progression_reaches(s.start, s.tail.step, lead[0])


def is_increasing(s: PCSeq) -> bool:
    a = s.prefix
    for i in range(len(a) - 1):
        if not a[i] < a[i + 1]:
            return False
    if s.tail is not None:
        return all(c > 0 for c in s.tail.coeffs + s.tail.repeat)
    return True


def cut_of_pcs(s: PCSeq) -> FieldCut:
    """Descriptor of ``{a_nu : nu}^+``."""
    if s.ambient == GROUP or s.tail is None:
        raise FiniteSequence("the cut of a finite sequence is principal; a tail rule is required")
    _require_valid(s)
    if not is_increasing(s):
        raise NotIncreasing("the sequence is not order-increasing")
    m = breadth(s)
    lim = s.limit_anchor()
    if m.is_zero():
        return canonical_field_cut(PrinF(lim, C.MINUS))
    return canonical_field_cut(BallF(lim, m, C.MINUS))


def in_lower_set_directly(x: Series, s: PCSeq, horizon: int = 64) -> bool:
    """``x <= a_nu`` for some ``nu``, found by enumeration or refuted via the limit.

    For ``x`` above ``a_0 .. a_horizon`` the sequence eventually exceeds ``x``
    only when ``x`` lies below the limit by more than a breadth element.
    """
    for nu in range(horizon):
        if x <= s.term(nu):
            return True
    lead = lead_of_difference(x, s.limit_anchor())
    if lead is None or lead[1] > 0:
        return False
    # x < lim: x is overtaken exactly when the progression reaches v(x - lim)
    return progression_reaches(s.start, s.tail.step, lead[0])
