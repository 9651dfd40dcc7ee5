"""Finite-support generalized power series in Q((G)) with a precision marker.

A :class:`Series` stores finitely many nonzero terms ``c * t^g`` together with
a precision ``p``: the element is known modulo terms of value ``>= p``.
``p = INFINITY`` marks an exact element.

:class:`TailSeries` is an exact infinite-support series whose tail is the
arithmetic exponent progression ``start + i*step`` with eventually periodic
coefficients.  It is not an element of the finite-support field; it only
serves as the anchor of a cut realized by a pseudo Cauchy sequence.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, Optional, Tuple, Union

from .errors import (DivisionByZero, GroupMismatch, InfinitePrecisionRequested,
                     InsufficientPrecision, InvalidSequence, NotInRing)
from .group import INFINITY, GroupElement, OrderedGroup, as_fraction, nat_val

Term = Tuple[GroupElement, Fraction]


def _fmt_exp(g: GroupElement) -> str:
    return "(" + ", ".join(str(c) for c in g.coords) + ")"


def _min_prec(a, b):
    if a is INFINITY:
        return b
    if b is INFINITY:
        return a
    return min(a, b)


def _below(e: GroupElement, p) -> bool:
    return p is INFINITY or e < p


class Series:
    """An element of Q((G)); immutable."""

    __slots__ = ("group", "terms", "precision")

    def __init__(self, group: OrderedGroup, terms: Union[Dict, Iterable[Term]] = (), precision=INFINITY):
        if isinstance(terms, dict):
            terms = terms.items()
        if precision is None:
            precision = INFINITY
        if precision is not INFINITY and precision.group != group:
            raise GroupMismatch(f"precision in {precision.group}, series over {group}")
        acc: Dict[GroupElement, Fraction] = {}
        for e, c in terms:
            if e.group is not group and e.group != group:
                raise GroupMismatch(f"exponent in {e.group}, series over {group}")
            acc[e] = acc.get(e, Fraction(0)) + as_fraction(c)
        kept = tuple(sorted(((e, c) for e, c in acc.items() if c and _below(e, precision)),
                            key=lambda t: t[0].coords))
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "terms", kept)
        object.__setattr__(self, "precision", precision)

    def __setattr__(self, key, value):
        raise AttributeError("Series is immutable")

    # constructors
    @classmethod
    def zero(cls, group: OrderedGroup) -> "Series":
        return cls(group)

    @classmethod
    def constant(cls, group: OrderedGroup, c) -> "Series":
        return cls(group, [(group.zero(), as_fraction(c))])

    @classmethod
    def monomial(cls, group: OrderedGroup, c, exponent: GroupElement) -> "Series":
        return cls(group, [(exponent, as_fraction(c))])

    # structure
    def is_exact(self) -> bool:
        return self.precision is INFINITY

    def is_zero(self) -> bool:
        """True for the exact zero."""
        return not self.terms and self.is_exact()

    def coeff(self, e: GroupElement) -> Fraction:
        for g, c in self.terms:
            if g == e:
                return c
        if not _below(e, self.precision):
            raise InsufficientPrecision(f"coefficient at {_fmt_exp(e)} is beyond the precision")
        return Fraction(0)

    def support(self):
        return [e for e, _ in self.terms]

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def valuation(self):
        if self.terms:
            return self.terms[0][0]
        if self.is_exact():
            return INFINITY
        raise InsufficientPrecision("valuation of a zero known only to finite precision")

    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            if self.is_exact():
                return Fraction(0)
            raise InsufficientPrecision("leading coefficient beyond the precision")
        return self.terms[0][1]

    def sign(self) -> int:
        c = self.leading_coefficient()
        return (c > 0) - (c < 0)

    def truncated(self, bound) -> "Series":
        """Drop every term of value ``>= bound``; the precision drops to ``bound``."""
        return Series(self.group, self.terms, _min_prec(self.precision, bound))

    def filter(self, keep) -> "Series":
        return Series(self.group, [(e, c) for e, c in self.terms if keep(e)], self.precision)

    # arithmetic
    def _check(self, other: "Series"):
        if not isinstance(other, Series):
            raise TypeError(f"expected Series, got {type(other).__name__}")
        if other.group != self.group:
            raise GroupMismatch(f"{self.group} vs {other.group}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Series.constant(self.group, other)
        if not isinstance(other, Series):
            return NotImplemented
        self._check(other)
        return Series(self.group, self.terms + other.terms, _min_prec(self.precision, other.precision))

    __radd__ = __add__

    def __neg__(self):
        return Series(self.group, [(e, -c) for e, c in self.terms], self.precision)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Series.constant(self.group, other)
        if not isinstance(other, Series):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, q) -> "Series":
        q = as_fraction(q)
        if not q:
            return Series.zero(self.group)
        return Series(self.group, [(e, c * q) for e, c in self.terms], self.precision)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Series):
            return NotImplemented
        self._check(other)
        prec = _min_prec(_val_or_inf(self) + other.precision, _val_or_inf(other) + self.precision)
        acc: Dict[GroupElement, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                if _below(e, prec):
                    acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return Series(self.group, acc, prec)

    __rmul__ = __mul__

    def shift_exponents(self, g: GroupElement) -> "Series":
        """``t^g * self``."""
        prec = self.precision if self.precision is INFINITY else self.precision + g
        return Series(self.group, [(e + g, c) for e, c in self.terms], prec)

    # order and equality
    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (self.group, self.terms, self.precision) == (other.group, other.terms, other.precision)

    def __hash__(self):
        return hash((self.group, self.terms, self.precision))

    def _cmp(self, other) -> int:
        """Sign of ``self - other``."""
        if not (isinstance(other, Series) and self.precision is INFINITY and other.precision is INFINITY):
            return (self - other).sign()
        self._check(other)
        a, b = self.terms, other.terms
        i = j = 0
        while i < len(a) or j < len(b):
            if j == len(b) or (i < len(a) and a[i][0].coords < b[j][0].coords):
                return 1 if a[i][1] > 0 else -1
            if i == len(a) or b[j][0].coords < a[i][0].coords:
                return -1 if b[j][1] > 0 else 1
            if a[i][1] != b[j][1]:
                return 1 if a[i][1] > b[j][1] else -1
            i += 1
            j += 1
        return 0

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return other < self

    def __ge__(self, other):
        return other <= self

    def __str__(self):
        parts = []
        for e, c in self.terms:
            mag = abs(c)
            body = str(mag) if e.is_zero() else f"{mag} t^{_fmt_exp(e)}"
            parts.append(("-" if c < 0 else "+", body))
        if self.precision is not INFINITY:
            parts.append(("+", f"O(t^{_fmt_exp(self.precision)})"))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, body in parts[1:]:
            out += f" {s} {body}"
        return out

    def __repr__(self):
        return f"Series({self})"


def _val_or_inf(x: Series):
    return x.terms[0][0] if x.terms else INFINITY


def series_arith(op: str, x: Series, y: Optional[Series] = None) -> Series:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "sub":
        return x - y
    raise ValueError(f"unknown series operation {op!r}")


def valuation(x) -> object:
    return x.valuation()


def sign(x) -> int:
    return x.sign()


def _steps_needed(delta: GroupElement, gamma: GroupElement) -> Optional[int]:
    """Least ``J >= 1`` with ``J * delta >= gamma`` for ``delta > 0``, or None."""
    if gamma.sign() <= 0:
        return 1
    kd, kg = nat_val(delta), nat_val(gamma)
    if kd < kg:
        return 1
    if kd > kg:
        return None
    j = max(1, -(-gamma[kd] // delta[kd]))
    while delta.scale(j) < gamma:
        j += 1
    return int(j)


def series_inverse(x: Series, gamma=INFINITY) -> Series:
    """``y`` with ``x * y == 1`` modulo terms of value ``>= gamma``."""
    if gamma is None:
        gamma = INFINITY
    if not x.terms:
        if x.is_exact():
            raise DivisionByZero("inverse of zero")
        raise InsufficientPrecision("inverse of a zero known only to finite precision")
    g, c = x.terms[0]
    group = x.group
    lead_inv = Series.monomial(group, 1 / c, -g)
    if x.is_monomial() and x.is_exact():
        return lead_inv
    # x = c t^g (1 + eps), v(eps) = delta > 0
    eps = (x * lead_inv) - Series.constant(group, 1)
    if not eps.terms:
        # only the precision is left: x is c t^g up to the known terms
        prec = x.precision - g - g
        return Series(group, lead_inv.terms, prec if gamma is INFINITY else _min_prec(gamma - g, prec))
    if gamma is INFINITY:
        raise InfinitePrecisionRequested(f"the inverse of {x} has infinite support")
    delta = eps.terms[0][0]
    if _steps_needed(delta, gamma) is None:
        raise InfinitePrecisionRequested(
            f"precision {_fmt_exp(gamma)} is unreachable: powers of the correction have value {_fmt_exp(delta)}")
    bound = gamma if gamma.sign() > 0 else delta
    s_terms = Series.constant(group, 1)
    neg_eps = (-eps).truncated(bound)
    power = Series.constant(group, 1)
    while True:
        power = (power * neg_eps).truncated(bound)
        if not power.terms:
            break
        s_terms = s_terms + power
    prec = bound - g
    if not x.is_exact():
        prec = _min_prec(prec, x.precision - g - g)
    return Series(group, (lead_inv * Series(group, s_terms.terms)).terms, prec)


def in_coarsening(x, k: int) -> bool:
    """Membership of ``x`` in the valuation ring ``O_{G_k}``."""
    v = x.valuation()
    return v is INFINITY or v.sign() >= 0 or nat_val(v) >= k


def residue(x: Series, k: int) -> Series:
    """Image of ``x`` in the residue field ``Q((G_k))`` of ``O_{G_k}``."""
    group = x.group
    group.check_level(k)
    if not in_coarsening(x, k):
        raise NotInRing(f"{x} has value below G_{k}")
    tail = group.tail_group(k)
    p = x.precision
    if p is INFINITY:
        prec = INFINITY
    elif nat_val(p) >= k:
        prec = p.tail(k)
    elif p.sign() > 0:
        prec = INFINITY
    else:
        raise InsufficientPrecision("residue of an element known only below the subgroup")
    return Series(tail, [(e.tail(k), c) for e, c in x.terms if nat_val(e) >= k], prec)


# -- infinite tails --------------------------------------------------------------


def _coef(pre: Tuple[Fraction, ...], rep: Tuple[Fraction, ...], i: int) -> Fraction:
    if i < len(pre):
        return pre[i]
    return rep[(i - len(pre)) % len(rep)]


def _lead_virtual(d: Series, start: GroupElement, step: GroupElement, pre, rep) -> Term:
    """Leading term of ``d + sum_i c_i t^(start + i*step)`` (tail not eventually zero)."""
    terms = d.terms
    p, i = 0, 0
    while True:
        e_t = start + step.scale(i)
        c_t = _coef(pre, rep, i)
        if p < len(terms) and terms[p][0] < e_t:
            return terms[p]
        if p < len(terms) and terms[p][0] == e_t:
            c = c_t + terms[p][1]
            p += 1
            i += 1
            if c:
                return e_t, c
            continue
        if c_t:
            return e_t, c_t
        i += 1


@dataclass(frozen=True)
class TailSeries:
    """``head + sum_{i >= 0} c_i t^(start + i*step)`` with ``step > 0``.

    ``c_i`` runs through ``pre`` once and then repeats ``rep`` forever; ``rep``
    has a nonzero entry so the tail is genuinely infinite.
    """

    head: Series
    start: GroupElement
    step: GroupElement
    pre: Tuple[Fraction, ...]
    rep: Tuple[Fraction, ...]

    def __post_init__(self):
        g = self.head.group
        if self.start.group != g or self.step.group != g:
            raise GroupMismatch("tail exponents live in a different group")
        if not self.head.is_exact():
            raise InvalidSequence("limit anchors must be exact")
        if self.step.sign() <= 0:
            raise InvalidSequence("tail step must be positive")
        object.__setattr__(self, "pre", tuple(as_fraction(c) for c in self.pre))
        object.__setattr__(self, "rep", tuple(as_fraction(c) for c in self.rep))
        if not any(self.rep):
            raise InvalidSequence("the repeating tail coefficients are all zero")

    @property
    def group(self) -> OrderedGroup:
        return self.head.group

    precision = INFINITY

    def is_exact(self) -> bool:
        return True

    def coef(self, i: int) -> Fraction:
        return _coef(self.pre, self.rep, i)

    def exponent(self, i: int) -> GroupElement:
        return self.start + self.step.scale(i)

    def partial(self, n: int) -> Series:
        """Head plus the first ``n`` tail terms."""
        return self.head + Series(self.group, [(self.exponent(i), self.coef(i)) for i in range(n)])

    def with_head(self, head: Series) -> "TailSeries":
        return TailSeries(head, self.start, self.step, self.pre, self.rep)

    def __add__(self, other):
        if isinstance(other, Series):
            return self.with_head(self.head + other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Series):
            return self.with_head(self.head - other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Series):
            return (-self) + other
        return NotImplemented

    def scale_monomial(self, c, g: GroupElement) -> "TailSeries":
        c = as_fraction(c)
        mono = Series.monomial(self.group, c, g)
        return TailSeries(self.head * mono, self.start + g, self.step,
                          tuple(x * c for x in self.pre), tuple(x * c for x in self.rep))

    def __neg__(self):
        return self.scale_monomial(-1, self.group.zero())

    def lead_of_difference(self, other) -> Optional[Term]:
        """Leading term of ``self - other``; None when they are equal."""
        if isinstance(other, Series):
            if not other.is_exact():
                raise InsufficientPrecision("comparison with an inexact element")
            return _lead_virtual(self.head - other, self.start, self.step, self.pre, self.rep)
        if isinstance(other, TailSeries):
            return _lead_tail_pair(self, other)
        raise TypeError(f"cannot compare TailSeries with {type(other).__name__}")

    def valuation(self):
        return self.lead_of_difference(Series.zero(self.group))[0]

    def leading_coefficient(self) -> Fraction:
        return self.lead_of_difference(Series.zero(self.group))[1]

    def sign(self) -> int:
        return 1 if self.leading_coefficient() > 0 else -1

    def __eq__(self, other):
        if isinstance(other, TailSeries):
            return self.group == other.group and _lead_tail_pair(self, other) is None
        if isinstance(other, Series):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.group, self.step))

    def drop_segment(self, segment) -> Union["TailSeries", Series]:
        """Remove the terms whose exponents lie in the upper set of the group cut ``segment``.

        Tail exponents increase, so once one of them is dropped every later
        one is too and the result is finite.
        """
        from .cuts import LEFT, cut_le, progression_cut, side_of
        keep = lambda e: side_of(segment, e) == LEFT
        head = self.head.filter(keep)
        if cut_le(progression_cut(self.start, self.step), segment):
            return self.with_head(head)
        lo, hi = -1, 1
        while keep(self.exponent(hi - 1)):
            lo, hi = hi - 1, hi * 2
        # first dropped index lies in (lo, hi - 1]
        lo, hi = lo, hi - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if keep(self.exponent(mid)):
                lo = mid
            else:
                hi = mid
        return head + Series(self.group, [(self.exponent(i), self.coef(i)) for i in range(hi)])

    def residue(self, k: int):
        """Residue in ``Q((G_k))``; the tail survives when it lies inside ``G_k``."""
        if not in_coarsening(self, k):
            raise NotInRing(f"{self} has value below G_{k}")
        tail = self.group.tail_group(k)
        inside = lambda e: nat_val(e) >= k
        head = residue(self.head.filter(inside), k)
        if inside(self.step):
            if not inside(self.start):
                return head
            return TailSeries(head, self.start.tail(k), self.step.tail(k), self.pre, self.rep)
        # the progression crosses G_k at most once
        kk = nat_val(self.step)
        m = -self.start[kk] / self.step[kk]
        if m.denominator != 1 or m < 0 or not inside(self.exponent(int(m))):
            return head
        e = self.exponent(int(m))
        return head + Series(tail, [(e.tail(k), self.coef(int(m)))])

    def __str__(self):
        head = str(self.head)
        pre = ", ".join(str(c) for c in self.pre)
        rep = ", ".join(str(c) for c in self.rep)
        return (f"lim({head}; start={_fmt_exp(self.start)} step={_fmt_exp(self.step)} "
                f"coeffs=[{pre}] repeat=[{rep}])")

    __repr__ = __str__


def _progression_index(ts: TailSeries, e: GroupElement) -> Optional[int]:
    """``m`` with ``e == ts.start + m*ts.step``, if any."""
    diff = e - ts.start
    k = nat_val(ts.step)
    if diff.is_zero():
        return 0
    m = diff[k] / ts.step[k]
    if m.denominator != 1 or ts.step.scale(m) != diff:
        return None
    return int(m)


def _lead_tail_pair(a: TailSeries, b: TailSeries) -> Optional[Term]:
    if a.group != b.group:
        raise GroupMismatch(f"{a.group} vs {b.group}")
    if a.step != b.step:
        raise InvalidSequence("limit anchors with different tail steps are incomparable")
    m = _progression_index(a, b.start)
    if m is None:
        raise InvalidSequence("limit anchors with misaligned tails are incomparable")
    if m < 0:
        lead = _lead_tail_pair(b, a)
        return None if lead is None else (lead[0], -lead[1])
    # b's tail index j sits at a's index j + m
    period = lcm(len(a.rep), len(b.rep))
    n_pre = max(len(a.pre), m + len(b.pre))

    def diff_coef(i):
        cb = b.coef(i - m) if i >= m else Fraction(0)
        return a.coef(i) - cb

    pre = tuple(diff_coef(i) for i in range(n_pre))
    rep = tuple(diff_coef(i) for i in range(n_pre, n_pre + period))
    d = a.head - b.head
    if not any(rep):
        finite = d + Series(a.group, [(a.exponent(i), c) for i, c in enumerate(pre)])
        return finite.terms[0] if finite.terms else None
    return _lead_virtual(d, a.start, a.step, pre, rep)


Anchor = Union[Series, TailSeries]


def lead_of_difference(x: Anchor, y: Anchor) -> Optional[Term]:
    """Leading term of ``x - y`` (None when equal); either side may be a TailSeries."""
    if isinstance(x, TailSeries):
        return x.lead_of_difference(y)
    if isinstance(y, TailSeries):
        lead = y.lead_of_difference(x)
        return None if lead is None else (lead[0], -lead[1])
    d = x - y
    if not d.terms:
        if d.is_exact():
            return None
        raise InsufficientPrecision("difference vanishes only to finite precision")
    return d.terms[0]
