"""Property suites that check the engine against independent oracles.

Each suite returns a :class:`Check`.  The oracles avoid the closed forms they
test: invariance is decided by constructive escape witnesses plus side
sampling, monoid sums by sums of samples, cofinality by searching for
extrema, and so on.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from . import cuts as C
from . import fields as F
from . import pcs as P
from . import sampling as S
from .errors import (InfinitePrecisionRequested, NotCoarseEnough, NotDedekind,
                     TrivialQuotient)
from .group import INFINITY, Q, Z, GroupElement, OrderedGroup, nat_val
from .series import Series, in_coarsening, residue, series_inverse

L, R = C.LEFT, C.RIGHT


@dataclass
class Check:
    name: str
    ok: bool = True
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    def expect(self, cond: bool, msg) -> bool:
        self.checked += 1
        if not cond:
            self.ok = False
            if len(self.failures) < 10:
                self.failures.append(msg() if callable(msg) else str(msg))
        return cond

    @property
    def detail(self) -> str:
        if self.ok:
            return f"{self.checked} checks"
        return f"{len(self.failures)}+ failures of {self.checked}: " + "; ".join(self.failures)


# -- shared group-cut oracles -----------------------------------------------------

_APPROACH: Dict = {}


FINE = Fraction(1, 10 ** 4)


def approach(cut, side, scale=Fraction(1)):
    key = (cut.group, str(cut), side, scale)
    if key not in _APPROACH:
        _APPROACH[key] = S.approach(cut, side, scale)
    return _APPROACH[key]


def escape_witness(cut: C.Cut, h: GroupElement) -> Optional[GroupElement]:
    """Some ``x`` in the lower set with ``x + h`` in the upper set (``h > 0``)."""
    cut = C.canonical(cut)
    if not cut.is_dedekind():
        return None
    cands = []
    if isinstance(cut, (C.Prin, C.Ball)):
        cands = [cut.anchor, cut.anchor - h]
    else:
        k = cut.level
        width = h[k] if nat_val(h) == k else Fraction(1)
        coords = list(cut.anchor.coords)
        coords[k - 1] = cut.pivot.refined(width / 2).lo
        cands = [cut.group.element(coords)]
    for x in cands + approach(cut, L)[:16]:
        if C.side_of(cut, x) == L and C.side_of(cut, x + h) == R:
            return x
    return None


def invariant_by_definition(cut: C.Cut, g: GroupElement, xs) -> bool:
    """``cut^L + g == cut^L``, decided without the closed form."""
    if g.is_zero():
        return True
    if escape_witness(cut, g if g.sign() > 0 else -g) is not None:
        return False
    return all(C.side_of(cut, x) == C.side_of(cut, x + g) for x in xs)


def sides_agree(a: C.Cut, b: C.Cut, xs) -> bool:
    return all(C.side_of(a, x) == C.side_of(b, x) for x in xs)


def probe_set(rng, cuts, n=40):
    g = cuts[0].group
    xs = []
    for c in cuts:
        xs += approach(c, L) + approach(c, R)
    return xs + [S.rand_element(rng, g) for _ in range(n)]


def group_samples(rng, cut, n):
    """Elements inside and outside the invariance subgroup of ``cut`` and its neighbours."""
    g = cut.group
    k = C.invariance_level(cut)
    out = []
    levels = sorted({max(1, k - 1), k, min(g.rank + 1, k + 1)})
    for i in range(n):
        if i % 3 == 0:
            out.append(S.rand_element(rng, g))
        else:
            out.append(S.rand_in_subgroup(rng, g, levels[i % len(levels)]))
    for i in range(1, g.rank + 1):
        out.extend(S.small_steps(g, i))
    return out[: max(n, 1)] if len(out) > n else out


def corpus_cuts(seed):
    return S.cut_corpus(seed)


# -- criterion 1 ------------------------------------------------------------------

def check_zxz(seed: int = S.DEFAULT_SEED, samples: int = 500) -> Check:
    ch = Check("Z x Z identity")
    rng = random.Random(seed)
    for comps, expected in (((Z, Z), True), ((Q, Q), False)):
        g = OrderedGroup(comps)
        a = C.Ball(g.zero(), 2, C.PLUS)
        b = C.Ball(g.element(1, 0), 2, C.MINUS)
        ch.expect(C.cuts_equal(a, b) == expected, f"cuts_equal in {g}")
        xs = S.sample_elements(rng, g, samples // 2, a) + S.sample_elements(rng, g, samples - samples // 2, b)
        agree = sides_agree(a, b, xs)
        ch.expect(agree == expected, f"side sampling in {g}: agree={agree}")
    return ch


# -- criterion 2 ------------------------------------------------------------------

def check_invariance(seed: int = S.DEFAULT_SEED, samples: int = 200) -> Check:
    ch = Check("invariance closed form vs definition")
    rng = random.Random(seed)
    corpus = corpus_cuts(seed)
    ch.expect(len(corpus) >= 100, f"corpus has {len(corpus)} cuts")
    for cut in corpus:
        g = cut.group
        level = C.invariance_level(cut)
        if not cut.is_dedekind():
            ch.expect(level == 1, f"{cut} in {g}: level {level}")
        xs = S.sample_elements(rng, g, 10, cut)
        for h in group_samples(rng, cut, samples):
            closed = nat_val(h) >= level
            by_def = invariant_by_definition(cut, h, xs)
            by_shift = C.cuts_equal(C.shift(cut, h), cut)
            ch.expect(closed == by_def == by_shift,
                      lambda: f"{cut} in {g}, g={h!r}: closed={closed} def={by_def} shift={by_shift}")
    return ch


# -- criterion 3 ------------------------------------------------------------------

def _separated(cut, other, xs) -> bool:
    return any(C.side_of(cut, x) != C.side_of(other, x) for x in xs)


def check_signature(seed: int = S.DEFAULT_SEED, samples: int = 200) -> Check:
    ch = Check("ball cuts are edges of cosets of the invariance group")
    rng = random.Random(seed)
    for cut in corpus_cuts(seed):
        if not cut.is_dedekind():
            continue
        g = cut.group
        sig = C.signature(cut)
        k = C.invariance_level(cut)
        wit = C.ball_witness(cut)
        xs = probe_set(rng, [cut], samples // 4)
        if sig != 0:
            ok = wit is not None
            if ok:
                anchor, side = wit
                edge = C.cut_from_coset(anchor, k, side)
                ok = C.cuts_equal(edge, cut) and sides_agree(C.Ball(anchor, k, side), cut, xs)
                ok = ok and (side == C.PLUS) == (sig == 1 or C.both_edges(cut))
            ch.expect(ok, lambda: f"{cut} in {g}: signature {sig}, witness {wit}")
        else:
            ch.expect(wit is None, f"{cut}: unexpected witness")
            # no coset edge at any level matches, for anchors near the cut
            anchors = [cut.anchor] + [cut.anchor + u for i in range(1, g.rank + 1)
                                      for u in (g.unit(i), -g.unit(i))]
            anchors += [S.rand_element(rng, g) for _ in range(5)] + approach(cut, L)[:5] + approach(cut, R)[:5]
            for lev in range(2, g.rank + 2):
                for side in (C.PLUS, C.MINUS):
                    for c in anchors:
                        probe = xs + approach(C.canonical(C.Ball(c, lev, side)), L)[:10] \
                            + approach(C.canonical(C.Ball(c, lev, side)), R)[:10]
                        ch.expect(_separated(cut, C.Ball(c, lev, side), probe),
                                  lambda: f"{cut} matched Ball({c!r},{lev},{side})")
    return ch


# -- criterion 4 ------------------------------------------------------------------

def _sum_candidates(cut, side, scale=Fraction(1)):
    return approach(cut, side, scale)


def sum_oracle(c1, c2, total, mode, rng, n=12) -> Optional[str]:
    """Check ``total`` against the set-wise sum; returns a failure message."""
    inner = L if mode == "left" else R
    xs1 = _sum_candidates(c1, inner)
    xs2 = _sum_candidates(c2, inner)
    g = c1.group
    pick1 = [rng.choice(xs1) for _ in range(n)] + [S.rand_element(rng, g) for _ in range(n)]
    pick2 = [rng.choice(xs2) for _ in range(n)] + [S.rand_element(rng, g) for _ in range(n)]
    pick1 = [x for x in pick1 if C.side_of(c1, x) == inner]
    pick2 = [x for x in pick2 if C.side_of(c2, x) == inner]
    for x in pick1:
        for y in pick2:
            if C.side_of(total, x + y) != inner:
                return f"{x!r}+{y!r} escapes"
    # every element of the inner set of the sum is dominated by a sum of samples
    # candidates closer to the summands than any probe is to the sum
    xs1 = _sum_candidates(c1, inner, FINE)
    xs2 = _sum_candidates(c2, inner, FINE)
    zs = _sum_candidates(total, inner)
    zs = [rng.choice(zs) for _ in range(n)] if zs else []
    for z in zs:
        found = False
        for x in xs1:
            if C.side_of(c2, z - x) == inner:
                found = True
                break
        if not found:
            for y in xs2:
                if C.side_of(c1, z - y) == inner:
                    found = True
                    break
        if not found:
            return f"{z!r} is not dominated by any sum"
    return None


def _by_group(cuts):
    out: Dict = {}
    for c in cuts:
        out.setdefault(c.group, []).append(c)
    return out


def check_monoid(seed: int = S.DEFAULT_SEED, samples: int = 100) -> Check:
    ch = Check("cut monoids")
    rng = random.Random(seed)
    corpus = [c for c in corpus_cuts(seed) if c.is_dedekind()]
    groups = _by_group(corpus)
    glist = sorted(groups, key=str)
    for mode in ("left", "right"):
        for _ in range(samples):
            g = rng.choice(glist)
            a, b, c = (rng.choice(groups[g]) for _ in range(3))
            ab_c = C.add_cut(C.add_cut(a, b, mode), c, mode)
            a_bc = C.add_cut(a, C.add_cut(b, c, mode), mode)
            ch.expect(C.cuts_equal(ab_c, a_bc), lambda: f"{mode} assoc fails on {a}, {b}, {c} in {g}")
            ch.expect(C.cuts_equal(C.add_cut(a, b, mode), C.add_cut(b, a, mode)),
                      lambda: f"{mode} commutativity fails on {a}, {b} in {g}")
            msg = sum_oracle(a, b, C.add_cut(a, b, mode), mode, rng)
            ch.expect(msg is None, lambda: f"{mode} sum of {a} and {b} in {g}: {msg}")
        neutral_side = C.PLUS if mode == "left" else C.MINUS
        for cut in corpus:
            zero = C.Prin(cut.group.zero(), neutral_side)
            ch.expect(C.cuts_equal(C.add_cut(zero, cut, mode), cut), lambda: f"{mode} neutral fails on {cut}")
    for g, cs in groups.items():
        for a in cs:
            for b in rng.sample(cs, min(4, len(cs))):
                for mode in ("left", "right"):
                    msg = sum_oracle(a, b, C.add_cut(a, b, mode), mode, rng, 6)
                    ch.expect(msg is None, lambda: f"{mode} sum of {a} and {b} in {g}: {msg}")
    for cut in corpus:
        idem = [C.cuts_equal(C.add_cut(cut, cut, m), cut) for m in ("left", "right")]
        ch.expect(any(idem) == C.is_group_cut(cut), lambda: f"idempotent {idem} vs group cut for {cut} in {cut.group}")
        # the per-mode picture: H+ is left-idempotent, H- is right-idempotent
        for mode, s in (("left", C.PLUS), ("right", C.MINUS)):
            edge = any(c.is_zero() and side == s for c, _, side in C.edge_representations(cut))
            dense_other = False
            if C.is_group_cut(cut) and not edge:
                k = C.invariance_level(cut)
                dense_other = cut.group.component(k - 1) == Q
            expected = edge or dense_other
            got = idem[0 if mode == "left" else 1]
            ch.expect(got == expected, lambda: f"{mode} idempotence of {cut} in {cut.group}: {got}")
    for g in glist:
        for bad in (C.Top(g), C.Bot(g)):
            try:
                C.add_cut(bad, groups[g][0], "left")
                ch.expect(False, f"{bad} accepted by add_cut")
            except NotDedekind:
                ch.expect(True, "")
    return ch


# -- criterion 5 ------------------------------------------------------------------

def check_partition(seed: int = S.DEFAULT_SEED, samples: int = 500) -> Check:
    ch = Check("three-set partition and trivial invariance")
    rng = random.Random(seed)
    for cut in corpus_cuts(seed):
        if not cut.is_dedekind():
            continue
        g = cut.group
        n = g.rank
        level = C.invariance_level(cut)
        xs = S.sample_elements(rng, g, 10, cut)
        for h in group_samples(rng, cut, samples):
            in_g = nat_val(h) >= level
            in_lr = h.sign() < 0 and escape_witness(cut, -h) is not None
            in_rl = h.sign() > 0 and escape_witness(cut, h) is not None
            if in_g:
                in_g = all(C.side_of(cut, x) == C.side_of(cut, x + h) for x in xs[:4])
            ch.expect(in_lr + in_g + in_rl == 1, lambda: f"{cut} in {g}, g={h!r}: {in_lr},{in_g},{in_rl}")
        lows = [x for x in approach(cut, L)[:15]]
        highs = [y for y in approach(cut, R)[:15]]
        subs = [S.rand_in_subgroup(rng, g, level) for _ in range(10)] + [g.zero()]
        lo_g, hi_g = min(subs), max(subs)
        for x in lows:
            for y in highs:
                ch.expect(x - y < lo_g and y - x > hi_g, lambda: f"{cut}: {x!r}-{y!r} meets the invariance group")
        trivial = level == n + 1
        if trivial:
            for _ in range(20):
                h = S.rand_positive(rng, g)
                ch.expect(escape_witness(cut, h) is not None, lambda: f"{cut}: {h!r} not a positive difference")
            for i in range(1, n + 1):
                for h in S.small_steps(g, i):
                    ch.expect(escape_witness(cut, h) is not None, lambda: f"{cut}: {h!r} not a positive difference")
        else:
            h = g.unit(n)
            ch.expect(escape_witness(cut, h) is None
                      and all(C.side_of(cut, x + h) == L for x in approach(cut, L)[:20]),
                      lambda: f"{cut}: e_n arises as a positive difference")
    return ch


# -- criterion 6 ------------------------------------------------------------------

def _tail_generators(g: OrderedGroup, j: int):
    out = []
    for i in range(j, g.rank + 1):
        out.extend(S.small_steps(g, i))
        out.append(g.unit(i).scale(-1))
    return out


def check_quotient(seed: int = S.DEFAULT_SEED, samples: int = 100) -> Check:
    ch = Check("quotients by convex subgroups")
    rng = random.Random(seed)
    for cut in corpus_cuts(seed):
        if not cut.is_dedekind():
            continue
        g = cut.group
        n = g.rank
        xs = S.sample_elements(rng, g, 10, cut)
        try:
            C.quotient_cut(cut, 1)
            ch.expect(False, f"{cut}: quotient by G accepted")
        except TrivialQuotient:
            ch.expect(True, "")
        for j in range(2, n + 2):
            h_sub = all(invariant_by_definition(cut, h, xs) for h in _tail_generators(g, j))
            try:
                qc = C.quotient_cut(cut, j)
            except NotCoarseEnough:
                qc = None
            ch.expect((qc is not None) == h_sub, lambda: f"{cut} in {g} mod G_{j}: defined={qc is not None}")
            if qc is None:
                continue
            gq = qc.group
            # G(cut) inside H iff everything outside H moves the cut
            outside = [u for i in range(1, j) for u in S.small_steps(g, i)]
            inv_in_h = all(escape_witness(cut, u) is not None for u in outside)
            triv_q = all(escape_witness(qc, u) is not None for i in range(1, gq.rank + 1)
                         for u in S.small_steps(gq, i))
            triv_q = triv_q and all(escape_witness(qc, S.rand_positive(rng, gq)) is not None for _ in range(5))
            ch.expect(inv_in_h == triv_q, lambda: f"{cut} mod G_{j}: trivial quotient invariance {triv_q}")
            for x in xs + [S.rand_element(rng, g) for _ in range(samples // 10)]:
                ch.expect(C.side_of(qc, x.project(j)) == C.side_of(cut, x),
                          lambda: f"{cut} mod G_{j}: side of {x!r}")
    return ch


# -- criterion 7 ------------------------------------------------------------------

def _tiny_positive(g: OrderedGroup):
    out = []
    for i in range(1, g.rank + 1):
        out.append(g.unit(i))
        if g.component(i) == Q:
            out.append(g.unit(i).scale(Fraction(1, 10 ** 20)))
    return out


def has_extremum(cut: C.Cut, side: str) -> bool:
    """Whether the ``side`` set has a maximum (L) or minimum (R), by search."""
    cands = approach(cut, side)
    if not cands:
        return False
    best = max(cands) if side == L else min(cands)
    other = R if side == L else L
    sgn = 1 if side == L else -1
    return all(C.side_of(cut, best + d.scale(sgn)) == other for d in _tiny_positive(cut.group))


def check_cofinality(seed: int = S.DEFAULT_SEED, samples: int = 0) -> Check:
    ch = Check("cofinality table")
    one, w = C.Card.ONE, C.Card.ALEPH0
    for cut in corpus_cuts(seed):
        if not cut.is_dedekind():
            continue
        g = cut.group
        cof = C.cofinality(cut)
        oracle = (one if has_extremum(cut, L) else w, one if has_extremum(cut, R) else w)
        ch.expect((cof.left, cof.right) == oracle, lambda: f"{cut} in {g}: {cof} vs {oracle}")
        if isinstance(cut, C.Prin):
            if all(c == Z for c in g.components):
                ch.expect(cof == C.Cofinality(one, one), f"{cut} in {g}")
            if g.component(g.rank) == Q:
                exp = (one, w) if cut.side == C.PLUS else (w, one)
                ch.expect((cof.left, cof.right) == exp, f"{cut} in {g}")
        if isinstance(cut, C.Irr):
            ch.expect(cof == C.Cofinality(w, w), f"{cut} in {g}")
        if C.is_jump(cut):
            ch.expect(g.component(g.rank) == Z, f"jump {cut} in {g}")
        if all(c == Q for c in g.components):
            ch.expect(not C.is_jump(cut), f"jump {cut} in dense {g}")
        ch.expect(C.cofinality(C.reflect(cut)) == cof.swapped(), f"reflect of {cut}")
        ch.expect(C.reflect(C.reflect(cut)) == C.canonical(cut), f"reflect twice {cut}")
        sig, rsig = C.signature(cut), C.signature(C.reflect(cut))
        ch.expect(rsig == -sig or C.both_edges(cut) or C.both_edges(C.reflect(cut)),
                  f"reflect signature {cut}")
        if all(c == Z for c in g.components):
            ch.expect(sig != 0, f"non-ball cut {cut} in all-Z group")
    return ch


# -- criterion 8 ------------------------------------------------------------------

def _unit_part_value(x: Series):
    g, c = x.terms[0]
    eps = x * Series.monomial(x.group, 1 / c, -g) - Series.constant(x.group, 1)
    return eps.terms[0][0] if eps.terms else None


def check_series(seed: int = S.DEFAULT_SEED, samples: int = 100) -> Check:
    ch = Check("series field")
    rng = random.Random(seed)
    groups = S.all_groups(3)
    one = {g: Series.constant(g, 1) for g in groups}
    done = 0
    while done < samples:
        g = rng.choice(groups)
        x = S.rand_series(rng, g, 3, nonzero=True)
        gamma = S.rand_exponent(rng, g)
        delta = _unit_part_value(x)
        reachable = delta is None or gamma.sign() <= 0 or nat_val(delta) <= nat_val(gamma)
        try:
            y = series_inverse(x, gamma)
        except InfinitePrecisionRequested:
            ch.expect(not reachable, lambda: f"inverse of {x} to {gamma!r} refused")
            continue
        ch.expect(reachable, lambda: f"inverse of {x} to unreachable {gamma!r}")
        prod = x * y
        low = prod.filter(lambda e: e < gamma)
        ch.expect(Series(g, low.terms) == one[g] or (gamma.sign() <= 0 and not low.terms and prod.precision >= gamma)
                  or (gamma.sign() <= 0 and Series(g, low.terms).is_zero()),
                  lambda: f"x={x} y={y} x*y={prod}")
        if gamma.sign() > 0:
            ch.expect(Series(g, low.terms) == one[g], lambda: f"x={x} y={y} x*y={prod}")
        ch.expect(prod.precision is INFINITY or prod.precision >= gamma, lambda: f"precision of {prod}")
        ch.expect(y.valuation() == -x.valuation(), lambda: f"v(1/{x})")
        done += 1
    for g in groups:
        for _ in range(3):
            g0 = S.rand_exponent(rng, g)
            m = Series.monomial(g, Fraction(rng.randint(1, 9), rng.randint(1, 9)), g0)
            ch.expect(series_inverse(m) * m == one[g], f"monomial inverse {m}")
    for _ in range(500):
        g = rng.choice(groups)
        x, y = S.rand_series(rng, g), S.rand_series(rng, g)
        ch.expect((x * y).valuation() == x.valuation() + y.valuation(), lambda: f"v({x} * {y})")
        vs = x + y
        ch.expect(vs.valuation() >= min(x.valuation(), y.valuation()), lambda: f"v({x} + {y})")
    for _ in range(200):
        g = rng.choice(groups)
        x, y, z = (S.rand_series(rng, g) for _ in range(3))
        ch.expect(x * (y + z) == x * y + x * z, "distributivity")
        ch.expect(x * y == y * x and x + y == y + x, "commutativity")
        ch.expect((x * y) * z == x * (y * z) and (x + y) + z == x + (y + z), "associativity")
        ch.expect(x + (-x) == Series.zero(g), "additive inverse")
        px, py = S.rand_positive_series(rng, g), S.rand_positive_series(rng, g)
        ch.expect((px + py).sign() > 0 and (px * py).sign() > 0, lambda: f"order with {px}, {py}")
    for g in groups:
        for k in range(1, g.rank + 2):
            pool = [s for s in (S.rand_series(rng, g) for _ in range(200)) if in_coarsening(s, k)][:40]
            for x, y in zip(pool, pool[1:]):
                rx, ry = residue(x, k), residue(y, k)
                ch.expect(residue(x + y, k) == rx + ry, lambda: f"residue additive {x}, {y} @{k}")
                ch.expect(residue(x * y, k) == rx * ry, lambda: f"residue multiplicative {x}, {y} @{k}")
            for x in pool:
                v = x.valuation()
                killed = v is INFINITY or (v.sign() > 0 and nat_val(v) < k)
                ch.expect(residue(x, k).is_zero() == killed, lambda: f"kernel at {x} @{k}")
    return ch


# -- criterion 9 ------------------------------------------------------------------

def _definitional_level(sigma: C.Cut, rng) -> int:
    """Smallest ``k`` such that every tested element of ``G_k`` fixes ``sigma``."""
    g = sigma.group
    xs = S.sample_elements(rng, g, 10, sigma) if sigma.is_dedekind() else []
    k = g.rank + 1
    while k > 1 and all(invariant_by_definition(sigma, u, xs) for u in S.small_steps(g, k - 1)):
        k -= 1
    return k


def _is_ball_plus_by_sampling(sigma: C.Cut, h: int, rng) -> bool:
    g = sigma.group
    if isinstance(sigma, C.Top):
        return True
    if not sigma.is_dedekind():
        return False
    xs = probe_set(rng, [sigma], 20)
    anchors = []
    if hasattr(sigma, "anchor"):
        a = sigma.anchor
        anchors = [a] + [a + u for i in range(1, g.rank + 1) for u in (g.unit(i), -g.unit(i))]
    return any(sides_agree(C.Ball(c, h, C.PLUS), sigma, xs) for c in anchors)


def _ring_samples(rng, cut, ring, proj):
    """Elements of the ring placed near the transformed cut, targeted ones first."""
    g = cut.group
    vals = []
    seg = F.field_invariance_module(cut).segment
    if hasattr(seg, "anchor"):
        b = seg.anchor
        vals += [b, b + g.unit(g.rank), b - g.unit(g.rank)] + [b + u for u in S._fill(g, [0] * g.rank, 1, [1, -1])]
    if isinstance(cut, F.IrrF):
        vals += [cut.gamma, cut.gamma + g.unit(g.rank)]
    vals += [S.rand_exponent(rng, g) for _ in range(6)]
    near = []
    if isinstance(cut, F.IrrF):
        for w in (Fraction(1, 10), Fraction(1, 10 ** 6)):
            for q in (cut.pivot.refined(w).lo, cut.pivot.refined(w).hi):
                y = cut.anchor + Series.monomial(g, q, cut.gamma)
                near += [y, y + Series.monomial(g, 1, cut.gamma + g.unit(g.rank))]
    near += S.series_near(rng, cut.anchor, g, vals)
    out = [proj.c * y + proj.a for y in near]
    out = [x for x in out if ring.contains(x)]
    rng.shuffle(out)
    out += [x for x in (S.rand_series(rng, g) for _ in range(20)) if ring.contains(x)]
    return out


def check_projection(seed: int = S.DEFAULT_SEED, samples: int = 60) -> Check:
    ch = Check("projection into residue fields")
    rng = random.Random(seed)
    corpus = S.field_cut_corpus(seed)
    ch.expect(len(corpus) >= 30, f"{len(corpus)} field cuts")
    for cut in corpus:
        g = cut.group
        sigma = F.field_invariance_module(cut).segment
        h = _definitional_level(sigma, rng)
        ring_h = F.invariance_valuation_ring(cut)
        ch.expect(ring_h.level == h, lambda: f"{cut}: invariance ring O@{ring_h.level}, oracle {h}")
        for j in range(1, g.rank + 2):
            ring = F.ValuationRingDesc(g, j)
            p = F.project_cut(cut, ring)
            if j == 1:
                expected = True
            elif j > h:
                expected = False
            elif j < h:
                expected = True
            else:
                expected = _is_ball_plus_by_sampling(sigma, h, rng)
            ch.expect(p.projectable == expected, lambda: f"{cut} @O{j}: projectable={p.projectable}")
            if not p.projectable:
                continue
            xs = _ring_samples(rng, cut, ring, p)[:samples]
            seen = set()
            for x in xs:
                res_side = F.field_side_of(p.residue_cut, ring.residue(x))
                seen.add(res_side)
                ch.expect(res_side == F.residue_cut_side(p, cut, x),
                          lambda: f"{cut} @O{j}: residue side of {x} vs {p.residue_cut}")
            ch.expect(seen == {L, R}, lambda: f"{cut} @O{j}: residue sides {seen}")
    return ch


# -- criterion 10 -----------------------------------------------------------------

def _breadth_probes(rng, s: P.PCSeq, inside: bool):
    g = s.group
    start, step = s.start, s.tail.step
    k = nat_val(step)
    out = []
    for _ in range(12):
        e = S.rand_exponent(rng, g)
        if inside:
            # exceed every tail value: push coordinate k-1 up (impossible when k == 1)
            if k == 1:
                return []
            bump = start.truncate(k) + g.unit(k - 1).scale(rng.randint(1, 3))
            e = bump + S.rand_in_subgroup(rng, g, k)
        if P.progression_reaches(start, step, e) == inside:
            continue
        out.append(Series.monomial(g, Fraction(rng.choice([1, -1, 3, Fraction(-1, 2)])), e))
    return out


def _direct_side(x, s):
    return L if P.in_lower_set_directly(x, s) else R


def check_breadth(seed: int = S.DEFAULT_SEED, samples: int = 40) -> Check:
    ch = Check("breadth equals the invariance module")
    rng = random.Random(seed)
    corpus = S.pcs_corpus(seed, 50, 2)
    ch.expect(len(corpus) == 50, "50 sequences")
    for s in corpus:
        g = s.group
        b = P.breadth(s)
        cut = P.cut_of_pcs(s)
        inv = F.field_invariance_module(cut)
        ch.expect(inv == b, lambda: f"{s}: invariance {inv} vs breadth {b}")
        lim = s.limit_anchor()
        xs = [s.term(nu) for nu in range(6)]
        xs += [s.term(nu) + Series.monomial(g, c, s.value(nu)) for nu in range(5) for c in (1, -1, Fraction(1, 2))]
        xs += [S.rand_series(rng, g) for _ in range(10)]
        xs += [lim.partial(n) + Series.monomial(g, c, e) for n in (2, 4)
               for c in (1, -1) for e in (S.rand_exponent(rng, g), lim.exponent(n))]
        for x in xs[:samples]:
            ch.expect(F.field_side_of(cut, x) == _direct_side(x, s), lambda: f"{s}: side of {x}")
        in_b = _breadth_probes(rng, s, True)
        out_b = _breadth_probes(rng, s, False)
        for be in in_b:
            ch.expect(b.contains(be), lambda: f"{s}: {be} should be in the breadth")
            ch.expect(all(_direct_side(x, s) == _direct_side(x + be, s) for x in xs[:12]),
                      lambda: f"{s}: {be} moves the cut")
            ch.expect(P.is_limit(lim + be, s), lambda: f"{s}: lim + {be} is not a limit")
            ch.expect(lim + be == lim or not P.is_limit(lim + be, s) or b.contains(be), "")
        for be in out_b:
            pos = be if be.sign() > 0 else -be
            ch.expect(not b.contains(be), lambda: f"{s}: {be} should be outside the breadth")
            nu = next(nu for nu in range(200) if s.value(nu) > pos.valuation())
            x = s.term(nu)
            ch.expect(_direct_side(x, s) == L and _direct_side(x + pos, s) == R,
                      lambda: f"{s}: {pos} does not move the cut")
            ch.expect(not P.is_limit(lim + be, s), lambda: f"{s}: lim + {be} is a limit")
        for be, be2 in zip(in_b, in_b[1:]):
            x1, x2 = lim + be, lim + be2
            ch.expect(b.value_in((be - be2).valuation()), lambda: f"{s}: limits {x1}, {x2}")
    # finite-support candidates are never limits in Q((Z))
    zg = OrderedGroup.of(Z)
    zs = [s for s in S.pcs_corpus(seed + 1, 200, 1) if s.group == zg][:10]
    for s in zs:
        for _ in range(10):
            x = S.rand_series(rng, zg, 4)
            ch.expect(not P.is_limit(x, s), lambda: f"{x} is a limit of {s} in Q((Z))")
    return ch


# -- criterion 11 -----------------------------------------------------------------

def _partners(cut):
    cut = C.canonical(cut)
    out = []
    if isinstance(cut, C.Prin):
        out.append(C.Prin(cut.anchor, C.MINUS if cut.side == C.PLUS else C.PLUS))
    elif isinstance(cut, C.Ball):
        for a, k, s in C.edge_representations(cut):
            out.append(C.canonical(C.Ball(a, k, C.MINUS if s == C.PLUS else C.PLUS)))
    return out


def _edge_pair_by_search(a, b, rng) -> bool:
    g = a.group
    xs = probe_set(rng, [a, b], 20)
    if sides_agree(a, b, xs):
        return True
    anchors = []
    for c in (a, b):
        if hasattr(c, "anchor"):
            anchors.append(c.anchor)
            anchors += [c.anchor + u for i in range(1, g.rank + 1) for u in (g.unit(i), -g.unit(i))]
    for k in range(2, g.rank + 2):
        for c in anchors:
            lo, hi = C.Ball(c, k, C.MINUS), C.Ball(c, k, C.PLUS)
            if (sides_agree(lo, a, xs) and sides_agree(hi, b, xs)) or (sides_agree(lo, b, xs) and sides_agree(hi, a, xs)):
                return True
    return False


def check_rplace(seed: int = S.DEFAULT_SEED, samples: int = 0) -> Check:
    ch = Check("same R-place criterion")
    rng = random.Random(seed)
    corpus = [c for c in corpus_cuts(seed) if c.is_dedekind()]
    groups = _by_group(corpus)
    pairs = []
    for c in corpus:
        pairs.append((c, c))
        pairs += [(c, p) for p in _partners(c)]
        pairs.append((c, rng.choice(groups[c.group])))
    principal = sum(1 for a, b in pairs if isinstance(a, C.Prin) and isinstance(b, C.Prin) and a.side != b.side)
    ch.expect(principal > 0, "corpus contains principal pairs")
    for a, b in pairs:
        got = C.same_r_place(a, b)
        exp = _edge_pair_by_search(a, b, rng)
        ch.expect(got == exp, lambda: f"{a} / {b} in {a.group}: {got} vs {exp}")
    return ch


# -- criterion 12 -----------------------------------------------------------------

def check_cli(seed: int = S.DEFAULT_SEED, samples: int = 200) -> Check:
    from .cli import check_cli_properties
    return check_cli_properties(seed, samples)


SUITES: Dict[str, Callable[..., Check]] = {
    "zxz": check_zxz,
    "invariance": check_invariance,
    "signature": check_signature,
    "monoid": check_monoid,
    "partition": check_partition,
    "quotient": check_quotient,
    "cofinality": check_cofinality,
    "series": check_series,
    "projection": check_projection,
    "breadth": check_breadth,
    "rplace": check_rplace,
    "cli": check_cli,
}


def run_suite(name: str, seed: int = S.DEFAULT_SEED, samples: Optional[int] = None) -> List[Check]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        if n not in SUITES:
            raise KeyError(n)
        fn = SUITES[n]
        out.append(fn(seed) if samples is None else fn(seed, samples))
    return out
