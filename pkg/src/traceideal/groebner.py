"""Buchberger's algorithm and the ideal calculus built on it.

The engine works on *vectors*: dicts mapping ``(position, exponents)`` to
coefficients.  Ideals are rank-one vectors (position 0); module
computations in :mod:`traceideal.syzygy` use several positions with a
position-over-term order in which a smaller position index dominates.
"""

from __future__ import annotations

import heapq
import threading
from typing import Iterable, Sequence

from .core import (
    Elimination,
    MonomialOrder,
    OrderKind,
    PolyRing,
    Polynomial,
    DegRevLex,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)
from .errors import StructuralError


class _Context:
    """Field and term-order data needed by the engine."""

    __slots__ = ("p", "field", "key", "rank_one")

    def __init__(self, field, order: MonomialOrder, rank_one: bool = True):
        self.field = field
        self.p = field.p
        okey = order.key
        self.key = lambda mm: (-mm[0], okey(mm[1]))
        self.rank_one = rank_one


class _Elt:
    __slots__ = ("terms", "lm", "deg")

    def __init__(self, terms: dict, lm):
        self.terms = terms
        self.lm = lm
        self.deg = sum(lm[1])


def _monic(terms: dict, ctx: _Context):
    lm = max(terms, key=ctx.key)
    lc = terms[lm]
    if lc != 1:
        inv = ctx.field.inv(lc)
        mul = ctx.field.mul
        terms = {m: mul(c, inv) for m, c in terms.items()}
    return _Elt(terms, lm)


def _reduce(terms: dict, basis_by_pos: dict, ctx: _Context, full: bool = True) -> dict:
    """Multivariate division of ``terms`` by monic basis elements; returns the remainder."""
    p = dict(terms)
    rem = {}
    key = ctx.key
    mod = ctx.p
    field = ctx.field
    while p:
        mm = max(p, key=key)
        c = p[mm]
        pos, exps = mm
        for g in basis_by_pos.get(pos, ()):
            gl = g.lm[1]
            if all(a <= b for a, b in zip(gl, exps)):
                q = tuple(b - a for a, b in zip(gl, exps))
                for (gp, ge), gc in g.terms.items():
                    t = (gp, tuple(a + b for a, b in zip(ge, q)))
                    if mod:
                        v = (p.get(t, 0) - c * gc) % mod
                    else:
                        v = field.sub(p.get(t, 0), c * gc)
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            if not full:
                rem.update(p)
                return rem
            rem[mm] = c
            del p[mm]
    return rem


def _by_pos(elts: Iterable[_Elt]) -> dict:
    out: dict = {}
    for g in elts:
        out.setdefault(g.lm[0], []).append(g)
    return out


def _spoly(a: _Elt, b: _Elt, lcm_exps, ctx: _Context) -> dict:
    qa = monomial_div(lcm_exps, a.lm[1])
    qb = monomial_div(lcm_exps, b.lm[1])
    out: dict = {}
    for (pos, e), c in a.terms.items():
        out[(pos, monomial_mul(e, qa))] = c
    sub = ctx.field.sub
    for (pos, e), c in b.terms.items():
        t = (pos, monomial_mul(e, qb))
        v = sub(out.get(t, 0), c)
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def vector_groebner(vectors: Sequence[dict], ctx: _Context) -> list:
    """Reduced Gröbner basis of the module generated by ``vectors``.

    Returns monic vectors sorted ascending by leading term.  Pair
    selection uses the normal strategy; Buchberger's chain criterion is
    always applied, the coprime criterion only in rank one.
    """
    G: list = []
    by_pos: dict = {}
    heap: list = []
    pending: set = set()
    key = ctx.key

    def add(elt: _Elt):
        k = len(G)
        G.append(elt)
        by_pos.setdefault(elt.lm[0], []).append(elt)
        for i, g in enumerate(G[:-1]):
            if g.lm[0] != elt.lm[0]:
                continue
            lcm = monomial_lcm(g.lm[1], elt.lm[1])
            if ctx.rank_one and all(a == 0 or b == 0 for a, b in zip(g.lm[1], elt.lm[1])):
                continue
            heapq.heappush(heap, (sum(lcm), key((elt.lm[0], lcm)), i, k))
            pending.add((i, k))

    for v in vectors:
        if not v:
            continue
        r = _reduce(v, by_pos, ctx)
        if r:
            add(_monic(r, ctx))

    while heap:
        _, _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        a, b = G[i], G[j]
        lcm = monomial_lcm(a.lm[1], b.lm[1])
        pos = a.lm[0]
        skip = False
        for k, g in enumerate(G):
            if k == i or k == j or g.lm[0] != pos:
                continue
            if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
                continue
            if monomial_divides(g.lm[1], lcm):
                skip = True
                break
        if skip:
            continue
        r = _reduce(_spoly(a, b, lcm, ctx), by_pos, ctx)
        if r:
            elt = _monic(r, ctx)
            if ctx.rank_one and not any(elt.lm[1]):
                return [{elt.lm: 1}]
            add(elt)

    # minimalize, then interreduce tails
    minimal = []
    for idx, g in enumerate(G):
        dominated = False
        for jdx, h in enumerate(G):
            if jdx == idx or h.lm[0] != g.lm[0]:
                continue
            if monomial_divides(h.lm[1], g.lm[1]) and (h.lm[1] != g.lm[1] or jdx < idx):
                dominated = True
                break
        if not dominated:
            minimal.append(g)
    out = []
    for g in minimal:
        others = _by_pos(h for h in minimal if h is not g)
        out.append(_monic(_reduce(g.terms, others, ctx), ctx))
    out.sort(key=lambda e: key(e.lm))
    return [e.terms for e in out]


def _to_vec(f: Polynomial, pos: int = 0) -> dict:
    return {(pos, m): c for m, c in f.as_dict().items()}


def _from_vec(v: dict, ring: PolyRing) -> Polynomial:
    return Polynomial(ring, {m: c for (_, m), c in v.items()}, _trusted=True)


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder | None = None) -> list:
    """Reduced Gröbner basis of ``gens``; sorted ascending by leading monomial."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise StructuralError("generators live in different rings")
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
    ctx = _Context(ring.field, ring.order)
    basis = vector_groebner([_to_vec(g) for g in gens], ctx)
    return [_from_vec(v, ring) for v in basis]


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder | None = None) -> Polynomial:
    """Remainder of ``f`` on division by ``G``; divisors are tried in sequence order."""
    order = order or f.ring.order
    for g in G:
        if g.ring.variables != f.ring.variables or g.ring.field != f.ring.field:
            raise StructuralError("ring mismatch in normal_form")
    ctx = _Context(f.ring.field, order)
    divisors = [_monic(_to_vec(g), ctx) for g in G if not g.is_zero()]
    if not divisors:
        return f
    rem = _reduce(_to_vec(f), _by_pos(divisors), ctx)
    return _from_vec(rem, f.ring)


def exact_quotient(f: Polynomial, g: Polynomial) -> Polynomial:
    """``f / g`` when ``g`` divides ``f``; raises StructuralError otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    field = f.ring.field
    gm, gc = g.leading_monomial, g.leading_coefficient
    quotient = f.ring.zero()
    rest = f
    while not rest.is_zero():
        m, c = rest.leading_monomial, rest.leading_coefficient
        if not monomial_divides(gm, m):
            raise StructuralError(f"{g} does not divide {f}")
        t = f.ring.monomial(monomial_div(m, gm), field.div(c, gc))
        quotient = quotient + t
        rest = rest - t * g
    return quotient


class Ideal:
    """An ideal of a polynomial ring with a lazily computed reduced Gröbner basis."""

    def __init__(self, ring: PolyRing, generators: Iterable[Polynomial] = ()):
        self.ring = ring
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ring.constant(g)
            if g.ring != ring:
                raise StructuralError(f"generator {g} is not in {ring}")
            if not g.is_zero():
                gens.append(g)
        self.generators = tuple(gens)
        self._gb = None
        self._lock = threading.Lock()

    @property
    def gb(self) -> tuple:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    self._gb = tuple(buchberger(self.generators))
        return self._gb

    def leading_monomials(self) -> list:
        return [g.leading_monomial for g in self.gb]

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise StructuralError("ring mismatch")
        if not self.gb:
            return f
        return normal_form(f, self.gb)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        gb = self.gb
        return len(gb) == 1 and gb[0].is_constant()

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise StructuralError("ring mismatch")
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise StructuralError("ring mismatch")
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.gb == other.gb

    def __hash__(self):
        return hash((self.ring, self.gb))

    def __str__(self):
        if not self.gb:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.gb) + ")"

    def __repr__(self):
        return f"Ideal({self.ring}, {self})"


def ideal_membership(f: Polynomial, I: Ideal) -> bool:
    if f.ring != I.ring:
        raise StructuralError("ring mismatch")
    return I.contains(f)


def _fresh_name(taken: Sequence[str], stem: str = "_t") -> str:
    name, i = stem, 0
    while name in taken:
        i += 1
        name = f"{stem}{i}"
    return name


def eliminate(I: Ideal, block: int) -> Ideal:
    """``I`` intersected with the subring of the last ``n - block`` variables.

    The result lives in a ring over those variables.
    """
    ring = I.ring
    if not 0 < block < ring.nvars:
        raise StructuralError(f"cannot eliminate {block} of {ring.nvars} variables")
    elim_ring = ring.with_order(Elimination(block))
    basis = buchberger([Polynomial(elim_ring, g.as_dict(), _trusted=True) for g in I.generators])
    sub_order = ring.order if ring.order.kind is not OrderKind.ELIMINATION else DegRevLex
    sub = PolyRing(ring.field, ring.variables[block:], sub_order)
    kept = [
        Polynomial(sub, {m[block:]: c for m, c in g.as_dict().items()}, _trusted=True)
        for g in basis
        if all(not any(m[:block]) for m in g.as_dict())
    ]
    return Ideal(sub, kept)


def ideal_intersection(I: Ideal, K: Ideal) -> Ideal:
    """``I ∩ K`` by eliminating a tag variable from ``t·I + (1 - t)·K``."""
    if I.ring != K.ring:
        raise StructuralError("ring mismatch")
    ring = I.ring
    if I.is_zero() or K.is_zero():
        return Ideal(ring)
    if I.is_unit():
        return Ideal(ring, K.gb)
    if K.is_unit():
        return Ideal(ring, I.gb)
    big = PolyRing(ring.field, (_fresh_name(ring.variables),) + ring.variables, ring.order)

    def lift(f: Polynomial, t_power: int) -> dict:
        return {(t_power,) + m: c for m, c in f.as_dict().items()}

    gens = [Polynomial(big, lift(f, 1), _trusted=True) for f in I.gb]
    for g in K.gb:
        d = lift(g, 0)
        neg = big.field.neg
        d.update({(1,) + m: neg(c) for m, c in g.as_dict().items()})
        gens.append(Polynomial(big, d, _trusted=True))
    sub = eliminate(Ideal(big, gens), 1)
    return Ideal(ring, [Polynomial(ring, g.as_dict(), _trusted=True) for g in sub.generators])


def colon_ideal(I: Ideal, K: Ideal) -> Ideal:
    """``(I : K) = {f : f·K ⊆ I}``, generator by generator through intersections."""
    if I.ring != K.ring:
        raise StructuralError("ring mismatch")
    if K.is_zero():
        raise StructuralError("colon by the zero ideal is rejected")
    ring = I.ring
    result = None
    for g in K.generators:
        if I.contains(g):
            continue
        meet = ideal_intersection(I, Ideal(ring, [g]))
        part = Ideal(ring, [exact_quotient(h, g) for h in meet.gb])
        result = part if result is None else ideal_intersection(result, part)
    if result is None:
        return Ideal(ring, [ring.one()])
    return Ideal(ring, result.gb)
