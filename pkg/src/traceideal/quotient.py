"""Quotient rings ``R = S/J``, their ideals, annihilators and socles."""

from __future__ import annotations

import itertools
import threading
from typing import Iterable, Sequence

from .core import PolyRing, Polynomial, monomial_divides
from .errors import NotArtinianLocal, StructuralError
from .groebner import Ideal, colon_ideal


class QuotientRing:
    """``ambient / defining``; elements are represented by normal forms."""

    def __init__(self, ambient: PolyRing, relations: Iterable[Polynomial] = (), *, local: bool = False):
        self.ambient = ambient
        self.defining = relations if isinstance(relations, Ideal) else Ideal(ambient, relations)
        if self.defining.ring != ambient:
            raise StructuralError("defining ideal lives in another ring")
        if self.defining.is_unit():
            raise StructuralError("the defining ideal is the unit ideal")
        # the localization flag is informational: computations use the affine quotient
        self.local = local
        self._lock = threading.Lock()
        self._std = None
        self._std_done = False
        self._artinian = None

    # -- elements ---------------------------------------------------------
    @property
    def field(self):
        return self.ambient.field

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ambient:
            raise StructuralError(f"{f} is not in {self.ambient}")
        return self.defining.normal_form(f)

    def parse(self, text: str) -> Polynomial:
        return self.reduce(self.ambient.parse(text))

    def gens(self) -> list:
        return [self.reduce(x) for x in self.ambient.gens()]

    def ideal(self, *gens) -> "RIdeal":
        if len(gens) == 1 and not isinstance(gens[0], (Polynomial, str, int)):
            gens = tuple(gens[0])
        return RIdeal(self, [self.parse(g) if isinstance(g, str) else g for g in gens])

    def zero_ideal(self) -> "RIdeal":
        return RIdeal(self, [])

    def unit_ideal(self) -> "RIdeal":
        return RIdeal(self, [self.ambient.one()])

    def maximal_ideal(self) -> "RIdeal":
        return RIdeal(self, self.ambient.gens())

    # -- identity ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, QuotientRing):
            return NotImplemented
        return self.ambient == other.ambient and self.defining.gb == other.defining.gb

    def __hash__(self):
        return hash((self.ambient, self.defining.gb))

    def __str__(self):
        if not self.defining.gb:
            return str(self.ambient)
        return f"{self.ambient}/{self.defining}"

    def __repr__(self):
        return f"QuotientRing({self})"

    # -- finiteness -------------------------------------------------------
    def standard_monomials(self):
        """Standard monomials in increasing order, or ``None`` when infinitely many."""
        if not self._std_done:
            with self._lock:
                if not self._std_done:
                    self._std = _enumerate_standard(self.ambient, self.defining.leading_monomials())
                    self._std_done = True
        return self._std

    @property
    def dimension(self):
        std = self.standard_monomials()
        return float("inf") if std is None else len(std)

    def is_artinian_local(self) -> bool:
        if self._artinian is None:
            std = self.standard_monomials()
            if std is None:
                self._artinian = False
            else:
                D = len(std)
                self._artinian = all(self.defining.contains(x ** D) for x in self.ambient.gens())
        return self._artinian

    def require_artinian_local(self):
        if not self.is_artinian_local():
            raise NotArtinianLocal(f"{self} is not Artinian local")


def _enumerate_standard(ring: PolyRing, leads: Sequence[tuple]):
    n = ring.nvars
    bounds = []
    for i in range(n):
        pure = [m[i] for m in leads if m[i] > 0 and all(e == 0 for k, e in enumerate(m) if k != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    found = [
        m for m in itertools.product(*(range(b) for b in bounds))
        if not any(monomial_divides(l, m) for l in leads)
    ]
    found.sort(key=ring.order.key)
    return tuple(found)


class RIdeal:
    """An ideal of a quotient ring, canonicalized through its lift ``gens + J``."""

    def __init__(self, ring: QuotientRing, generators: Iterable[Polynomial] = ()):
        self.ring = ring
        gens = []
        for g in generators:
            if isinstance(g, int):
                g = ring.ambient.constant(g)
            g = ring.reduce(g)
            if not g.is_zero() and g not in gens:
                gens.append(g)
        self.generators = tuple(gens)
        self.lifted = Ideal(ring.ambient, self.generators + ring.defining.gb)

    @property
    def gb(self) -> tuple:
        return self.lifted.gb

    def canonical_generators(self) -> tuple:
        """Reduced GB elements of the lift that are nonzero in ``R``."""
        J = self.ring.defining
        return tuple(g for g in self.gb if not J.contains(g))

    def contains(self, f: Polynomial) -> bool:
        return self.lifted.contains(f)

    __contains__ = contains

    def issubset(self, other: "RIdeal") -> bool:
        _same_ring(self, other)
        return all(other.contains(g) for g in self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.lifted.is_unit()

    def __add__(self, other: "RIdeal") -> "RIdeal":
        _same_ring(self, other)
        return RIdeal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "RIdeal") -> "RIdeal":
        _same_ring(self, other)
        return RIdeal(self.ring, [f * g for f in self.generators for g in other.generators])

    def __eq__(self, other):
        if not isinstance(other, RIdeal):
            return NotImplemented
        return ideal_equal(self, other)

    def __hash__(self):
        return hash((self.ring, self.gb))

    def __str__(self):
        gens = self.canonical_generators()
        if not gens:
            return "(0)"
        return "(" + ", ".join(str(g) for g in gens) + ")"

    def __repr__(self):
        return f"RIdeal({self} in {self.ring})"


def _same_ring(A: RIdeal, B: RIdeal):
    if A.ring != B.ring:
        raise StructuralError("ideals of different rings")


def ideal_equal(A: RIdeal, B: RIdeal) -> bool:
    _same_ring(A, B)
    return A.gb == B.gb


def annihilator(R: QuotientRing, I: RIdeal) -> RIdeal:
    """``{r in R : r·I = 0}``, the image of the colon ``(J : lift(I))``."""
    if I.ring != R:
        raise StructuralError("ideal belongs to another ring")
    gens = I.canonical_generators()
    if not gens:
        return R.unit_ideal()
    colon = colon_ideal(R.defining, Ideal(R.ambient, gens))
    return RIdeal(R, colon.gb)


def double_annihilator(R: QuotientRing, I: RIdeal) -> RIdeal:
    return annihilator(R, annihilator(R, I))


def standard_monomials(R: QuotientRing):
    return R.standard_monomials()


def is_artinian_local(R: QuotientRing) -> bool:
    return R.is_artinian_local()


def socle(R: QuotientRing):
    """``(Ann_R(m), dim_k)``; the dimension comes from the linear-algebra side."""
    R.require_artinian_local()
    from .oracle import ann_linear, build_finite_algebra

    soc = annihilator(R, R.maximal_ideal())
    A = build_finite_algebra(R)
    dim = ann_linear(A, R.ambient.gens()).dim
    return soc, dim
