"""Test families of Artinian rings and random objects over them."""

from __future__ import annotations

import random

from .core import QQ, Field, PolyRing, Polynomial
from .quotient import QuotientRing, RIdeal
from .syzygy import PolyMatrix, PresentedModule
from .trace import random_element


def quotient(field: Field, variables: str, relations: list, local: bool = False) -> QuotientRing:
    S = PolyRing(field, tuple(variables.split(",")))
    return QuotientRing(S, [S.parse(r) for r in relations], local=local)


MIXED_MONOMIAL = [
    ("x,y", ["x^2", "x*y", "y^2"]),
    ("x,y", ["x^3", "x*y", "y^2"]),
    ("x,y", ["x^3", "x^2*y", "y^2"]),
    ("x,y", ["x^3", "x^2*y", "x*y^2", "y^3"]),
    ("x,y", ["x^4", "x*y", "y^2"]),
    ("b,c", ["b^3", "c^3", "b*c"]),
    ("x,y,z", ["x^2", "y^2", "z^2"]),
]


def artinian_family(field: Field = QQ) -> list:
    """Sixteen monomial Artinian local rings, Gorenstein and not."""
    rings = [quotient(field, "x", [f"x^{n}"]) for n in range(2, 7)]
    rings += [quotient(field, "x,y", [f"x^{a}", f"y^{b}"]) for a in (2, 3) for b in (2, 3)]
    rings += [quotient(field, v, rels) for v, rels in MIXED_MONOMIAL]
    return rings


def non_monomial_family(field: Field = QQ) -> list:
    """Artinian local rings whose defining ideals are not monomial."""
    return [
        quotient(field, "x,y", ["x^2 - y^2", "x*y"]),
        quotient(field, "x,y", ["x^2 - y^3", "x*y"]),
        quotient(field, "x,y", ["x^2 + x*y", "y^3", "x*y^2"]),
    ]


def random_ideal(R: QuotientRing, rng: random.Random, max_gens: int = 2) -> RIdeal:
    return RIdeal(R, [random_element(R, rng) for _ in range(rng.randint(1, max_gens))])


def random_entry(R: QuotientRing, rng: random.Random) -> Polynomial:
    roll = rng.random()
    if roll < 0.2:
        return R.ambient.zero()
    if roll < 0.3:
        return R.ambient.one()
    return random_element(R, rng, max_terms=2)


def random_module(R: QuotientRing, rng: random.Random, max_gens: int = 2, max_rels: int = 2) -> PresentedModule:
    n = rng.randint(1, max_gens)
    m = rng.randint(0, max_rels)
    rows = [[random_entry(R, rng) for _ in range(m)] for _ in range(n)]
    return PresentedModule(R, PolyMatrix.from_rows(R.ambient, rows, m))
