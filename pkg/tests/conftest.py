import itertools
from fractions import Fraction

import pytest
import sympy

from traceideal.core import QQ, PolyRing, Polynomial
from traceideal.families import quotient
from traceideal.linalg import Subspace


@pytest.fixture
def xy():
    return PolyRing(QQ, ("x", "y"))


@pytest.fixture
def xyz():
    return PolyRing(QQ, ("x", "y", "z"))


@pytest.fixture
def semigroup_ring():
    return quotient(QQ, "b,c", ["b^3", "c^3", "b*c"])


@pytest.fixture
def depth_zero_ring():
    return quotient(QQ, "x,y", ["x^2", "x*y"])


def to_sympy(f: Polynomial):
    syms = sympy.symbols(f.ring.variables)
    expr = sympy.Integer(0)
    for m, c in f.as_dict().items():
        term = sympy.Rational(c.numerator, c.denominator) if hasattr(c, "denominator") else sympy.Integer(c)
        for s, e in zip(syms, m):
            term *= s ** e
        expr += term
    return expr, syms


def _canon(ring, c):
    if ring.field.p:
        return int(c) % ring.field.p
    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


def sympy_reduced_gb(gens, order="grevlex"):
    """Reduced Gröbner basis from sympy, as a set of frozen (monomial, coefficient) sets."""
    ring = gens[0].ring
    syms = sympy.symbols(ring.variables)
    kwargs = {"modulus": ring.field.p} if ring.field.p else {}
    G = sympy.groebner([to_sympy(g)[0] for g in gens], *syms, order=order, **kwargs)
    out = set()
    for g in G.polys:
        lc = g.LC(order=order)
        out.add(frozenset((tuple(m), _canon(ring, c / lc)) for m, c in g.terms()))
    return out


def our_gb_as_sets(basis):
    return {frozenset((m, _canon(g.ring, c)) for m, c in g.as_dict().items()) for g in basis}


def monomials_up_to(nvars: int, degree: int) -> list:
    return [m for m in itertools.product(range(degree + 1), repeat=nvars) if sum(m) <= degree]


def truncated_span(gens, degree: int) -> Subspace:
    """k-span of ``m·g`` with total degree at most ``degree``; no Gröbner bases involved."""
    ring = gens[0].ring if gens else None
    monos = monomials_up_to(ring.nvars, degree)
    index = {m: i for i, m in enumerate(monos)}
    vecs = []
    for g in gens:
        dg = g.total_degree()
        for m in monos:
            if sum(m) + dg > degree:
                continue
            prod = g.mul_term(m, 1)
            vecs.append({index[k]: c for k, c in prod.as_dict().items()})
    return Subspace(ring.field, len(monos), vecs)


def rand_poly(ring, rng, terms: int = 3, degree: int = 3, min_degree: int = 1) -> Polynomial:
    """Small random polynomial with integer coefficients in [-5, 5]."""
    out = {}
    for _ in range(rng.randint(1, terms)):
        m = [0] * ring.nvars
        for _ in range(rng.randint(min_degree, degree)):
            m[rng.randrange(ring.nvars)] += 1
        out[tuple(m)] = rng.randint(-5, 5)
    return Polynomial(ring, out)


ACCEPTANCE_LINES: dict = {}


def record_acceptance(number: int, ok: bool, text: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {text.strip()}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
