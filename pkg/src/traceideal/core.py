"""Exact scalars, monomial orders and sparse multivariate polynomials.

Rational coefficients are kept as ``int`` when integral and as
``fractions.Fraction`` otherwise; prime-field coefficients are ``int``
residues in ``[0, p)``.  Polynomials are immutable and normalized on
construction, so equality and hashing are structural.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from .errors import StructuralError

Scalar = Union[int, Fraction]
Monomial = tuple  # tuple of nonnegative ints


def _is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


@dataclass(frozen=True)
class Field:
    """``Field()`` is the rationals, ``Field(p)`` the prime field of order p."""

    p: int = 0

    def __post_init__(self):
        if self.p:
            if not (2 <= self.p < 2**31) or not _is_prime(self.p):
                raise StructuralError(f"GF({self.p}): modulus must be a prime below 2^31")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self):
        return f"GF({self.p})" if self.p else "QQ"

    def coerce(self, value) -> Scalar:
        """Map an int, Fraction or ``"a/b"`` string into the field."""
        if isinstance(value, str):
            value = Fraction(value.replace(" ", ""))
        if self.p:
            if isinstance(value, Fraction):
                den = value.denominator % self.p
                if den == 0:
                    raise ZeroDivisionError(f"denominator {value.denominator} vanishes in {self}")
                return value.numerator * pow(den, -1, self.p) % self.p
            return int(value) % self.p
        if isinstance(value, Fraction):
            return value.numerator if value.denominator == 1 else value
        return int(value)

    def add(self, a, b):
        if self.p:
            return (a + b) % self.p
        c = a + b
        return c.numerator if type(c) is Fraction and c.denominator == 1 else c

    def sub(self, a, b):
        if self.p:
            return (a - b) % self.p
        c = a - b
        return c.numerator if type(c) is Fraction and c.denominator == 1 else c

    def mul(self, a, b):
        if self.p:
            return a * b % self.p
        c = a * b
        return c.numerator if type(c) is Fraction and c.denominator == 1 else c

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(a, -1, self.p)
        c = Fraction(1) / a
        return c.numerator if c.denominator == 1 else c

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def format(self, c) -> str:
        return str(c)


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


class OrderKind(enum.Enum):
    DEGREVLEX = "degrevlex"
    LEX = "lex"
    ELIMINATION = "elimination"


@lru_cache(maxsize=None)
def _degrevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


@lru_cache(maxsize=None)
def _elim_key(b: int, m: Monomial):
    return (sum(m[:b]), _degrevlex_key(m))


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order; ``key(m)`` is larger for larger monomials.

    ``Elimination(b)`` compares the total degree in the first ``b``
    variables first and breaks ties by degrevlex on all variables.
    """

    kind: OrderKind = OrderKind.DEGREVLEX
    block: int = 0

    def key(self, m: Monomial):
        if self.kind is OrderKind.DEGREVLEX:
            return _degrevlex_key(m)
        if self.kind is OrderKind.LEX:
            return m
        return _elim_key(self.block, m)

    def __str__(self):
        if self.kind is OrderKind.ELIMINATION:
            return f"elimination({self.block})"
        return self.kind.value


DegRevLex = MonomialOrder(OrderKind.DEGREVLEX)
Lex = MonomialOrder(OrderKind.LEX)


def Elimination(block: int) -> MonomialOrder:
    return MonomialOrder(OrderKind.ELIMINATION, block)


def order_from_name(name: str) -> MonomialOrder:
    try:
        return {"degrevlex": DegRevLex, "lex": Lex}[name.lower()]
    except KeyError:
        raise StructuralError(f"unknown monomial order {name!r}") from None


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def compare_monomials(a: Monomial, b: Monomial, order: MonomialOrder = DegRevLex) -> Ordering:
    if len(a) != len(b):
        raise StructuralError("monomials of different length")
    ka, kb = order.key(tuple(a)), order.key(tuple(b))
    if ka == kb:
        return Ordering.EQUAL
    return Ordering.GREATER if ka > kb else Ordering.LESS


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class PolyRing:
    field: Field
    variables: tuple
    order: MonomialOrder = DegRevLex

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise StructuralError("a polynomial ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise StructuralError("variable names must be distinct")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __str__(self):
        return f"{self.field}[{', '.join(self.variables)}]"

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.field, self.variables, order)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.field.coerce(c)})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        if len(exps) != self.nvars:
            raise StructuralError("exponent vector has wrong length")
        return Polynomial(self, {tuple(exps): self.field.coerce(coeff)})

    def gens(self) -> list:
        n = self.nvars
        return [self.monomial(tuple(int(i == j) for j in range(n))) for i in range(n)]

    def var(self, name: str) -> "Polynomial":
        return self.gens()[self.variables.index(name)]

    def parse(self, text: str) -> "Polynomial":
        from .syntax import parse_polynomial

        return parse_polynomial(text, self)

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.variables, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


class Polynomial:
    """Immutable sparse polynomial: a map from exponent tuples to nonzero scalars."""

    __slots__ = ("ring", "_terms", "_sorted", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, Scalar] = (), *, _trusted=False):
        self.ring = ring
        if _trusted:
            self._terms = terms
        else:
            f = ring.field
            clean = {}
            for m, c in dict(terms).items():
                c = f.coerce(c)
                if c != 0:
                    clean[tuple(m)] = c
            self._terms = clean
        self._sorted = None
        self._hash = None

    # -- canonical views --------------------------------------------------
    @property
    def terms(self) -> tuple:
        """(monomial, coefficient) pairs in strictly descending order."""
        if self._sorted is None:
            key = self.ring.order.key
            self._sorted = tuple(sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True))
        return self._sorted

    def as_dict(self) -> dict:
        return dict(self._terms)

    def coefficient(self, m: Monomial):
        return self._terms.get(tuple(m), 0)

    def monomials(self) -> list:
        return [m for m, _ in self.terms]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    @property
    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise StructuralError("zero polynomial has no leading monomial")
        return self.terms[0][0]

    @property
    def leading_coefficient(self):
        if not self._terms:
            raise StructuralError("zero polynomial has no leading coefficient")
        return self.terms[0][1]

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient))

    # -- arithmetic -------------------------------------------------------
    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise StructuralError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        f = self.ring.field
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = f.add(out.get(m, 0), c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(self.ring, {m: neg(c) for m, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = f.coerce(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {m: f.mul(a, c) for m, a in self._terms.items()}, _trusted=True)

    def mul_term(self, mono: Monomial, c) -> "Polynomial":
        f = self.ring.field
        if c == 0:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {monomial_mul(m, mono): f.mul(a, c) for m, a in self._terms.items()},
            _trusted=True,
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        f = self.ring.field
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = monomial_mul(m1, m2)
                s = f.add(out.get(m, 0), f.mul(c1, c2))
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise StructuralError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- identity ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.terms):
            neg = (not self.ring.field.p) and c < 0
            mag = -c if neg else c
            mono = self.ring.format_monomial(m)
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    """Apply ``op`` in {"add", "sub", "mul"} to two polynomials of one ring."""
    if f.ring != g.ring:
        raise StructuralError("ring mismatch")
    try:
        return {"add": f.__add__, "sub": f.__sub__, "mul": f.__mul__}[op](g)
    except KeyError:
        raise StructuralError(f"unknown operation {op!r}") from None


def polys(ring: PolyRing, texts: Iterable[str]) -> list:
    return [ring.parse(t) for t in texts]
