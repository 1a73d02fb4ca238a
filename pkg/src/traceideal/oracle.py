"""Finite-dimensional linear-algebra model of an Artinian quotient ring.

Everything here works from the multiplication table of the
standard-monomial basis: annihilators, homomorphism spaces and traces are
nullspaces of explicit k-linear maps.  No Gröbner computation happens
after the table is built, which keeps this path independent of the
syzygy machinery it is used to check.
"""

from __future__ import annotations

import threading
from typing import Sequence

from .core import Polynomial
from .errors import NotArtinianLocal
from .linalg import Echelon, Subspace, axpy, nullspace
from .quotient import QuotientRing, RIdeal

_cache_lock = threading.Lock()


class FiniteAlgebra:
    """Basis, multiplication table and variable operators of an Artinian ring."""

    def __init__(self, ring: QuotientRing):
        ring.require_artinian_local()
        self.ring = ring
        self.field = ring.field
        self.basis = ring.standard_monomials()
        self.dim = len(self.basis)
        self.index = {m: i for i, m in enumerate(self.basis)}
        amb = ring.ambient

        def coords_nf(mono) -> dict:
            nf = ring.reduce(amb.monomial(mono))
            return {self.index[m]: c for m, c in nf.as_dict().items()}

        D = self.dim
        table = [[None] * D for _ in range(D)]
        for i in range(D):
            for j in range(i, D):
                prod = tuple(a + b for a, b in zip(self.basis[i], self.basis[j]))
                table[i][j] = table[j][i] = coords_nf(prod)
        self.mult_table = table
        self.var_ops = []
        for v in range(amb.nvars):
            unit = tuple(int(k == v) for k in range(amb.nvars))
            self.var_ops.append(
                [coords_nf(tuple(a + b for a, b in zip(unit, m))) for m in self.basis]
            )
        self._mono_vecs = {(0,) * amb.nvars: {0: 1}}

    # -- element conversions ---------------------------------------------
    def apply_var(self, v: int, vec: dict) -> dict:
        out: dict = {}
        op = self.var_ops[v]
        for j, a in vec.items():
            out = axpy(self.field, out, a, op[j])
        return out

    def monomial_vector(self, mono: tuple) -> dict:
        vec = self._mono_vecs.get(mono)
        if vec is None:
            v = next(k for k, e in enumerate(mono) if e)
            lower = tuple(e - (k == v) for k, e in enumerate(mono))
            vec = self.apply_var(v, self.monomial_vector(lower))
            self._mono_vecs[mono] = vec
        return vec

    def coords(self, f: Polynomial) -> dict:
        """Coordinates of ``f`` in the basis, by evaluating it on 1 through the variable operators."""
        out: dict = {}
        for m, c in f.as_dict().items():
            out = axpy(self.field, out, self.field.coerce(c), self.monomial_vector(m))
        return out

    def element(self, vec: dict) -> Polynomial:
        amb = self.ring.ambient
        return Polynomial(amb, {self.basis[k]: c for k, c in vec.items()})

    def mul_vec(self, u: dict, w: dict) -> dict:
        out: dict = {}
        mul = self.field.mul
        for i, a in u.items():
            row = self.mult_table[i]
            for j, b in w.items():
                out = axpy(self.field, out, mul(a, b), row[j])
        return out

    def operator_columns(self, u: dict) -> list:
        """Columns of multiplication by ``u``: column j is ``u·b_j``."""
        return [self.mul_vec(u, {j: 1}) for j in range(self.dim)]

    def operator_rows(self, u: dict, offset: int = 0) -> list:
        """Rows of multiplication by ``u`` as sparse dicts, column indices shifted by ``offset``."""
        rows: list = [dict() for _ in range(self.dim)]
        for j, col in enumerate(self.operator_columns(u)):
            for t, a in col.items():
                rows[t][offset + j] = a
        return rows

    def ideal_subspace(self, gens: Sequence[Polynomial]) -> Subspace:
        """k-span of ``R·gens`` inside R."""
        vecs = []
        for g in gens:
            cg = self.coords(g)
            vecs.extend(self.mul_vec({k: 1}, cg) for k in range(self.dim))
        return Subspace(self.field, self.dim, vecs)

    def to_ideal(self, space: Subspace) -> RIdeal:
        return RIdeal(self.ring, [self.element(v) for v in space.vectors()])


def build_finite_algebra(R: QuotientRing) -> FiniteAlgebra:
    if not R.is_artinian_local():
        raise NotArtinianLocal(f"{R} is not Artinian local")
    with _cache_lock:
        A = getattr(R, "_finite_algebra", None)
        if A is None:
            A = FiniteAlgebra(R)
            R._finite_algebra = A
    return A


def ann_linear(A: FiniteAlgebra, gens: Sequence[Polynomial]) -> Subspace:
    """``{r : g·r = 0 for all g}`` as an intersection of operator nullspaces."""
    rows = []
    for g in gens:
        rows.extend(A.operator_rows(A.coords(g)))
    return Subspace(A.field, A.dim, nullspace(A.field, rows, A.dim))


def relations_linear(A: FiniteAlgebra, gens: Sequence[Polynomial]) -> list:
    """k-basis of ``{(a_1..a_m) in R^m : sum a_i f_i = 0}`` as vectors of length m·D."""
    m, D = len(gens), A.dim
    rows: list = [dict() for _ in range(D)]
    for i, f in enumerate(gens):
        for t, row in enumerate(A.operator_rows(A.coords(f), offset=i * D)):
            rows[t].update(row)
    return nullspace(A.field, rows, m * D)


def hom_module(A: FiniteAlgebra, gens: Sequence[Polynomial]) -> Subspace:
    """Tuples ``(r_1..r_m)`` such that ``f_i -> r_i`` is a well-defined map into R."""
    m, D = len(gens), A.dim
    ech = Echelon(A.field, m * D)
    for a in relations_linear(A, gens):
        blocks = [{} for _ in range(m)]
        for k, x in a.items():
            blocks[k // D][k % D] = x
        rows: list = [dict() for _ in range(D)]
        for i, block in enumerate(blocks):
            if not block:
                continue
            for t, row in enumerate(A.operator_rows(block, offset=i * D)):
                rows[t].update(row)
        ech.extend(rows)
        if ech.rank == m * D:
            break
    free = nullspace(A.field, [dict(r) for r in ech.rref()], m * D)
    return Subspace(A.field, m * D, free)


def hom_images(A: FiniteAlgebra, hom: Subspace, m: int) -> list:
    """Split every basis tuple of ``hom`` into its m image vectors."""
    D = A.dim
    out = []
    for v in hom.vectors():
        parts = [{} for _ in range(m)]
        for k, x in v.items():
            parts[k // D][k % D] = x
        out.append(parts)
    return out


def trace_linear(A: FiniteAlgebra, gens: Sequence[Polynomial]) -> Subspace:
    """k-span of all images ``α(f_i)``; this span is already an ideal."""
    gens = list(gens)
    hom = hom_module(A, gens)
    images = [part for parts in hom_images(A, hom, len(gens)) for part in parts if part]
    return Subspace(A.field, A.dim, images)


def trace_linear_ideal(A: FiniteAlgebra, gens: Sequence[Polynomial]) -> RIdeal:
    return A.to_ideal(trace_linear(A, gens))


def matrix_kernel_linear(A: FiniteAlgebra, entries: Sequence[Sequence[Polynomial]], cols: int) -> Subspace:
    """k-nullspace of a polynomial matrix acting on ``R^cols`` (rows given as lists)."""
    D = A.dim
    rows_out = []
    for row in entries:
        block_rows: list = [dict() for _ in range(D)]
        for j, e in enumerate(row):
            for t, r in enumerate(A.operator_rows(A.coords(e), offset=j * D)):
                block_rows[t].update(r)
        rows_out.extend(block_rows)
    return Subspace(A.field, cols * D, nullspace(A.field, rows_out, cols * D))


def module_span_linear(A: FiniteAlgebra, columns: Sequence[Sequence[Polynomial]], length: int) -> Subspace:
    """k-span of the R-submodule of ``R^length`` generated by ``columns``."""
    D = A.dim
    vecs = []
    for col in columns:
        cvecs = [A.coords(e) for e in col]
        for k in range(D):
            v: dict = {}
            for i, c in enumerate(cvecs):
                for t, x in A.mul_vec({k: 1}, c).items():
                    v[i * D + t] = x
            vecs.append(v)
    return Subspace(A.field, length * D, vecs)


def module_annihilator_linear(A: FiniteAlgebra, presentation) -> Subspace:
    """``Ann(coker P) = {r : r·R^n ⊆ im P}`` for an n×m presentation matrix P."""
    n, D = presentation.rows, A.dim
    image = Echelon(A.field, n * D)
    image.extend(module_span_linear(A, presentation.columns(), n).vectors())
    rows: dict = {}
    for i in range(n):
        for j in range(D):
            for t, x in image.reduce({i * D + j: 1}).items():
                rows.setdefault((i, t), {})[j] = x
    return Subspace(A.field, D, nullspace(A.field, [rows[k] for k in sorted(rows)], D))
