"""Polynomial matrices, syzygies and kernels over quotient rings.

Module elements are vectors ``{(position, exponents): coeff}`` handled by
the Gröbner engine under a position-over-term order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import PolyRing, Polynomial
from .errors import StructuralError
from .groebner import Ideal, _Context, _from_vec, vector_groebner


class PolyMatrix:
    """Dense row-major matrix of polynomials over one ring."""

    def __init__(self, ring: PolyRing, rows: int, cols: int, entries: Sequence[Polynomial]):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise StructuralError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        for e in entries:
            if e.ring != ring:
                raise StructuralError("matrix entry from a different ring")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, ring: PolyRing, rows: Sequence[Sequence], cols: int | None = None) -> "PolyMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise StructuralError("ragged matrix rows")
        flat = [e if isinstance(e, Polynomial) else ring.constant(e) for r in rows for e in r]
        return cls(ring, len(rows), cols, flat)

    @classmethod
    def from_columns(cls, ring: PolyRing, columns: Sequence[Sequence[Polynomial]], rows: int) -> "PolyMatrix":
        columns = [list(c) for c in columns]
        if any(len(c) != rows for c in columns):
            raise StructuralError("column of wrong length")
        return cls(ring, rows, len(columns), [columns[j][i] for i in range(rows) for j in range(len(columns))])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            self.ring, self.cols, self.rows,
            [self[i, j] for j in range(self.cols) for i in range(self.rows)],
        )

    def apply(self, v: Sequence[Polynomial]) -> list:
        if len(v) != self.cols:
            raise StructuralError("vector length does not match column count")
        out = []
        for i in range(self.rows):
            acc = self.ring.zero()
            for j in range(self.cols):
                acc = acc + self[i, j] * v[j]
            out.append(acc)
        return out

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.ring, self.rows, self.cols, self.entries) == (other.ring, other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.entries))

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in self.row(i)) + "]" for i in range(self.rows)) + "]"

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols}, {self})"


def _kernel_columns(M: PolyMatrix, J_basis: Sequence[Polynomial]) -> list:
    """Columns v with ``M v ≡ 0`` modulo ``J``, as lists of polynomials.

    Each column j of M becomes the vector ``(M[:, j] | e_j)``; the defining
    ideal enters as ``g·e_i`` in both blocks.  Under position-over-term the
    first ``rows`` positions are eliminated, and basis elements living
    entirely in the lower block generate the kernel.
    """
    ring = M.ring
    r, c = M.rows, M.cols
    vectors = []
    for j in range(c):
        v = {}
        for i in range(r):
            for m, coef in M[i, j].as_dict().items():
                v[(i, m)] = coef
        v[(r + j, (0,) * ring.nvars)] = 1
        vectors.append(v)
    for g in J_basis:
        gd = g.as_dict()
        for pos in range(r + c):
            vectors.append({(pos, m): coef for m, coef in gd.items()})
    ctx = _Context(ring.field, ring.order, rank_one=False)
    basis = vector_groebner(vectors, ctx)
    out = []
    for v in basis:
        if min(pos for pos, _ in v) < r:
            continue
        col = []
        for j in range(c):
            col.append(_from_vec({k: x for k, x in v.items() if k[0] == r + j}, ring))
        out.append(col)
    return out


def _clean_columns(cols: list, J: Ideal | None) -> list:
    seen = set()
    out = []
    for col in cols:
        if J is not None and J.generators:
            col = [J.normal_form(e) for e in col]
        if all(e.is_zero() for e in col):
            continue
        key = tuple(col)
        if key in seen:
            continue
        seen.add(key)
        out.append(col)
    return out


def syzygies(M: PolyMatrix) -> PolyMatrix:
    """Matrix whose columns generate ``{v : M·v = 0}`` over the polynomial ring."""
    cols = _clean_columns(_kernel_columns(M, ()), None)
    return PolyMatrix.from_columns(M.ring, cols, M.cols)


def kernel_over_quotient(M: PolyMatrix, J: Ideal) -> PolyMatrix:
    """Generators of the kernel of ``M`` acting on ``(S/J)^cols``, reduced modulo ``J``."""
    if J.ring != M.ring:
        raise StructuralError("matrix and ideal live in different rings")
    cols = _clean_columns(_kernel_columns(M, J.gb), J)
    return PolyMatrix.from_columns(M.ring, cols, M.cols)


@dataclass(frozen=True)
class PresentedModule:
    """``coker(presentation)`` over a quotient ring; ``gens`` equals the row count."""

    ring: "QuotientRing"  # noqa: F821
    presentation: PolyMatrix

    def __post_init__(self):
        if self.presentation.ring != self.ring.ambient:
            raise StructuralError("presentation over the wrong ring")
        reduced = [self.ring.reduce(e) for e in self.presentation.entries]
        if tuple(reduced) != self.presentation.entries:
            object.__setattr__(
                self, "presentation",
                PolyMatrix(self.ring.ambient, self.presentation.rows, self.presentation.cols, reduced),
            )

    @property
    def gens(self) -> int:
        return self.presentation.rows

    @classmethod
    def free(cls, ring, rank: int = 1) -> "PresentedModule":
        return cls(ring, PolyMatrix(ring.ambient, rank, 0, ()))

    def __str__(self):
        return f"coker {self.presentation}"


def presentation_of_ideal(R, generators: Sequence[Polynomial]) -> PresentedModule:
    """Present the ideal generated by ``generators`` as ``R^m / syzygies``."""
    gens = [R.reduce(g) for g in generators]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise StructuralError("all generators vanish in the quotient ring")
    row = PolyMatrix(R.ambient, 1, len(gens), gens)
    K = kernel_over_quotient(row, R.defining)
    return PresentedModule(R, K)
