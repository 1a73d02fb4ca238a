"""Sparse exact linear algebra over a ``Field``.

Vectors are dicts ``{column: nonzero scalar}``.
"""

from __future__ import annotations

from typing import Iterable


def axpy(field, y: dict, a, x: dict) -> dict:
    """Return ``y + a·x`` as a new sparse vector."""
    out = dict(y)
    add, mul = field.add, field.mul
    for k, v in x.items():
        s = add(out.get(k, 0), mul(a, v))
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


class Echelon:
    """Incrementally built row-echelon basis; each row has pivot entry 1 at its minimal column."""

    def __init__(self, field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: dict = {}
        self._order = None

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _pivots(self) -> list:
        if self._order is None:
            self._order = sorted(self.rows)
        return self._order

    def reduce(self, v: dict) -> dict:
        """Remainder of ``v`` with all pivot columns cleared (a linear projection)."""
        v = dict(v)
        field = self.field
        for c in self._pivots():
            a = v.get(c)
            if a:
                v = axpy(field, v, field.neg(a), self.rows[c])
        return v

    def insert(self, v: dict) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        piv = min(r)
        inv = self.field.inv(r[piv])
        self.rows[piv] = {k: self.field.mul(x, inv) for k, x in r.items()}
        self._order = None
        return True

    def extend(self, vectors: Iterable[dict]) -> "Echelon":
        for v in vectors:
            if self.rank == self.ncols:
                break
            self.insert(v)
        return self

    def rref(self) -> list:
        """Fully reduced rows sorted by pivot column (canonical for the row space)."""
        field = self.field
        done: dict = {}
        for c in sorted(self.rows, reverse=True):
            row = self.rows[c]
            for d in sorted(done):
                a = row.get(d)
                if a and d != c:
                    row = axpy(field, row, field.neg(a), done[d])
            done[c] = row
        return [done[c] for c in sorted(done)]


def nullspace(field, rows: Iterable[dict], ncols: int) -> list:
    """Basis of ``{x : row·x = 0 for every row}``; one vector per free column."""
    ech = Echelon(field, ncols).extend(rows)
    reduced = ech.rref()
    pivots = {min(r): r for r in reduced}
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        x = {f: 1}
        for p, r in pivots.items():
            a = r.get(f)
            if a:
                x[p] = field.neg(a)
        basis.append(x)
    return basis


class Subspace:
    """A subspace of ``k^ambient_dim`` held as its canonical reduced echelon rows."""

    __slots__ = ("field", "ambient_dim", "rows", "_ech")

    def __init__(self, field, ambient_dim: int, vectors: Iterable[dict] = ()):
        self.field = field
        self.ambient_dim = ambient_dim
        self._ech = Echelon(field, ambient_dim).extend(vectors)
        self.rows = tuple(tuple(sorted(r.items())) for r in self._ech.rref())

    @property
    def dim(self) -> int:
        return len(self.rows)

    def vectors(self) -> list:
        return [dict(r) for r in self.rows]

    def __contains__(self, v: dict) -> bool:
        return not self._ech.reduce(v)

    def issubset(self, other: "Subspace") -> bool:
        return all(dict(r) in other for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.rows == other.rows

    def __hash__(self):
        return hash((self.ambient_dim, self.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim} in k^{self.ambient_dim})"
