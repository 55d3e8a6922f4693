"""Bit-packed linear algebra over GF(2).

Rows are Python ints; bit ``j`` of row ``i`` is the entry ``(i, j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Gf2Matrix:
    rows: tuple
    ncols: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row {r:#b} has bits beyond column {self.ncols}")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], ncols: int | None = None) -> "Gf2Matrix":
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for line in entries:
            if len(line) != ncols:
                raise ValueError("ragged matrix")
            rows.append(sum((int(v) & 1) << j for j, v in enumerate(line)))
        return cls(tuple(rows), ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Gf2Matrix":
        return cls((0,) * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(tuple(1 << i for i in range(n)), n)

    def to_lists(self) -> list:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def transpose(self) -> "Gf2Matrix":
        cols = []
        for j in range(self.ncols):
            cols.append(sum(((r >> j) & 1) << i for i, r in enumerate(self.rows)))
        return Gf2Matrix(tuple(cols), self.nrows)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Gf2Matrix":
        rows = []
        for i in row_idx:
            r = self.rows[i]
            rows.append(sum(((r >> j) & 1) << k for k, j in enumerate(col_idx)))
        return Gf2Matrix(tuple(rows), len(col_idx))


def rank_of_rows(rows: Iterable[int]) -> int:
    """Rank of a collection of bit rows. Works on a private pivot table."""
    pivots: dict = {}
    for v in rows:
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                break
            v ^= p
    return len(pivots)


def gf2_rank(m: Gf2Matrix) -> int:
    return rank_of_rows(m.rows)


def gf2_nullity(m: Gf2Matrix) -> int:
    """Dimension of the right kernel, ``cols - rank``."""
    return m.ncols - gf2_rank(m)


def row_reduce(m: Gf2Matrix) -> tuple:
    """Reduced row echelon form of ``m`` and its pivot columns.

    Pivots are scanned from column 0 upward. Returns ``(Gf2Matrix, pivots)``.
    """
    work = list(m.rows)
    pivots = []
    r = 0
    for col in range(m.ncols):
        bit = 1 << col
        sel = next((i for i in range(r, len(work)) if work[i] & bit), None)
        if sel is None:
            continue
        work[r], work[sel] = work[sel], work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= work[r]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return Gf2Matrix(tuple(work), m.ncols), pivots


def span(rows: Sequence[int]) -> set:
    """All vectors in the row span (brute force, for small row counts)."""
    out = {0}
    for v in rows:
        out |= {w ^ v for w in out}
    return out


def kernel_basis(m: Gf2Matrix) -> list:
    """Basis of the right kernel ``{x : m x = 0}`` as column bitmasks."""
    rref, pivots = row_reduce(m)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = 1 << f
        for row, p in zip(rref.rows, pivots):
            if row >> f & 1:
                x |= 1 << p
        basis.append(x)
    return basis
