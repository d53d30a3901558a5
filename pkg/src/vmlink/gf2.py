"""Bit-packed linear algebra over GF(2).

Each matrix row is a Python int whose bit ``j`` holds column ``j``. The graph
layer caps vertex counts at 64, so in practice every row fits one machine word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import UsageError


@dataclass(frozen=True)
class GF2Matrix:
    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        if self.ncols < 0:
            raise UsageError("ncols must be non-negative")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise UsageError(f"row {r:#x} has bits outside {self.ncols} columns")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], ncols: int | None = None) -> GF2Matrix:
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for line in entries:
            if len(line) != ncols:
                raise UsageError("ragged matrix")
            word = 0
            for j, e in enumerate(line):
                if e not in (0, 1):
                    raise UsageError(f"entry {e!r} is not 0 or 1")
                word |= e << j
            rows.append(word)
        return cls(tuple(rows), ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> GF2Matrix:
        return cls((0,) * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> GF2Matrix:
        return cls(tuple(1 << i for i in range(n)), n)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= j < self.ncols):
            raise IndexError(j)
        return (self.rows[i] >> j) & 1

    def transpose(self) -> GF2Matrix:
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return GF2Matrix(tuple(cols), len(self.rows))


def rank_rows(rows: Iterable[int]) -> int:
    """GF(2) rank of the matrix whose rows are the given bitmasks.

    Keeps an echelon basis in insertion order; ``min(x, x ^ b)`` clears the
    leading bit of ``b`` from ``x`` exactly when it is set.
    """
    basis: list[int] = []
    for x in rows:
        for b in basis:
            y = x ^ b
            if y < x:
                x = y
        if x:
            basis.append(x)
    return len(basis)


def rank(m: GF2Matrix) -> int:
    return rank_rows(m.rows)


def submatrix(m: GF2Matrix, row_idx: Sequence[int], col_idx: Sequence[int]) -> GF2Matrix:
    for i in row_idx:
        if not (0 <= i < m.nrows):
            raise UsageError(f"row index {i} out of range for {m.nrows} rows")
    for j in col_idx:
        if not (0 <= j < m.ncols):
            raise UsageError(f"column index {j} out of range for {m.ncols} columns")
    rows = []
    for i in row_idx:
        src = m.rows[i]
        word = 0
        for jj, j in enumerate(col_idx):
            word |= ((src >> j) & 1) << jj
        rows.append(word)
    return GF2Matrix(tuple(rows), len(col_idx))


def rank_batch(rows: np.ndarray, ncols: int = 64) -> np.ndarray:
    """Ranks of a stack of matrices, shape ``(batch, nrows)`` of uint64 rows.

    Vectorized elimination: one pass per column across the whole batch.
    """
    work = np.array(rows, dtype=np.uint64, copy=True)
    if work.ndim != 2:
        raise UsageError("rank_batch expects a 2-d array (batch, rows)")
    batch, nrows = work.shape
    ranks = np.zeros(batch, dtype=np.int64)
    if batch == 0 or nrows == 0:
        return ranks
    used = np.zeros((batch, nrows), dtype=bool)
    every = np.arange(batch)
    for c in range(ncols):
        bit = np.uint64(1 << c)
        has = (work & bit) != 0
        cand = has & ~used
        found = cand.any(axis=1)
        if not found.any():
            continue
        piv = cand.argmax(axis=1)
        prow = work[every, piv]
        hit = has & found[:, None]
        hit[every, piv] = False
        work ^= np.where(hit, prow[:, None], np.uint64(0))
        used[every[found], piv[found]] = True
        ranks += found
    return ranks
