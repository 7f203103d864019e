"""
Dense linear algebra over GF(2).

Rows are packed into Python ints: bit ``j`` of ``rows[i]`` is entry ``(i, j)``.
Elimination is word-wide XOR on those ints, which is the hot path for every
rank computation in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class Gf2Matrix:
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.rows)}")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError("row has bits outside the column range")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Gf2Matrix:
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> Gf2Matrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]], ncols: int | None = None) -> Gf2Matrix:
        """Build from a nested list of 0/1 entries."""
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            word = 0
            for j, bit in enumerate(row):
                if bit & 1:
                    word |= 1 << j
            rows.append(word)
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def from_array(cls, arr) -> Gf2Matrix:
        a = np.asarray(arr, dtype=np.int64) % 2
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls.from_rows(a.tolist(), ncols=a.shape[1])

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[int]) -> Gf2Matrix:
        """Build from column words (bit ``i`` of a column word is row ``i``)."""
        rows = [0] * nrows
        for j, col in enumerate(columns):
            if col >> nrows:
                raise ValueError("column has bits outside the row range")
            i = 0
            while col:
                if col & 1:
                    rows[i] |= 1 << j
                col >>= 1
                i += 1
        return cls(nrows, len(columns), tuple(rows))

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.ncols):
                out[i, j] = (r >> j) & 1
        return out

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        self._check(i, j)
        return (self.rows[i] >> j) & 1

    def _check(self, i: int, j: int) -> None:
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"entry ({i}, {j}) out of range for {self.nrows}x{self.ncols}")

    def column(self, j: int) -> int:
        """Column ``j`` as a word (bit ``i`` = row ``i``)."""
        if not 0 <= j < self.ncols:
            raise IndexError(f"column {j} out of range")
        word = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                word |= 1 << i
        return word

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> Gf2Matrix:
        return Gf2Matrix(self.ncols, self.nrows, tuple(self.columns()))

    def select_columns(self, idx: Sequence[int]) -> Gf2Matrix:
        for j in idx:
            if not 0 <= j < self.ncols:
                raise IndexError(f"column {j} out of range")
        rows = []
        for r in self.rows:
            word = 0
            for k, j in enumerate(idx):
                if (r >> j) & 1:
                    word |= 1 << k
            rows.append(word)
        return Gf2Matrix(self.nrows, len(idx), tuple(rows))

    def select_rows(self, idx: Sequence[int]) -> Gf2Matrix:
        for i in idx:
            if not 0 <= i < self.nrows:
                raise IndexError(f"row {i} out of range")
        return Gf2Matrix(len(idx), self.ncols, tuple(self.rows[i] for i in idx))

    def hstack(self, *others: Gf2Matrix) -> Gf2Matrix:
        rows = list(self.rows)
        width = self.ncols
        for o in others:
            if o.nrows != self.nrows:
                raise ValueError("row counts differ")
            rows = [r | (s << width) for r, s in zip(rows, o.rows)]
            width += o.ncols
        return Gf2Matrix(self.nrows, width, tuple(rows))

    def __add__(self, other: Gf2Matrix) -> Gf2Matrix:
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return Gf2Matrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    def __str__(self) -> str:
        return "\n".join(
            "".join(str((r >> j) & 1) for j in range(self.ncols)) for r in self.rows
        )


def rank_of_words(words: Iterable[int]) -> int:
    """Dimension of the span of a collection of bit vectors."""
    basis: dict[int, int] = {}  # leading bit -> vector
    for w in words:
        while w:
            lead = w.bit_length() - 1
            b = basis.get(lead)
            if b is None:
                basis[lead] = w
                break
            w ^= b
    return len(basis)


def rank(m: Gf2Matrix) -> int:
    return rank_of_words(m.rows)


def rref(m: Gf2Matrix) -> tuple[Gf2Matrix, list[int]]:
    """Reduced row-echelon form; leftmost pivot column, topmost pivot row."""
    rows = list(m.rows)
    pivots: list[int] = []
    top = 0
    for j in range(m.ncols):
        bit = 1 << j
        found = next((i for i in range(top, m.nrows) if rows[i] & bit), None)
        if found is None:
            continue
        rows[top], rows[found] = rows[found], rows[top]
        p = rows[top]
        for i in range(m.nrows):
            if i != top and rows[i] & bit:
                rows[i] ^= p
        pivots.append(j)
        top += 1
        if top == m.nrows:
            break
    return Gf2Matrix(m.nrows, m.ncols, tuple(rows)), pivots


def row_space_key(m: Gf2Matrix) -> tuple[int, ...]:
    """Canonical key of the row space: nonzero rows of the RREF."""
    red, pivots = rref(m)
    return red.rows[: len(pivots)]


def principal_submatrix(a: Gf2Matrix, s: Iterable[int]) -> Gf2Matrix:
    """Rows and columns indexed by ``s``, kept in increasing order."""
    if a.nrows != a.ncols:
        raise ValueError("principal submatrix needs a square matrix")
    idx = sorted(set(s))
    for i in idx:
        if not 0 <= i < a.nrows:
            raise IndexError(f"index {i} out of range")
    return a.select_rows(idx).select_columns(idx)


def is_nonsingular(a: Gf2Matrix) -> bool:
    # the 0x0 matrix counts as nonsingular
    return a.nrows == a.ncols and rank(a) == a.nrows


def express(basis: Sequence[int], v: int) -> int | None:
    """Coefficients of ``v`` over an independent list ``basis``, as a bit mask.

    Returns None when ``v`` is outside the span.
    """
    red: dict[int, tuple[int, int]] = {}  # lead -> (vector, combination mask)
    for k, b in enumerate(basis):
        comb = 1 << k
        while b:
            lead = b.bit_length() - 1
            hit = red.get(lead)
            if hit is None:
                red[lead] = (b, comb)
                break
            b ^= hit[0]
            comb ^= hit[1]
        else:
            raise ValueError("basis vectors are dependent")
    comb = 0
    while v:
        hit = red.get(v.bit_length() - 1)
        if hit is None:
            return None
        v ^= hit[0]
        comb ^= hit[1]
    return comb


class XorBasis:
    """Incremental echelon basis for rank and span queries."""

    __slots__ = ("_lead",)

    def __init__(self, words: Iterable[int] = ()):
        self._lead: dict[int, int] = {}
        for w in words:
            self.add(w)

    def reduce(self, w: int) -> int:
        while w:
            b = self._lead.get(w.bit_length() - 1)
            if b is None:
                return w
            w ^= b
        return 0

    def add(self, w: int) -> bool:
        """Insert ``w``; True when the rank grew."""
        w = self.reduce(w)
        if not w:
            return False
        self._lead[w.bit_length() - 1] = w
        return True

    def contains(self, w: int) -> bool:
        return self.reduce(w) == 0

    def copy(self) -> XorBasis:
        out = XorBasis()
        out._lead = dict(self._lead)
        return out

    def __len__(self) -> int:
        return len(self._lead)

    def key(self) -> tuple[int, ...]:
        """Canonical key of the spanned subspace (fully reduced basis)."""
        leads = sorted(self._lead, reverse=True)
        vecs = [self._lead[k] for k in leads]
        for i, lead in enumerate(leads):
            for k in range(len(vecs)):
                if k != i and (vecs[k] >> lead) & 1:
                    vecs[k] ^= vecs[i]
        return tuple(vecs)


def subset_ranks(columns: Sequence[int]) -> list[int]:
    """Rank of every column subset, indexed by bit mask (2^len(columns) entries)."""
    m = len(columns)
    out = [0] * (1 << m)
    # spans[mask] holds an echelon basis so each entry costs one reduction
    bases: list[tuple[int, ...]] = [()] * (1 << m)
    for mask in range(1, 1 << m):
        low = (mask & -mask).bit_length() - 1
        prev = mask & (mask - 1)
        basis = bases[prev]
        w = columns[low]
        for b in basis:
            w = min(w, w ^ b)
        if w:
            basis = tuple(sorted(basis + (w,), reverse=True))
            out[mask] = out[prev] + 1
        else:
            out[mask] = out[prev]
        bases[mask] = basis
    return out
