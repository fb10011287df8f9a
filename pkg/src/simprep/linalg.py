"""Exact sparse linear algebra over the rationals.

Matrices are stored column-wise as ``{row: Fraction}`` dictionaries.  Ranks
and kernels come from a fraction-free column reduction: columns are scaled to
integers, eliminated by integer cross-multiplication and divided by their
content after every step, which keeps entries small on boundary matrices.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Column = dict  # row index -> value


class RationalMatrix:
    """A ``rows x cols`` matrix with exact rational entries, stored by columns."""

    __slots__ = ("rows", "cols", "columns")

    def __init__(self, rows: int, cols: int, columns: Sequence[Column] | None = None):
        self.rows = rows
        self.cols = cols
        if columns is None:
            columns = [{} for _ in range(cols)]
        if len(columns) != cols:
            raise ValueError("column count mismatch")
        self.columns = [{r: Fraction(v) for r, v in c.items() if v} for c in columns]
        for c in self.columns:
            for r in c:
                if not 0 <= r < rows:
                    raise IndexError(f"row {r} outside 0..{rows - 1}")

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "RationalMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        columns = [{i: data[i][j] for i in range(rows) if data[i][j]} for j in range(cols)]
        return cls(rows, cols, columns)

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for j, c in enumerate(self.columns):
            for i, v in c.items():
                out[i][j] = v
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.columns[j].get(i, Fraction(0))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for c in other.columns:
            acc: dict[int, Fraction] = {}
            for k, v in c.items():
                for i, w in self.columns[k].items():
                    acc[i] = acc.get(i, 0) + v * w
            out.append({i: v for i, v in acc.items() if v})
        return RationalMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return not any(self.columns)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.columns == other.columns

    def __repr__(self) -> str:
        nnz = sum(len(c) for c in self.columns)
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={nnz})"

    def rank(self) -> int:
        return rank_of_columns(self.columns)

    def nullspace(self) -> list[dict[int, Fraction]]:
        """Basis of the kernel, each vector as ``{column index: value}``."""
        return kernel_of_columns(self.columns)


def _integral(col: Column) -> dict[int, int]:
    if not col:
        return {}
    den = reduce(lcm, (Fraction(v).denominator for v in col.values()), 1)
    out = {r: int(Fraction(v) * den) for r, v in col.items()}
    return _normalize(out)


def _normalize(col: dict[int, int]) -> dict[int, int]:
    g = reduce(gcd, col.values(), 0)
    if g > 1:
        return {r: v // g for r, v in col.items()}
    return col


def _combine(a: int, x: dict[int, int], b: int, y: dict[int, int]) -> dict[int, int]:
    """``a*x - b*y`` with zero entries dropped."""
    out = {r: a * v for r, v in x.items()}
    for r, v in y.items():
        w = out.get(r, 0) - b * v
        if w:
            out[r] = w
        else:
            out.pop(r, None)
    return out


class ColumnReducer:
    """Incremental fraction-free column reduction.

    Columns are fed one at a time; each is reduced against the pivots seen so
    far (pivot = largest row index).  ``add`` returns True when the column was
    independent of the previous ones.
    """

    def __init__(self, track: bool = False):
        self.pivots: dict[int, tuple[dict[int, int], dict[int, int] | None]] = {}
        self.track = track
        self.kernel: list[dict[int, int]] = []
        self.count = 0

    def add(self, col: Column, tag: int | None = None) -> bool:
        x = _integral(col)
        idx = self.count if tag is None else tag
        self.count += 1
        v = {idx: 1} if self.track else None
        while x:
            low = max(x)
            hit = self.pivots.get(low)
            if hit is None:
                self.pivots[low] = (x, v)
                return True
            px, pv = hit
            a, b = px[low], x[low]
            x = _combine(a, x, b, px)
            if self.track:
                v = _combine(a, v, b, pv)
            g = reduce(gcd, x.values(), 0)
            if self.track:
                g = reduce(gcd, v.values(), g)
            if g > 1:
                x = {r: w // g for r, w in x.items()}
                if self.track:
                    v = {r: w // g for r, w in v.items()}
        if self.track:
            self.kernel.append(v)
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank_of_columns(columns: Iterable[Column]) -> int:
    red = ColumnReducer()
    for c in columns:
        red.add(c)
    return red.rank


def kernel_of_columns(columns: Sequence[Column]) -> list[dict[int, Fraction]]:
    red = ColumnReducer(track=True)
    for c in columns:
        red.add(c)
    return [{k: Fraction(v) for k, v in vec.items()} for vec in red.kernel]
