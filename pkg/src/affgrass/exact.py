"""Exact rational matrices, minors, ranks and seeded sampling.

Everything here works over ``fractions.Fraction``.  Rank and determinant go
through fraction-free (Bareiss) elimination on an integer copy of the matrix:
each row is scaled by the lcm of its denominators first, which changes neither
the rank nor (up to the recorded scale) the determinant.

Indices in this module are 0-based, as usual in Python.  The Plücker-label
code elsewhere in the package uses 1-based row labels and converts.
"""

from __future__ import annotations

import hashlib
import random
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence


class ExactMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        grid = tuple(tuple(Fraction(x) for x in row) for row in data)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        for row in grid:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = len(grid)
        self.cols = cols
        self._data = grid

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def vstack(cls, blocks: Sequence["ExactMatrix"]) -> "ExactMatrix":
        cols = blocks[0].cols
        data = [row for b in blocks for row in b._data]
        return cls(data, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._data == other._data and self.cols == other.cols

    def __hash__(self) -> int:
        return hash((self._data, self.cols))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._data)
        return f"ExactMatrix([{body}])"

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        ocols = list(zip(*other._data)) if other.rows else [()] * other.cols
        return ExactMatrix(
            [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in ocols] for r in self._data],
            other.cols,
        )

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in matrix sum")
        return ExactMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], self.cols
        )

    def scale(self, c) -> "ExactMatrix":
        c = Fraction(c)
        return ExactMatrix([[c * a for a in r] for r in self._data], self.cols)

    def power(self, k: int) -> "ExactMatrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        result = ExactMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self._data)) if self.rows else [], self.rows)

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(
            [[self._data[i][j] for j in col_indices] for i in row_indices], len(col_indices)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)


def _integer_rows(rows: Sequence[Sequence]) -> tuple[list[list[int]], Fraction]:
    """Clear denominators row by row; return the int grid and the total scale."""
    out = []
    scale = Fraction(1)
    for r in rows:
        d = 1
        for x in r:
            if isinstance(x, Fraction):
                d = lcm(d, x.denominator)
        out.append([int(x * d) for x in r])
        scale *= d
    return out, scale


def bareiss_det(a: list[list[int]]) -> int:
    """Determinant of a square integer matrix; ``a`` is destroyed."""
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def bareiss_rank(a: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination; ``a`` is destroyed."""
    return len(bareiss_pivots(a))


def bareiss_pivots(a: list[list[int]]) -> list[int]:
    """Pivot columns of a fraction-free row echelon form; ``a`` is destroyed.

    The pivot columns index a maximal linearly independent set of columns.
    """
    nrows = len(a)
    pivots: list[int] = []
    if nrows == 0:
        return pivots
    ncols = len(a[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        if rank == nrows:
            break
        piv = None
        for i in range(rank, nrows):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        prow = a[rank]
        for i in range(rank + 1, nrows):
            rowi = a[i]
            aic = rowi[c]
            if aic == 0:
                for j in range(c + 1, ncols):
                    rowi[j] = (rowi[j] * p) // prev
            else:
                for j in range(c + 1, ncols):
                    rowi[j] = (rowi[j] * p - aic * prow[j]) // prev
            rowi[c] = 0
        prev = p
        pivots.append(c)
        rank += 1
    return pivots


def determinant(m: ExactMatrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    grid, scale = _integer_rows(m._data)
    return Fraction(bareiss_det(grid)) / scale


def minor(m: ExactMatrix, row_indices: Sequence[int], col_indices: Sequence[int]) -> Fraction:
    """Determinant of the submatrix on the given rows/columns, in the given order.

    Order matters (it contributes the sign); a repeated index gives 0.
    """
    if len(row_indices) != len(col_indices):
        raise ValueError("non-square minor")
    for i in row_indices:
        if not 0 <= i < m.rows:
            raise IndexError("index out of range")
    for j in col_indices:
        if not 0 <= j < m.cols:
            raise IndexError("index out of range")
    if len(set(row_indices)) < len(row_indices) or len(set(col_indices)) < len(col_indices):
        return Fraction(0)
    if not row_indices:
        return Fraction(1)
    return determinant(m.submatrix(row_indices, col_indices))


def rank(m: ExactMatrix | Sequence[Sequence]) -> int:
    rows = m._data if isinstance(m, ExactMatrix) else m
    grid, _ = _integer_rows(rows)
    return bareiss_rank(grid)


def int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of a plain integer grid (copied, not destroyed)."""
    return bareiss_rank([list(r) for r in rows])


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def nullspace(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the right kernel {x : A x = 0}."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


class RandomSource:
    """Seeded sample stream.  Not safe to share between concurrent tasks;
    use :meth:`fork` to hand each task its own stream."""

    def __init__(self, seed: int = 0):
        self.seed = int(seed)
        self._rng = random.Random(self.seed)

    def randint(self, lo: int, hi: int) -> int:
        return self._rng.randint(lo, hi)

    def integers(self, count: int, bound: int) -> list[int]:
        return [self._rng.randint(-bound, bound) for _ in range(count)]

    def choice(self, seq):
        return self._rng.choice(seq)

    def fork(self, label: str) -> "RandomSource":
        digest = hashlib.sha256(f"{self.seed}:{label}".encode()).digest()
        return RandomSource(int.from_bytes(digest[:8], "big"))


def random_invertible(n: int, rng: RandomSource, bound: int = 10, max_attempts: int = 1000) -> ExactMatrix:
    if n < 1:
        raise ValueError("n must be positive")
    for _ in range(max_attempts):
        g = ExactMatrix([rng.integers(n, bound) for _ in range(n)], n)
        if determinant(g) != 0:
            return g
    raise RuntimeError("sampling failed")


def adjugate(m: ExactMatrix) -> ExactMatrix:
    n = m.rows
    if n == 1:
        return ExactMatrix([[1]])
    cof = []
    for i in range(n):
        others_r = [k for k in range(n) if k != i]
        row = []
        for j in range(n):
            others_c = [k for k in range(n) if k != j]
            row.append((-1) ** (i + j) * minor(m, others_r, others_c))
        cof.append(row)
    return ExactMatrix(cof, n).transpose()
