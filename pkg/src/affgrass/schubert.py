"""Normalised matrices of the open cells X°(phi) and Plücker evaluation on them.

A point of X°(phi) is presented by the lower part of a column-echelon matrix
with r columns.  The first r+1-i columns are a generating vector v and its
shifts t^c v (t moves a row label down by n); the remaining i-1 columns are
the unit vectors of the tail rows [rn+2-i, rn].  Pivotal rows carry a single 1.
Rows of label <= pn are identically zero and are not materialised.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact import ExactMatrix, RandomSource, minor
from .weyl import ChainElement, dominates


@dataclass(frozen=True)
class GenericCellMatrix:
    phi: ChainElement
    row_offset: int
    # entry_map[row][col]: 0, 1, or ("a", g) for the parameter a_{g,1}
    entry_map: tuple[tuple, ...]
    free_parameters: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.phi.n

    @property
    def r(self) -> int:
        return self.phi.r

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.entry_map), self.r)

    @property
    def pivotal_rows(self) -> tuple[int, ...]:
        return self.phi.tuple

    def parameter_names(self) -> list[str]:
        return [f"a_{{{g},1}}" for g in self.free_parameters]

    def render(self) -> list[list[str]]:
        out = []
        for row in self.entry_map:
            out.append([f"a{e[1]}" if isinstance(e, tuple) else str(e) for e in row])
        return out


def _pq(phi: ChainElement) -> tuple[int, int]:
    n = phi.n
    x = (phi.group - 1) * n + 1 + phi.slot - phi.group
    p = (x - 1) // n
    return p, x - p * n


def build_cell_matrix(phi: ChainElement) -> GenericCellMatrix:
    n, r, i = phi.n, phi.r, phi.group
    top = r * n
    p, q = _pq(phi)
    lead = p * n + q
    tail = set(range(top + 2 - i, top + 1))
    nv = r + 1 - i  # columns spanned by v, tv, ...
    offset = p * n

    def first_column(g: int):
        if g < lead:
            return 0
        if g == lead:
            return 1
        if (g - q) % n == 0 or g in tail:
            return 0
        return ("a", g)

    params = tuple(g for g in range(lead + 1, top + 1) if isinstance(first_column(g), tuple))
    grid = []
    for g in range(offset + 1, top + 1):
        row = []
        for c in range(1, r + 1):
            if c <= nv:
                src = g - (c - 1) * n
                e = 0 if (src <= offset or g in tail) else first_column(src)
            else:
                e = 0
            row.append(e)
        grid.append(row)
    # tail unit columns: column r+s-i has its 1 in row rn+s-i, 2 <= s <= i
    for s_ in range(2, i + 1):
        g = top + s_ - i
        c = r + s_ - i
        for cc in range(r):
            grid[g - offset - 1][cc] = 0
        grid[g - offset - 1][c - 1] = 1
    return GenericCellMatrix(phi, offset, tuple(tuple(row) for row in grid), params)


@dataclass(frozen=True)
class CellPoint:
    cell: GenericCellMatrix
    values: tuple[Fraction, ...]
    matrix: ExactMatrix

    def int_rows(self) -> list[list[int]] | None:
        rows = []
        for i in range(self.matrix.rows):
            row = self.matrix.row(i)
            if any(x.denominator != 1 for x in row):
                return None
            rows.append([int(x) for x in row])
        return rows


def specialize(
    g: GenericCellMatrix,
    values: Sequence | None = None,
    rng: RandomSource | None = None,
    bound: int = 10,
) -> CellPoint:
    k = len(g.free_parameters)
    if values is None:
        if rng is None:
            raise ValueError("need either values or rng")
        values = rng.integers(k, bound)
    if len(values) != k:
        raise ValueError(f"expected {k} parameter values, got {len(values)}")
    vals = tuple(Fraction(v) for v in values)
    lookup = dict(zip(g.free_parameters, vals))
    data = [
        [lookup[e[1]] if isinstance(e, tuple) else Fraction(e) for e in row] for row in g.entry_map
    ]
    return CellPoint(g, vals, ExactMatrix(data, g.r))


def random_points(phi: ChainElement, count: int, rng: RandomSource, bound: int = 10) -> list[CellPoint]:
    g = build_cell_matrix(phi)
    return [specialize(g, rng=rng, bound=bound) for _ in range(count)]


def evaluate_plucker(point: CellPoint, label: Sequence[int]) -> Fraction:
    """f_S: the r x r minor on rows ``label`` (1-based, sorted first)."""
    cell = point.cell
    rows = sorted(label)
    top = cell.r * cell.n
    if rows[0] <= cell.row_offset or rows[-1] > top:
        return Fraction(0)
    idx = [x - cell.row_offset - 1 for x in rows]
    return minor(point.matrix, idx, list(range(cell.r)))


def vanishing_criterion(label: Sequence[int], phi: ChainElement) -> bool:
    """True iff p_label restricts to zero on X(phi)."""
    top = phi.r * phi.n
    if max(label) > top:
        return True
    return not dominates(tuple(sorted(label)), phi.tuple)


def maximal_minor_table(rows: Sequence[Sequence], k: int, labels_from: int = 1) -> dict:
    """All k x k minors on the first k columns, keyed by sorted row-label tuples.

    Built column by column with Laplace expansion along the last column, so every
    k-subset of rows costs O(k) given the (k-1)-subsets.  Rows that vanish on the
    first k columns are skipped; their minors are absent (i.e. zero).
    """
    live = [i for i, row in enumerate(rows) if any(row[c] for c in range(k))]
    prev: dict = {(): 1}
    for col in range(k):
        cur: dict = {}
        for subset in combinations(live, col + 1):
            total = 0
            for t, row_i in enumerate(subset):
                a = rows[row_i][col]
                if not a:
                    continue
                sub = prev.get(subset[:t] + subset[t + 1 :])
                if not sub:
                    continue
                term = a * sub
                total += -term if (t + col) % 2 else term
            if total:
                cur[subset] = total
        prev = cur
    return {tuple(i + labels_from for i in key): val for key, val in prev.items()}


def plucker_table(point: CellPoint) -> dict:
    """Every nonzero Plücker coordinate of the point, keyed by 1-based labels."""
    rows = point.int_rows()
    if rows is None:
        rows = [list(point.matrix.row(i)) for i in range(point.matrix.rows)]
    return maximal_minor_table(rows, point.cell.r, labels_from=point.cell.row_offset + 1)


def identity_certified(lhs, rhs, points: Sequence[CellPoint]) -> bool:
    """Exact check that two functions of a CellPoint agree at every given point."""
    return all(lhs(pt) == rhs(pt) for pt in points)
