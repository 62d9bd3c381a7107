"""Shared independent oracles.

These deliberately avoid the package's own elimination and enumeration code so
that tests compare two unrelated computations.
"""

from fractions import Fraction
from itertools import permutations

import pytest

ACCEPTANCE_LINES: list[str] = []


def cofactor_det(rows):
    """Determinant by cofactor expansion along the first row."""
    rows = [list(r) for r in rows]
    k = len(rows)
    if k == 0:
        return 1
    if k == 1:
        return rows[0][0]
    total = 0
    for j, a in enumerate(rows[0]):
        if a:
            sub = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * a * cofactor_det(sub)
    return total


def gauss_rank(rows):
    """Rank by plain Gaussian elimination over Fractions."""
    a = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, len(a)):
            f = a[i][c] / a[rank][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def brute_ssyt(shape, content):
    """SSYT of a shape and content by trying every arrangement of the letters."""
    letters = [i + 1 for i, c in enumerate(content) for _ in range(c)]
    cells = [(i, j) for i, L in enumerate(shape) for j in range(L)]
    if len(letters) != len(cells):
        return []
    found = set()
    for perm in set(permutations(letters)):
        fill = dict(zip(cells, perm))
        ok = all(
            (j == 0 or fill[(i, j - 1)] <= fill[(i, j)]) and (i == 0 or fill[(i - 1, j)] < fill[(i, j)])
            for (i, j) in cells
        )
        if ok:
            found.add(tuple(tuple(fill[(i, j)] for j in range(L)) for i, L in enumerate(shape)))
    return sorted(found)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
