"""Nilpotent orbits: rank conditions, Lusztig's embedding, the minor filtration
F_{m,mu}, Weyl-module dimension predictions, and the orbit-closure equations
built from partial traces of minors.

Dimensions of spaces of functions on an orbit closure are computed as exact
ranks of evaluation matrices at random points of the (dense) open orbit.  All
maximal minors of M(X) = [X^{n-1}; ...; X; I] are torus weight vectors for
conjugation by diagonal matrices and are homogeneous in the entries of X, so
the evaluation matrices split into independent (degree, weight) blocks.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations
from math import comb, prod
from typing import Sequence

from .exact import ExactMatrix, RandomSource, adjugate, bareiss_pivots, minor, random_invertible, rank
from .partitions import as_partition, conjugate, dominance_leq, partitions
from .schubert import maximal_minor_table

MAX_N = int(os.environ.get("AFFGRASS_MAX_N", "4"))
MAX_M = int(os.environ.get("AFFGRASS_MAX_M", "3"))


def jordan_matrix(mu: Sequence[int]) -> ExactMatrix:
    mu = as_partition(mu)
    n = sum(mu)
    data = [[0] * n for _ in range(n)]
    start = 0
    for size in mu:
        for k in range(start, start + size - 1):
            data[k][k + 1] = 1
        start += size
    return ExactMatrix(data, n)


@dataclass(frozen=True)
class NilpotentPoint:
    matrix: ExactMatrix
    orbit: tuple[int, ...] | None = None

    @property
    def n(self) -> int:
        return self.matrix.rows


def is_nilpotent(N: ExactMatrix) -> bool:
    return N.power(N.rows).is_zero()


def power_ranks(N: ExactMatrix) -> list[int]:
    """rank(N^i) for i = 1..n."""
    out = []
    P = N
    for _ in range(N.rows):
        out.append(rank(P))
        P = P @ N
    return out


def rank_bounds(mu: Sequence[int]) -> list[int]:
    """n - (lambda_1 + ... + lambda_i) for i = 1..n, lambda the conjugate of mu."""
    mu = as_partition(mu)
    n = sum(mu)
    lam = conjugate(mu) + (0,) * n
    return [n - sum(lam[:i]) for i in range(1, n + 1)]


def orbit_membership(N: ExactMatrix | NilpotentPoint, mu: Sequence[int]) -> tuple[bool, bool]:
    """(in the closure of the orbit of mu, in the orbit itself)."""
    if isinstance(N, NilpotentPoint):
        N = N.matrix
    if not is_nilpotent(N):
        raise ValueError("not nilpotent")
    ranks = power_ranks(N)
    bounds = rank_bounds(mu)
    return (
        all(a <= b for a, b in zip(ranks, bounds)),
        all(a == b for a, b in zip(ranks, bounds)),
    )


def orbit_type(N: ExactMatrix) -> tuple[int, ...]:
    """Jordan type recovered from the ranks of powers."""
    n = N.rows
    ranks = [n] + power_ranks(N)
    lam = [ranks[i] - ranks[i + 1] for i in range(n)]
    return conjugate(tuple(x for x in lam if x))


def random_orbit_point(mu: Sequence[int], rng: RandomSource, integral: bool = False) -> NilpotentPoint:
    """g J_mu g^{-1} for a random integer g.

    With ``integral=True`` the point is det(g) g J_mu g^{-1} = g J_mu adj(g), a
    nonzero multiple and hence a point of the same orbit with integer entries.
    """
    mu = as_partition(mu)
    n = sum(mu)
    g = random_invertible(n, rng)
    adj = adjugate(g)
    N = g @ jordan_matrix(mu) @ adj
    if not integral:
        from .exact import determinant

        N = N.scale(Fraction(1) / determinant(g))
    point = NilpotentPoint(N, mu)
    if not orbit_membership(point, mu)[1]:
        raise ArithmeticError("sampled point left the orbit")
    return point


@dataclass(frozen=True)
class LusztigMatrix:
    matrix: ExactMatrix

    @property
    def n(self) -> int:
        return self.matrix.cols

    def bottom_minor(self) -> Fraction:
        n = self.n
        return minor(self.matrix, list(range(n * (n - 1), n * n)), list(range(n)))

    def shift_pattern_holds(self) -> bool:
        """Row block b of column j+1 equals row block b+1 of column j, shifted by t.

        Concretely: column j of N^k is N^k e_j; the stacked layout means the
        entries of N^{k} e_j sit n rows above those of N^{k-1} e_j.
        """
        n = self.n
        M = self.matrix
        N = [[M[(n - 2) * n + i, j] for j in range(n)] for i in range(n)]
        for b in range(n - 1):
            for i in range(n):
                for j in range(n):
                    # block b holds N^{n-1-b}; it must equal N times block b+1
                    want = sum(N[i][k] * M[(b + 1) * n + k, j] for k in range(n))
                    if M[b * n + i, j] != want:
                        return False
        return True


def lusztig_embed(N: ExactMatrix | NilpotentPoint) -> LusztigMatrix:
    if isinstance(N, NilpotentPoint):
        N = N.matrix
    if not is_nilpotent(N):
        raise ValueError("not nilpotent")
    n = N.rows
    blocks = [N.power(k) for k in range(n - 1, -1, -1)]
    return LusztigMatrix(ExactMatrix.vstack(blocks))


def stacked_int_rows(N: ExactMatrix) -> list[list[int]]:
    rows = [list(r) for r in lusztig_embed(N).matrix.tolist()]
    if any(x.denominator != 1 for r in rows for x in r):
        return rows
    return [[int(x) for x in r] for r in rows]


def minor_tables(N: ExactMatrix) -> dict:
    """All nonzero maximal minors of M(N), keyed by 1-based row labels."""
    n = N.rows
    return maximal_minor_table(stacked_int_rows(N), n)


def minor_class(label: Sequence[int], n: int) -> tuple[int, tuple[int, ...]]:
    """(degree in the entries of X, torus weight) of the maximal minor on ``label``."""
    deg = 0
    counts = [0] * n
    for g in label:
        block, i = divmod(g - 1, n)
        deg += n - 1 - block
        counts[i] += 1
    return deg, tuple(counts)


def _add_class(a, b):
    return a[0] + b[0], tuple(x + y for x, y in zip(a[1], b[1]))


class OrbitSampler:
    """A growing pool of integral points of one orbit and their minor tables."""

    def __init__(self, mu: Sequence[int], rng: RandomSource):
        self.mu = as_partition(mu)
        self.rng = rng
        self.tables: list[dict] = []

    def ensure(self, count: int) -> list[dict]:
        while len(self.tables) < count:
            pt = random_orbit_point(self.mu, self.rng, integral=True)
            self.tables.append(minor_tables(pt.matrix))
        return self.tables[:count]


def _check_caps(n: int, m: int, max_n: int | None, max_m: int | None) -> None:
    max_n = MAX_N if max_n is None else max_n
    max_m = MAX_M if max_m is None else max_m
    if n > max_n or m > max_m:
        size = comb(comb(n * n, n) + m, m)
        raise ValueError(
            f"caps exceeded (n={n} > {max_n} or m={m} > {max_m}); about {size} products of minors"
        )


@dataclass
class FiltrationResult:
    mu: tuple[int, ...]
    m: int
    dimension: int
    by_degree: dict
    basis: dict
    points: int


def _class_rank(columns: list[tuple], values, sampler: OrbitSampler, surplus: int) -> list[int]:
    """Pivot columns of one (degree, weight) block, evaluated at enough points."""
    need = len(columns) + surplus
    tables = sampler.ensure(need)
    grid = [[values(t, col) for col in columns] for t in tables]
    return bareiss_pivots(grid)


def filtration(
    mu: Sequence[int],
    m: int,
    rng: RandomSource,
    surplus: int = 20,
    max_n: int | None = None,
    max_m: int | None = None,
) -> FiltrationResult:
    """dim F_{m,mu}, the span of products of at most m maximal minors on the orbit closure.

    A basis of F_1 is extracted block by block from all maximal minors; since
    F_1 contains the constant minor, F_m is spanned by products of exactly m
    basis elements, which are again (degree, weight) homogeneous.  Each block
    is evaluated at (#columns + surplus) points of the open orbit.
    """
    mu = as_partition(mu)
    n = sum(mu)
    _check_caps(n, m, max_n, max_m)
    sampler = OrbitSampler(mu, rng)

    classes: dict = defaultdict(list)
    for label in combinations(range(1, n * n + 1), n):
        classes[minor_class(label, n)].append(label)

    basis1: list = []
    for key in sorted(classes):
        cols = classes[key]
        piv = _class_rank(cols, lambda t, lab: t.get(lab, 0), sampler, surplus)
        basis1.extend((key, cols[i]) for i in piv)

    if m <= 1:
        chosen = {(key, (lab,)) for key, lab in basis1} if m == 1 else set()
        if m == 0:
            chosen = {((0, (1,) * n), ())}
        return _summarise(mu, m, chosen, len(sampler.tables))

    prod_classes: dict = defaultdict(list)
    for combo in combinations_with_replacement(range(len(basis1)), m):
        key = (0, (0,) * n)
        for idx in combo:
            key = _add_class(key, basis1[idx][0])
        prod_classes[key].append(tuple(basis1[idx][1] for idx in combo))

    def value(table, labels):
        out = 1
        for lab in labels:
            v = table.get(lab)
            if not v:
                return 0
            out *= v
        return out

    chosen = set()
    for key in sorted(prod_classes):
        cols = prod_classes[key]
        piv = _class_rank(cols, value, sampler, surplus)
        chosen.update((key, cols[i]) for i in piv)
    return _summarise(mu, m, chosen, len(sampler.tables))


def _summarise(mu, m, chosen, points) -> FiltrationResult:
    by_degree: dict = defaultdict(int)
    basis: dict = defaultdict(list)
    for key, labels in chosen:
        by_degree[key[0]] += 1
        basis[key].append(labels)
    return FiltrationResult(
        mu, m, len(chosen), dict(sorted(by_degree.items())), {k: sorted(v) for k, v in basis.items()}, points
    )


def filtration_dimension(mu: Sequence[int], m: int, rng: RandomSource, **kw) -> int:
    return filtration(mu, m, rng, **kw).dimension


# ---- Weyl module dimensions ----------------------------------------------


def weyl_dimension(alpha: Sequence[int], n: int) -> int:
    """dim S_alpha(K^n) for a dominant weight alpha (any integers, weakly decreasing)."""
    a = list(alpha) + [0] * (n - len(alpha))
    if len(a) > n:
        if any(a[n:]):
            return 0
        a = a[:n]
    if any(x < y for x, y in zip(a, a[1:])):
        raise ValueError("weight is not dominant")
    num = 1
    den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= a[i] - a[j] + j - i
            den *= j - i
    return num // den


def ssyt_count(shape: Sequence[int], n: int) -> int:
    """Number of semistandard tableaux of the given shape with entries in 1..n."""
    shape = [x for x in shape if x > 0]
    if len(shape) > n:
        return 0

    def rows_above(prev: tuple[int, ...] | None, length: int):
        out = []

        def build(row: list[int]):
            j = len(row)
            if j == length:
                out.append(tuple(row))
                return
            lo = row[-1] if row else 1
            if prev is not None:
                lo = max(lo, prev[j] + 1)
            for v in range(lo, n + 1):
                build(row + [v])

        build([])
        return out

    from functools import lru_cache

    @lru_cache(maxsize=None)
    def count(level: int, prev: tuple[int, ...] | None) -> int:
        if level == len(shape):
            return 1
        return sum(count(level + 1, row) for row in rows_above(prev, shape[level]))

    return count(0, None)


def weyl_rectangle_dim(n: int, rows: int, cols: int, method: str = "tableaux") -> int:
    """dim of the Weyl module with rectangular highest weight (cols^rows) for GL_n."""
    if rows > n:
        return 0
    if rows == 0 or cols == 0:
        return 1
    if method == "tableaux":
        return ssyt_count([cols] * rows, n)
    if method == "formula":
        return weyl_dimension([cols] * rows, n)
    raise ValueError(f"unknown method {method!r}")


def rectangle_prediction(mu: Sequence[int], m: int, convention: str = "rows") -> int:
    """prod_i dim L_{(lambda_i)^m} with lambda = conjugate(mu).

    ``convention='rows'`` reads the rectangle as lambda_i rows of length m;
    ``'cols'`` uses the transpose (m rows of length lambda_i).
    """
    mu = as_partition(mu)
    n = sum(mu)
    lam = conjugate(mu)
    if convention == "rows":
        return prod(weyl_rectangle_dim(n, li, m) for li in lam)
    if convention == "cols":
        return prod(weyl_rectangle_dim(n, m, li) for li in lam)
    raise ValueError(f"unknown convention {convention!r}")


def conjecture_check(
    mu: Sequence[int], m: int, rng: RandomSource, convention: str = "rows", **kw
) -> dict:
    mu = as_partition(mu)
    dim = filtration_dimension(mu, m, rng, **kw)
    predicted = {c: rectangle_prediction(mu, m, c) for c in ("rows", "cols")}
    return {
        "mu": list(mu),
        "m": m,
        "filtration_dim": dim,
        "predicted": predicted[convention],
        "convention": convention,
        "match": dim == predicted[convention],
        "matching_conventions": sorted(c for c, p in predicted.items() if p == dim),
    }


# ---- equations of orbit closures -----------------------------------------


@dataclass(frozen=True)
class MinorCombination:
    """sum of coeff * X(rows | cols), an ordered minor of the generic matrix (0-based)."""

    name: str
    terms: tuple[tuple[int, tuple[int, ...], tuple[int, ...]], ...]

    def evaluate(self, N: ExactMatrix) -> Fraction:
        return sum((c * minor(N, rows, cols) for c, rows, cols in self.terms), Fraction(0))

    def to_polynomial(self) -> dict:
        """Expand into {monomial: coeff}; a monomial is a sorted tuple of (i, j), 1-based."""
        poly: dict = defaultdict(int)
        for c, rows, cols in self.terms:
            k = len(rows)
            for perm in permutations(range(k)):
                sign = 1
                for a in range(k):
                    for b in range(a + 1, k):
                        if perm[a] > perm[b]:
                            sign = -sign
                mono = tuple(sorted((rows[a] + 1, cols[perm[a]] + 1) for a in range(k)))
                poly[mono] += c * sign
        return {k: v for k, v in sorted(poly.items()) if v}

    def degree(self) -> int:
        return len(self.terms[0][1]) if self.terms else 0


def format_polynomial(poly: dict) -> str:
    if not poly:
        return "0"
    parts = []
    for mono, c in poly.items():
        body = "*".join(f"x{i}{j}" for i, j in mono) or "1"
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        parts.append(f"{sign} {body}" if mag == 1 else f"{sign} {mag}*{body}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def partial_trace_space(n: int, i: int, p: int) -> list[MinorCombination]:
    """Spanning set of V_{i,p}: sum over |J| = p-i of X(P,J | Q,J) for |P| = |Q| = i."""
    out = []
    for P in combinations(range(n), i):
        for Q in combinations(range(n), i):
            terms = []
            for J in combinations(range(n), p - i):
                if set(J) & set(P) or set(J) & set(Q):
                    continue
                terms.append((1, P + J, Q + J))
            if terms:
                name = f"V[{i},{p}](P={[x + 1 for x in P]},Q={[x + 1 for x in Q]})"
                out.append(MinorCombination(name, tuple(terms)))
    return out


def mu_index(mu: Sequence[int], i: int) -> int:
    """mu(i) = mu_1 + ... + mu_i - i + 1."""
    mu = as_partition(mu)
    padded = mu + (0,) * i
    return sum(padded[:i]) - i + 1


def orbit_equation_spaces(mu: Sequence[int]) -> list[MinorCombination]:
    mu = as_partition(mu)
    n = sum(mu)
    gens = []
    for p in range(1, n + 1):
        gens.extend(partial_trace_space(n, 0, p))
    for i in range(1, n + 1):
        p = mu_index(mu, i)
        if 1 <= i <= min(p, n - p):
            gens.extend(partial_trace_space(n, i, p))
    return gens


def cutout_check(mu: Sequence[int], rng: RandomSource, points: int = 30) -> dict:
    mu = as_partition(mu)
    n = sum(mu)
    gens = orbit_equation_spaces(mu)
    failures = []
    below = [nu for nu in partitions(n) if dominance_leq(nu, mu)]
    for nu in below:
        sub = rng.fork(f"cutout:{nu}")
        for _ in range(points):
            N = random_orbit_point(nu, sub, integral=True).matrix
            for g in gens:
                if g.evaluate(N) != 0:
                    failures.append({"nu": list(nu), "generator": g.name, "kind": "nonvanishing"})
                    break
    separated = {}
    for nu in partitions(n):
        if dominance_leq(nu, mu):
            continue
        J = jordan_matrix(nu)
        witness = next((g.name for g in gens if g.evaluate(J) != 0), None)
        separated[str(list(nu))] = witness
        if witness is None:
            failures.append({"nu": list(nu), "generator": None, "kind": "not separated"})
    return {
        "mu": list(mu),
        "generators": len(gens),
        "vanishing_orbits": [list(nu) for nu in below],
        "separating_witness": separated,
        "failures": failures,
        "pass": not failures,
    }
