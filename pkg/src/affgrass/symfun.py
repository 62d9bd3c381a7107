"""Tableaux, charge, Kostka-Foulkes polynomials, symmetric group characters and
the graded quotient algebra K[y_1..y_n]/(C_mu).

Conventions
-----------
kostka_foulkes(lam, mu) is sum_T q^charge(T) over semistandard tableaux of
shape lam and content mu (so K_{lam,lam} = 1 and K_{(n),(1^n)} = q^{n(n-1)/2}).
modified_kostka(lam, mu) = q^{n(mu)} K_{lam,mu}(1/q) is the cocharge version,
again a polynomial with nonnegative exponents.

The ring C[y]/(C_mu) is the torus-fixed diagonal slice of the orbit closure
of mu; as a graded S_n-module it is the Garsia-Procesi ring of conj(mu), so
graded_multiplicity(mu, lam) = modified_kostka(lam, conj(mu)).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import factorial, prod
from typing import Sequence

from .exact import rref
from .partitions import as_partition, conjugate, n_statistic, partitions

MAX_DEGREE = 10
MAX_SN = 6


# ---- q-polynomials --------------------------------------------------------


@dataclass(frozen=True)
class QPolynomial:
    coeffs: tuple[int, ...] = ()

    @classmethod
    def from_dict(cls, terms: dict) -> "QPolynomial":
        if any(e < 0 for e, c in terms.items() if c):
            raise ValueError("negative exponent")
        top = max((e for e, c in terms.items() if c), default=-1)
        return cls(tuple(terms.get(e, 0) for e in range(top + 1)))

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "QPolynomial":
        return cls.from_dict({e: c})

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        k = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (k - len(self.coeffs))
        b = other.coeffs + (0,) * (k - len(other.coeffs))
        return QPolynomial(tuple(x + y for x, y in zip(a, b)))

    def coefficient(self, e: int) -> int:
        return self.coeffs[e] if 0 <= e < len(self.coeffs) else 0

    def at(self, q) -> int | Fraction:
        return sum(c * q**e for e, c in enumerate(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def reversed_by(self, shift: int) -> "QPolynomial":
        """q^shift * P(1/q)."""
        if self.degree > shift:
            raise ValueError("reversal would produce negative exponents")
        return QPolynomial.from_dict({shift - e: c for e, c in enumerate(self.coeffs)})

    def to_json(self) -> dict:
        return {"poly": list(self.coeffs)}

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}{mono}")
        return " + ".join(parts)


ZERO = QPolynomial()


# ---- tableaux and charge -------------------------------------------------


@dataclass(frozen=True)
class Tableau:
    rows: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    @property
    def content(self) -> tuple[int, ...]:
        c = Counter(x for r in self.rows for x in r)
        top = max(c, default=0)
        return tuple(c.get(i, 0) for i in range(1, top + 1))

    def is_semistandard(self) -> bool:
        for r in self.rows:
            if any(a > b for a, b in zip(r, r[1:])):
                return False
        for upper, lower in zip(self.rows, self.rows[1:]):
            if len(lower) > len(upper) or any(a >= b for a, b in zip(upper, lower)):
                return False
        return True


def semistandard_tableaux(shape: Sequence[int], content: Sequence[int]) -> list[Tableau]:
    """All SSYT of the given shape and content, adding letters as horizontal strips."""
    shape = as_partition(shape)
    content = tuple(content)
    if sum(shape) != sum(content):
        return []
    out = []

    def grow(rows: list[list[int]], letter: int):
        if letter > len(content):
            if tuple(len(r) for r in rows) == shape:
                out.append(Tableau(tuple(tuple(r) for r in rows)))
            return
        cur = [len(r) for r in rows] + [0] * (len(shape) - len(rows))

        def place(i: int, left: int, new: list[int]):
            if i == len(shape):
                if left == 0:
                    nxt = [list(r) for r in rows] + [[] for _ in range(len(shape) - len(rows))]
                    for k, extra in enumerate(new):
                        nxt[k].extend([letter] * extra)
                    while nxt and not nxt[-1]:
                        nxt.pop()
                    grow(nxt, letter + 1)
                return
            # horizontal strip: row i may extend up to the old length of row i-1
            limit = shape[i] - cur[i]
            if i > 0:
                limit = min(limit, cur[i - 1] - cur[i])
            for extra in range(min(limit, left), -1, -1):
                place(i + 1, left - extra, new + [extra])

        place(0, content[letter - 1], [])

    grow([], 1)
    return out


def reading_word(T: Tableau) -> tuple[int, ...]:
    """Rows read left to right, from the bottom row up."""
    return tuple(x for r in reversed(T.rows) for x in r)


def _is_partition_content(content: Sequence[int]) -> bool:
    return all(c > 0 for c in content) and all(a >= b for a, b in zip(content, content[1:]))


def word_charge(word: Sequence[int]) -> int:
    """Charge of a word with partition content.

    Standard subwords are extracted by scanning leftward cyclically for
    1, 2, ...; within a subword the index goes up by one each time the scan
    wraps around (the letter r+1 sits to the right of r).
    """
    word = list(word)
    content = Counter(word)
    top = max(word, default=0)
    if not _is_partition_content([content.get(i, 0) for i in range(1, top + 1)]):
        raise ValueError("content must be a partition")
    remaining = list(range(len(word)))  # positions still unused
    total = 0
    while remaining:
        letters = [word[p] for p in remaining]
        k = max(letters)
        pos_in = {}
        # start at the right end, find 1
        start = max(p for p in remaining if word[p] == 1)
        pos_in[1] = start
        index = 0
        cur = start
        for letter in range(2, k + 1):
            left = [p for p in remaining if word[p] == letter and p < cur]
            if left:
                cur = max(left)
            else:
                cur = max(p for p in remaining if word[p] == letter)
                index += 1
            total += index
            pos_in[letter] = cur
        used = set(pos_in.values())
        remaining = [p for p in remaining if p not in used]
    return total


def charge(T: Tableau) -> int:
    return word_charge(reading_word(T))


def kostka_foulkes(lam: Sequence[int], mu: Sequence[int]) -> QPolynomial:
    lam, mu = as_partition(lam), as_partition(mu)
    terms: dict = {}
    for T in semistandard_tableaux(lam, mu):
        c = charge(T)
        terms[c] = terms.get(c, 0) + 1
    return QPolynomial.from_dict(terms)


def modified_kostka(lam: Sequence[int], mu: Sequence[int]) -> QPolynomial:
    """q^{n(mu)} K_{lam,mu}(1/q), the cocharge generating function."""
    mu = as_partition(mu)
    return kostka_foulkes(lam, mu).reversed_by(n_statistic(mu))


# ---- symmetric group characters ------------------------------------------


@dataclass(frozen=True)
class SnClassFunction:
    n: int
    values: tuple[tuple[tuple[int, ...], int | Fraction], ...]

    def __getitem__(self, cls: Sequence[int]):
        key = as_partition(cls)
        for k, v in self.values:
            if k == key:
                return v
        raise KeyError(key)

    def as_dict(self) -> dict:
        return dict(self.values)

    def to_json(self) -> dict:
        return {"classes": [list(k) for k, _ in self.values], "values": [str(v) for _, v in self.values]}


def class_order(n: int) -> list[tuple[int, ...]]:
    """Cycle types from (1^n) up to (n)."""
    return list(reversed(partitions(n)))


def centralizer_size(rho: Sequence[int]) -> int:
    c = Counter(rho)
    return prod(k**m * factorial(m) for k, m in c.items())


def class_size(rho: Sequence[int]) -> int:
    rho = as_partition(rho)
    return factorial(sum(rho)) // centralizer_size(rho)


@lru_cache(maxsize=None)
def _mn(beta: tuple[int, ...], rho: tuple[int, ...]) -> int:
    """Murnaghan-Nakayama on a beta-set: remove border strips of sizes rho."""
    if not rho:
        return 1
    k, rest = rho[0], rho[1:]
    bset = set(beta)
    total = 0
    for b in beta:
        if b - k >= 0 and b - k not in bset:
            height = sum(1 for x in beta if b - k < x < b)
            new = tuple(sorted((bset - {b}) | {b - k}, reverse=True))
            total += (-1) ** height * _mn(new, rest)
    return total


def character_value(lam: Sequence[int], rho: Sequence[int]) -> int:
    lam, rho = as_partition(lam), as_partition(rho)
    if sum(lam) != sum(rho):
        raise ValueError("partitions of different sizes")
    L = len(lam)
    beta = tuple(lam[i] + L - 1 - i for i in range(L))
    return _mn(beta, rho)


def sn_character(lam: Sequence[int], cap: int = MAX_SN) -> SnClassFunction:
    lam = as_partition(lam)
    n = sum(lam)
    if n > cap:
        raise ValueError(f"n = {n} exceeds the character cap {cap}")
    return SnClassFunction(n, tuple((rho, character_value(lam, rho)) for rho in class_order(n)))


def inner_product(f: SnClassFunction, g: SnClassFunction) -> Fraction:
    fd, gd = f.as_dict(), g.as_dict()
    total = sum(class_size(rho) * Fraction(fd[rho]) * gd[rho] for rho in fd)
    return total / factorial(f.n)


# ---- the quotient C[y]/(C_mu) ---------------------------------------------


def d_statistic(mu: Sequence[int], k: int) -> int:
    """d_k(mu) = mu_{n-k+1} + ... + mu_n, mu padded with zeros to length n."""
    mu = as_partition(mu)
    n = sum(mu)
    p = mu + (0,) * (n - len(mu))
    return sum(p[n - k:])


def elementary(S: Sequence[int], r: int, n: int) -> dict:
    """e_r in the variables y_i, i in S (0-based), as {exponent vector: 1}."""
    out = {}
    for T in combinations(S, r):
        e = [0] * n
        for i in T:
            e[i] = 1
        out[tuple(e)] = 1
    return out


@dataclass(frozen=True)
class SymGenerator:
    subset: tuple[int, ...]
    r: int
    poly: tuple[tuple[tuple[int, ...], int], ...]

    @property
    def degree(self) -> int:
        return self.r

    def name(self) -> str:
        return f"e_{self.r}({','.join(str(i + 1) for i in self.subset)})"


def c_mu_generators(mu: Sequence[int]) -> list[SymGenerator]:
    """e_r(S) for all S with |S| = k and k >= r > k - d_k(mu)."""
    mu = as_partition(mu)
    n = sum(mu)
    out = []
    for k in range(1, n + 1):
        lo = k - d_statistic(mu, k)
        for S in combinations(range(n), k):
            for r in range(max(lo + 1, 1), k + 1):
                out.append(SymGenerator(S, r, tuple(sorted(elementary(S, r, n).items()))))
    return out


def monomials(n: int, d: int) -> list[tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


@dataclass
class GradedPiece:
    degree: int
    monomials: list
    ideal_rows: list
    pivots: list
    complement: list

    @property
    def dimension(self) -> int:
        return len(self.complement)


def quotient_pieces(mu: Sequence[int], max_degree: int = MAX_DEGREE, n_cap: int = 5) -> list[GradedPiece]:
    """Degree-by-degree reduced bases of the ideal (C_mu) and quotient complements."""
    mu = as_partition(mu)
    n = sum(mu)
    if n > n_cap or max_degree > MAX_DEGREE:
        raise ValueError(f"caps exceeded (n={n}, max_degree={max_degree})")
    gens = c_mu_generators(mu)
    pieces = []
    prev_rows: list[dict] = []
    for d in range(max_degree + 1):
        mons = monomials(n, d)
        index = {m: j for j, m in enumerate(mons)}
        cand = []
        for row in prev_rows:
            for i in range(n):
                v = [0] * len(mons)
                for m, c in row.items():
                    mm = list(m)
                    mm[i] += 1
                    v[index[tuple(mm)]] += c
                cand.append(v)
        for g in gens:
            if g.degree == d:
                v = [0] * len(mons)
                for m, c in g.poly:
                    v[index[m]] += c
                cand.append(v)
        red, piv = rref(cand) if cand else ([], [])
        complement = [mons[j] for j in range(len(mons)) if j not in set(piv)]
        pieces.append(GradedPiece(d, mons, red, piv, complement))
        prev_rows = [{mons[j]: c for j, c in enumerate(r) if c} for r in red]
    return pieces


def _permute(m: tuple[int, ...], sigma: tuple[int, ...]) -> tuple[int, ...]:
    """sigma sends y_i to y_sigma(i)."""
    out = [0] * len(m)
    for i, e in enumerate(m):
        out[sigma[i]] += e
    return tuple(out)


def representative(rho: Sequence[int]) -> tuple[int, ...]:
    """A permutation (as a tuple i -> sigma(i)) of cycle type rho."""
    sigma = []
    start = 0
    for k in rho:
        sigma.extend(start + (j + 1) % k for j in range(k))
        start += k
    return tuple(sigma)


def piece_trace(piece: GradedPiece, sigma: tuple[int, ...]) -> Fraction:
    index = {m: j for j, m in enumerate(piece.monomials)}
    pivot_row = {p: row for p, row in zip(piece.pivots, piece.ideal_rows)}
    total = Fraction(0)
    for m in piece.complement:
        image = index[_permute(m, sigma)]
        j = index[m]
        if image in pivot_row:
            # image = -(nonpivot part of its row) modulo the ideal
            total -= pivot_row[image][j]
        elif image == j:
            total += 1
    return total


def b_mu_graded_character(mu: Sequence[int], max_degree: int = MAX_DEGREE) -> list[SnClassFunction]:
    mu = as_partition(mu)
    n = sum(mu)
    reps = {rho: representative(rho) for rho in class_order(n)}
    out = []
    for piece in quotient_pieces(mu, max_degree):
        vals = []
        for rho in class_order(n):
            t = piece_trace(piece, reps[rho])
            vals.append((rho, int(t) if t.denominator == 1 else t))
        out.append(SnClassFunction(n, tuple(vals)))
    return out


def graded_dimensions(mu: Sequence[int], max_degree: int = MAX_DEGREE) -> list[int]:
    return [p.dimension for p in quotient_pieces(mu, max_degree)]


def graded_multiplicity(
    mu: Sequence[int], lam: Sequence[int], max_degree: int = MAX_DEGREE, characters: list | None = None
) -> QPolynomial:
    """r_{mu,lam}(q) = sum_d <char of degree d piece, chi^lam> q^d."""
    chars = characters if characters is not None else b_mu_graded_character(mu, max_degree)
    chi = sn_character(lam)
    terms = {}
    for d, f in enumerate(chars):
        a = inner_product(f, chi)
        if a.denominator != 1:
            raise ArithmeticError("non-integral multiplicity")
        terms[d] = int(a)
    return QPolynomial.from_dict(terms)


INDEXINGS = {
    # which Kostka-Foulkes polynomial is compared with graded_multiplicity(mu, lam)
    "cocharge-conj": lambda mu, lam: modified_kostka(lam, conjugate(mu)),
    "charge-conj": lambda mu, lam: kostka_foulkes(lam, conjugate(mu)),
    "cocharge-same": lambda mu, lam: modified_kostka(lam, mu),
    "charge-same": lambda mu, lam: kostka_foulkes(lam, mu),
}


def oracle_pair(n: int, max_degree: int = MAX_DEGREE) -> dict:
    """Compare graded multiplicities with Kostka-Foulkes polynomials under each indexing."""
    results = {name: [] for name in INDEXINGS}
    for mu in partitions(n):
        chars = b_mu_graded_character(mu, max_degree)
        for lam in partitions(n):
            r = graded_multiplicity(mu, lam, characters=chars)
            for name, f in INDEXINGS.items():
                if f(mu, lam) != r:
                    results[name].append({"mu": list(mu), "lam": list(lam), "multiplicity": r.to_json()})
    passing = sorted(name for name, bad in results.items() if not bad)
    return {"n": n, "mismatches": {k: len(v) for k, v in results.items()}, "passing": passing, "details": results}


# ---- level-one identity ----------------------------------------------------


def level_one_weights(n: int) -> list[tuple[int, ...]]:
    """Dominant alpha with sum 0 and alpha_n >= -1, listed via lam = alpha + (1^n)."""
    return [tuple(x - 1 for x in (lam + (0,) * (n - len(lam)))) for lam in partitions(n)]


def level_one_prediction(mu: Sequence[int], max_degree: int = 6) -> list[int]:
    """sum over level-one alpha of [q^d] r_{mu, conj(alpha + 1)}(q) * dim S_alpha(K^n)."""
    from .nilpotent import weyl_dimension

    mu = as_partition(mu)
    n = sum(mu)
    chars = b_mu_graded_character(mu, max_degree)
    out = [0] * (max_degree + 1)
    for alpha in level_one_weights(n):
        lam = as_partition(x + 1 for x in alpha)
        r = graded_multiplicity(mu, conjugate(lam), characters=chars)
        # S_alpha and S_{alpha+1} differ by a determinant twist
        dim = weyl_dimension(lam, n)
        for d in range(max_degree + 1):
            out[d] += r.coefficient(d) * dim
    return out


def level_one_check(mu: Sequence[int], max_degree: int, rng) -> dict:
    from .nilpotent import filtration

    mu = as_partition(mu)
    n = sum(mu)
    if n > 3:
        raise ValueError("level-one check is limited to n <= 3")
    f1 = filtration(mu, 1, rng)
    observed = [f1.by_degree.get(d, 0) for d in range(max_degree + 1)]
    predicted = level_one_prediction(mu, max_degree)
    per_degree = [
        {"degree": d, "filtration_dim": a, "predicted": b, "match": a == b}
        for d, (a, b) in enumerate(zip(observed, predicted))
    ]
    return {
        "mu": list(mu),
        "max_degree": max_degree,
        "convention": "cocharge-conj",
        "per_degree": per_degree,
        "pass": all(x["match"] for x in per_degree),
    }
