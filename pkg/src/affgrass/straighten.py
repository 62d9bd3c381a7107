"""Shuffle relations, straightening to admissible coordinates, degree-one ideal
generators and the degree-two relations f_{R_2} f_S = f_phi f_{S'}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact import ExactMatrix, RandomSource, rank
from .schubert import evaluate_plucker, random_points, vanishing_criterion
from .weyl import (
    ChainElement,
    all_labels,
    bump,
    chain_element,
    enumerate_admissible,
    is_admissible,
    stratum_index,
    z_stratification,
)


def sort_with_sign(entries: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation and the sorted tuple; sign 0 on a repeat."""
    items = list(entries)
    if len(set(items)) < len(items):
        return 0, ()
    sign = 1
    # count inversions; tuples are short
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            if items[a] > items[b]:
                sign = -sign
    return sign, tuple(sorted(items))


@dataclass(frozen=True)
class ShuffleRelation:
    base: tuple[int, ...]
    level: int
    n: int
    terms: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def shifted(self) -> tuple[int, ...]:
        return tuple(x - self.n for x in self.base)

    def combined(self) -> dict:
        out: dict = {}
        for sign, lab in self.terms:
            out[lab] = out.get(lab, 0) + sign
        return {k: v for k, v in out.items() if v}

    def evaluate(self, table: dict) -> int | Fraction:
        return sum(sign * table.get(lab, 0) for sign, lab in self.terms)

    def to_json(self) -> dict:
        return {
            "base": list(self.base),
            "level": self.level,
            "terms": [{"sign": s, "tuple": list(t)} for s, t in self.terms],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def shuffle(base: Sequence[int], level: int, n: int, r: int | None = None) -> ShuffleRelation:
    """sh_I at level l: replace l entries of I by the entries n lower, keeping row positions."""
    base = tuple(base)
    r = len(base) if r is None else r
    if (
        len(base) != r
        or any(b <= a for a, b in zip(base, base[1:]))
        or base[0] < n + 1
        or base[-1] > r * n
        or not 1 <= level <= r
    ):
        raise ValueError("shuffle not defined")
    terms = []
    for J in combinations(range(r), level):
        new = list(base)
        for pos in J:
            new[pos] -= n
        sign, lab = sort_with_sign(new)
        if sign:
            terms.append((sign, lab))
    return ShuffleRelation(base, level, n, tuple(terms))


def all_shuffles(n: int, s: int) -> list[ShuffleRelation]:
    r = s * n
    out = []
    for base in combinations(range(n + 1, r * n + 1), r):
        for level in range(1, r + 1):
            out.append(shuffle(base, level, n, r))
    return out


def row_replacement_sum(A: ExactMatrix, B: ExactMatrix, level: int):
    from .exact import determinant

    m = A.rows
    total = Fraction(0)
    for J in combinations(range(m), level):
        data = [B.row(i) if i in J else A.row(i) for i in range(m)]
        total += determinant(ExactMatrix(data, m))
    return total


def column_replacement_sum(A: ExactMatrix, B: ExactMatrix, level: int):
    return row_replacement_sum(A.transpose(), B.transpose(), level)


@dataclass
class StraighteningResult:
    label: tuple[int, ...]
    expansion: dict
    certificate_points: int = 0
    verified: bool | None = None

    def to_json(self) -> dict:
        return {
            "input": list(self.label),
            "expansion": [
                {"coefficient": str(c), "tuple": list(t)} for t, c in sorted(self.expansion.items())
            ],
            "certificate_points": self.certificate_points,
            "verified": self.verified,
        }


class Straightener:
    """Straightening on X(w_s) for fixed (n, s), memoised per instance.

    Not thread-safe: keep one instance per task.
    """

    def __init__(self, n: int, s: int):
        self.n = n
        self.s = s
        self.r = s * n
        self.top = chain_element(n, s, 1)
        self._memo: dict = {}

    def vanishes(self, label: tuple[int, ...]) -> bool:
        return vanishing_criterion(label, self.top)

    def expand(self, label: Sequence[int]) -> dict:
        """p_label as {admissible label: coefficient} on X(w_s)."""
        label = tuple(label)
        if self.vanishes(label):
            raise ValueError("coordinate vanishes on X(w_s)")
        return dict(self._expand(label))

    def _expand(self, label: tuple[int, ...]) -> dict:
        if label in self._memo:
            return self._memo[label]
        n, r = self.n, self.r
        if is_admissible(label, n, r):
            result = {label: Fraction(1)}
            self._memo[label] = result
            return result
        ell = next(j for j in range(1, r) if label[j] - label[j - 1] > n)
        raised = tuple(x + n if j < ell else x for j, x in enumerate(label))
        rel = shuffle(raised, ell, n, r)
        # sh = 0 and the J = first-ell term is exactly +p_label
        self_coeff = 0
        rest: dict = {}
        for sign, lab in rel.terms:
            if lab == label:
                self_coeff += sign
            else:
                rest[lab] = rest.get(lab, 0) + sign
        if self_coeff == 0:
            raise ArithmeticError(f"shuffle for {label} does not isolate p_label")
        result: dict = {}
        for lab, c in sorted(rest.items(), reverse=True):
            if c == 0 or self.vanishes(lab):
                continue
            if lab <= label:
                raise ArithmeticError(f"straightening of {label} produced non-larger term {lab}")
            for adm, a in self._expand(lab).items():
                result[adm] = result.get(adm, 0) - Fraction(c, self_coeff) * a
        result = {k: v for k, v in result.items() if v}
        self._memo[label] = result
        return result


def straighten(
    label: Sequence[int],
    n: int,
    s: int,
    rng: RandomSource | None = None,
    points: int | None = None,
    straightener: Straightener | None = None,
) -> StraighteningResult:
    """Expand p_label on X(w_s) in admissible coordinates, optionally certified at random points."""
    st = straightener or Straightener(n, s)
    label = tuple(label)
    expansion = st.expand(label)
    result = StraighteningResult(label, expansion)
    if rng is not None:
        top = st.top
        count = points if points is not None else top.dimension + 5
        pts = random_points(top, count, rng)
        result.certificate_points = count
        result.verified = all(
            evaluate_plucker(pt, label) == sum(c * evaluate_plucker(pt, lab) for lab, c in expansion.items())
            for pt in pts
        )
    return result


def restrict_expansion(expansion: dict, phi: ChainElement) -> dict:
    return {lab: c for lab, c in expansion.items() if not vanishing_criterion(lab, phi)}


def degree_one_ideal_generators(phi: ChainElement, straightener: Straightener | None = None) -> list[dict]:
    """Linear forms {label: coeff} spanning the degree-one ideal of X(phi) in Gr(r, V_s)."""
    st = straightener or Straightener(phi.n, phi.s)
    gens = []
    for lab in all_labels(phi.n, phi.r):
        if vanishing_criterion(lab, phi):
            gens.append({lab: Fraction(1)})
        elif not is_admissible(lab, phi.n, phi.r):
            form = {lab: Fraction(1)}
            for adm, c in restrict_expansion(st.expand(lab), phi).items():
                form[adm] = form.get(adm, 0) - c
            gens.append({k: v for k, v in form.items() if v})
    return gens


def form_to_json(form: dict) -> list:
    return [{"coefficient": str(c), "tuple": list(t)} for t, c in sorted(form.items())]


def degree_two_check(
    phi: ChainElement, S: Sequence[int], rng: RandomSource, points: int = 30, cap: int | None = None
) -> bool:
    """Check f_{R_2} f_S = f_phi f_{S'} at random points of X°(phi)."""
    S = tuple(S)
    strat = z_stratification(phi, cap)
    if S not in strat.z:
        raise ValueError(f"{S} is not in Z(phi)")
    if strat.r2 is None:
        raise ValueError("phi has no second admissible tuple")
    j = stratum_index(phi, S)
    S2 = bump(S, j)
    for pt in random_points(phi, points, rng):
        lhs = evaluate_plucker(pt, strat.r2) * evaluate_plucker(pt, S)
        rhs = evaluate_plucker(pt, phi.tuple) * evaluate_plucker(pt, S2)
        if lhs != rhs:
            return False
    return True


def bumped_lands_correctly(phi: ChainElement, S: tuple[int, ...], chain: list[ChainElement]) -> bool:
    """S' is admissible and lies in Z_{j+1}(phi), or in A_{phi'} when j = r - i."""
    j = stratum_index(phi, S)
    S2 = bump(S, j)
    if not is_admissible(S2, phi.n, phi.r):
        return False
    if j < phi.r - phi.group:
        strat = z_stratification(phi)
        return S2 in strat.strata.get(j + 1, ())
    nxt = chain[phi.position]  # phi' is the next chain element
    return S2 in enumerate_admissible(nxt)


# ---- shuffle conjecture probe --------------------------------------------


def t_shift(columns: list[list], n: int) -> list[list]:
    """Apply t (row label g -> g + n, truncated at rn) to each column vector."""
    return [[0] * n + col[:-n] for col in columns]


def is_t_stable(columns: list[list], n: int) -> bool:
    k = rank([list(r) for r in zip(*columns)])
    both = columns + t_shift(columns, n)
    return rank([list(r) for r in zip(*both)]) == k


def tau_stable_subsets(n: int, r: int) -> list[tuple[int, ...]]:
    top = r * n
    return [
        I
        for I in combinations(range(1, top + 1), r)
        if all(x + n > top or x + n in I for x in I)
    ]


def random_t_stable(n: int, r: int, rng: RandomSource, bound: int = 5) -> list[list[int]]:
    """g . E_I for a random tau-stable I and a random t-equivariant automorphism g."""
    I = rng.choice(tau_stable_subsets(n, r))
    blocks = []
    while True:
        g0 = [rng.integers(n, bound) for _ in range(n)]
        if rank(g0) == n:
            break
    blocks.append(g0)
    for _ in range(1, r):
        blocks.append([rng.integers(n, bound) for _ in range(n)])
    top = r * n
    cols = []
    for label in I:
        b, j = divmod(label - 1, n)
        col = [0] * top
        for a in range(b, r):
            blk = blocks[a - b]
            for i in range(n):
                col[a * n + i] = blk[i][j]
        cols.append(col)
    return cols


def random_subspace(n: int, r: int, rng: RandomSource, bound: int = 5) -> list[list[int]]:
    top = r * n
    while True:
        cols = [rng.integers(top, bound) for _ in range(r)]
        if rank([list(x) for x in zip(*cols)]) == r:
            return cols


def shuffle_conjecture_probe(n: int, s: int, rng: RandomSource, samples: int = 200) -> dict:
    """Classify sampled subspaces of V_s by 'all shuffles vanish' and compare with t-stability."""
    from .schubert import maximal_minor_table

    r = s * n
    rels = all_shuffles(n, s)
    misclassified = []
    counts = {"random": 0, "t_stable": 0}
    for family, sampler in (("random", random_subspace), ("t_stable", random_t_stable)):
        sub = rng.fork(family)
        for _ in range(samples):
            cols = sampler(n, r, sub)
            table = maximal_minor_table([list(x) for x in zip(*cols)], r)
            predicted = all(rel.evaluate(table) == 0 for rel in rels)
            actual = is_t_stable(cols, n)
            counts[family] += 1
            if predicted != actual:
                misclassified.append(
                    {"family": family, "columns": cols, "shuffles_vanish": predicted, "t_stable": actual}
                )
    return {
        "n": n,
        "s": s,
        "relations": len(rels),
        "samples": counts,
        "misclassified": misclassified,
        "pass": not misclassified,
    }
