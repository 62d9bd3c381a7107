"""Index-tuple combinatorics for the Schubert varieties inside X(w_s).

Plücker labels are increasing r-tuples of 1-based row indices with r = s*n.
The trivial tail (entries j > r equal to j + rn - r) is never stored.
Componentwise comparison of tuples is the Bruhat order; a coordinate p_S is
nonzero on X(phi) exactly when S >= phi componentwise.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations

DEFAULT_ENUM_CAP = int(os.environ.get("AFFGRASS_ENUM_CAP", "200000"))


@dataclass(frozen=True)
class ChainElement:
    """One tau_l of the reduced chain w_s = tau_1 > ... > tau_{r(n-1)+1} = id.

    ``group``/``slot`` are the (i, k) with tau_l = phi_{ik}, normalised so that
    k < n, except for the identity which is stored as (r, n).
    """

    n: int
    s: int
    position: int
    group: int
    slot: int
    tuple: tuple[int, ...]

    @property
    def r(self) -> int:
        return self.s * self.n

    @property
    def is_identity(self) -> bool:
        return self.position == self.r * (self.n - 1) + 1

    @property
    def dimension(self) -> int:
        return self.r * (self.n - 1) + 1 - self.position

    def to_json(self) -> dict:
        return {
            "position": self.position,
            "group": self.group,
            "slot": self.slot,
            "tuple": list(self.tuple),
        }


def index_tuple_of_weyl(c: tuple[int, ...], s: int) -> tuple[int, ...]:
    """Truncated I_w for a renormalised coset representative w = (c_1..c_n).

    I_w = {i + c_i n + k n : k >= 0}; the result lists its elements <= rn.
    """
    n = len(c)
    r = s * n
    if sum(c) != s * (n - 1) * n:
        raise ValueError("not a coset representative: coordinates must sum to s(n-1)n")
    top = r * n
    elems = set()
    for i, ci in enumerate(c, start=1):
        x = i + ci * n
        if x < 1:
            raise ValueError("coordinate outside X(w_s)")
        while x <= top:
            elems.add(x)
            x += n
    out = tuple(sorted(elems))
    if len(out) != r:
        raise ValueError("coordinate outside X(w_s)")
    return out


def weyl_of_index_tuple(entries: tuple[int, ...], n: int, s: int) -> tuple[int, ...]:
    """Inverse of :func:`index_tuple_of_weyl`.  Rejects sets that are not tau-stable."""
    r = s * n
    top = r * n
    full = set(entries) | set(range(top + 1, top + n + 1))
    for x in entries:
        if x + n not in full:
            raise ValueError("not a coset representative")
    c = []
    for i in range(1, n + 1):
        smallest = min(x for x in full if (x - i) % n == 0)
        c.append((smallest - i) // n)
    return tuple(c)


def virtual_cardinality(added: set[int] | frozenset[int], removed: set[int] | frozenset[int]) -> int:
    """vcard of I = (Z_+ minus ``removed``) union ``added``.

    ``added`` must lie in Z_{<=0} and ``removed`` in Z_+.
    """
    if any(x >= 1 for x in added) or any(x < 1 for x in removed):
        raise ValueError("added elements must be <= 0 and removed elements >= 1")
    return len(added) - len(removed)


def weyl_difference_sets(c: tuple[int, ...]) -> tuple[frozenset[int], frozenset[int]]:
    """Describe I_w for w = (c_1..c_n) (not renormalised) by its two finite differences from Z_+."""
    n = len(c)
    # residue class of i starts at i + c_i n and continues upward in steps of n
    start = {i % n: i + ci * n for i, ci in enumerate(c, start=1)}
    lo = min(start.values())
    hi = max(start.values())
    members = {x for x in range(min(lo, 1), max(hi, 1) + 1) if x >= start[x % n]}
    added = frozenset(x for x in members if x <= 0)
    removed = frozenset(x for x in range(1, max(hi, 1) + 1) if x not in members)
    return added, removed


def _group_slot(position: int, n: int, r: int) -> tuple[int, int]:
    if position == r * (n - 1) + 1:
        return r, n
    return (position - 1) // (n - 1) + 1, (position - 1) % (n - 1) + 1


def chain_tuple(n: int, r: int, i: int, k: int) -> tuple[int, ...]:
    head = [(i - 1) * n + 1 + k - i + m * n for m in range(r - i + 1)]
    tail = list(range(r * n + 2 - i, r * n + 1))
    return tuple(head + tail)


def reduced_chain(n: int, s: int) -> list[ChainElement]:
    if n < 2 or s < 1:
        raise ValueError("need n >= 2 and s >= 1")
    r = s * n
    chain = []
    for pos in range(1, r * (n - 1) + 2):
        i, k = _group_slot(pos, n, r)
        chain.append(ChainElement(n, s, pos, i, k, chain_tuple(n, r, i, k)))
    return chain


def chain_element(n: int, s: int, position: int) -> ChainElement:
    r = s * n
    if not 1 <= position <= r * (n - 1) + 1:
        raise ValueError("chain position out of range")
    i, k = _group_slot(position, n, r)
    return ChainElement(n, s, position, i, k, chain_tuple(n, r, i, k))


def dominates(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """Componentwise a >= b."""
    return all(x >= y for x, y in zip(a, b))


def is_admissible(entries: tuple[int, ...], n: int, r: int) -> bool:
    if any(b - a > n for a, b in zip(entries, entries[1:])):
        return False
    # gap to the first implicit tail entry rn + 1
    return r * n + 1 - entries[-1] <= n


def all_labels(n: int, r: int) -> list[tuple[int, ...]]:
    """Every increasing r-tuple in [1, rn]."""
    return list(combinations(range(1, r * n + 1), r))


def _check_cap(n: int, r: int, cap: int | None) -> None:
    cap = DEFAULT_ENUM_CAP if cap is None else cap
    if n**r > cap:
        raise ValueError(f"enumeration too large: n^r = {n**r} exceeds cap {cap}")


def enumerate_admissible(phi: ChainElement, cap: int | None = None) -> list[tuple[int, ...]]:
    """The set A_phi: admissible S >= phi with entries <= rn, in lexicographic order."""
    n, r = phi.n, phi.r
    _check_cap(n, r, cap)
    lower = phi.tuple
    top = r * n
    out: list[tuple[int, ...]] = []

    def extend(suffix: list[int]) -> None:
        j = r - len(suffix) - 1
        if j < 0:
            out.append(tuple(suffix))
            return
        nxt = suffix[0]
        for v in range(max(lower[j], nxt - n), nxt):
            extend([v] + suffix)

    for last in range(max(lower[-1], top + 1 - n), top + 1):
        extend([last])
    out.sort()
    return out


@dataclass(frozen=True)
class ZStratification:
    z: tuple[tuple[int, ...], ...]
    strata: dict
    r2: tuple[int, ...] | None


def stratum_index(phi: ChainElement, S: tuple[int, ...]) -> int:
    """Largest j (1-based) with s_j > phi(j), or 0."""
    j = 0
    for idx, (a, b) in enumerate(zip(S, phi.tuple), start=1):
        if a > b:
            j = idx
    return j


def z_stratification(phi: ChainElement, cap: int | None = None) -> ZStratification:
    adm = enumerate_admissible(phi, cap)
    pos = phi.r + 1 - phi.group  # 1-based slot fixed on Z(phi)
    z = tuple(S for S in adm if S[pos - 1] == phi.tuple[pos - 1])
    strata: dict[int, list] = {}
    for S in z:
        strata.setdefault(stratum_index(phi, S), []).append(S)
    r2 = adm[1] if len(adm) > 1 else None
    return ZStratification(z, {j: tuple(v) for j, v in sorted(strata.items())}, r2)


def predicted_count(phi: ChainElement) -> int:
    """Closed-form #A_phi: n^{r-i}(n-k+1) for phi = phi_{ik}."""
    return phi.n ** (phi.r - phi.group) * (phi.n - phi.slot + 1)


def count_formulas(n: int, s: int, cap: int | None = None) -> list[dict]:
    rows = []
    for phi in reduced_chain(n, s):
        rows.append(
            {
                "position": phi.position,
                "group": phi.group,
                "slot": phi.slot,
                "tuple": list(phi.tuple),
                "enumerated": len(enumerate_admissible(phi, cap)),
                "predicted": predicted_count(phi),
            }
        )
    return rows


def bump(S: tuple[int, ...], j: int) -> tuple[int, ...]:
    """S' : entry j+1 (1-based) increased by one."""
    out = list(S)
    out[j] += 1
    return tuple(out)
