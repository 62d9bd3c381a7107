"""Integer partitions as plain tuples of positive parts, largest first."""

from __future__ import annotations

from functools import lru_cache
from itertools import accumulate
from typing import Iterable


def as_partition(parts: Iterable[int]) -> tuple[int, ...]:
    """Validate and normalise (trailing zeros dropped)."""
    p = tuple(int(x) for x in parts)
    if any(x < 0 for x in p) or any(a < b for a, b in zip(p, p[1:])):
        raise ValueError(f"not a partition: {p}")
    return tuple(x for x in p if x > 0)


def conjugate(mu: tuple[int, ...]) -> tuple[int, ...]:
    if not mu:
        return ()
    return tuple(sum(1 for x in mu if x > j) for j in range(mu[0]))


@lru_cache(maxsize=None)
def partitions(n: int, largest: int | None = None) -> tuple[tuple[int, ...], ...]:
    """All partitions of n in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def dominance_leq(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """a <= b in dominance order (partial sums of a never exceed those of b)."""
    if sum(a) != sum(b):
        raise ValueError("partitions of different sizes")
    length = max(len(a), len(b))
    pa = list(accumulate(a + (0,) * (length - len(a))))
    pb = list(accumulate(b + (0,) * (length - len(b))))
    return all(x <= y for x, y in zip(pa, pb))


def n_statistic(mu: tuple[int, ...]) -> int:
    """n(mu) = sum (i-1) mu_i."""
    return sum(i * x for i, x in enumerate(mu))


def padded(mu: tuple[int, ...], length: int) -> tuple[int, ...]:
    return mu + (0,) * (length - len(mu))
