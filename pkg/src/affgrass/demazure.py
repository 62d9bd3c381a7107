"""Certify that the admissible coordinates form a basis of H^0(X(phi), L_0).

Independence is certified by exact rank of an evaluation matrix (points x
admissible labels) at random points of X°(phi).  Full column rank at any set
of points proves independence; a deficit comes back with a kernel vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exact import RandomSource, nullspace, rank
from .schubert import plucker_table, random_points, vanishing_criterion
from .weyl import ChainElement, all_labels, enumerate_admissible


@dataclass
class IndependenceCertificate:
    phi: ChainElement
    tuples: list
    points: int
    rank: int
    kernel_witness: list | None = None
    spanning: bool | None = None
    evaluation: list = field(default_factory=list, repr=False)

    @property
    def expected(self) -> int:
        return len(self.tuples)

    @property
    def valid(self) -> bool:
        return self.rank == self.expected

    def to_json(self) -> dict:
        out = {
            "phi": self.phi.position,
            "tuples": [list(t) for t in self.tuples],
            "rank": self.rank,
            "expected": self.expected,
            "valid": self.valid,
        }
        if self.spanning is not None:
            out["spanning"] = self.spanning
        if self.kernel_witness is not None:
            out["kernel_witness"] = [str(c) for c in self.kernel_witness]
        return out


def independence_check(
    phi: ChainElement, rng: RandomSource, extra_points: int = 10, spanning: bool = True, cap: int | None = None
) -> IndependenceCertificate:
    tuples = enumerate_admissible(phi, cap)
    count = len(tuples) + extra_points
    tables = [plucker_table(pt) for pt in random_points(phi, count, rng)]
    evaluation = [[t.get(lab, 0) for lab in tuples] for t in tables]
    k = rank(evaluation)
    cert = IndependenceCertificate(phi, tuples, count, k, evaluation=evaluation)
    if k < len(tuples):
        cert.kernel_witness = nullspace(evaluation)[0]
    if spanning:
        # the admissible columns must already span every nonvanishing coordinate
        others = [lab for lab in all_labels(phi.n, phi.r) if not vanishing_criterion(lab, phi)]
        full = [[t.get(lab, 0) for lab in others] for t in tables]
        cert.spanning = rank(full) == k
    return cert


def demazure_dimension(phi: ChainElement, rng: RandomSource, cap: int | None = None) -> int:
    """dim H^0(X(phi), L_0) = #A_phi, once independence is certified."""
    cert = independence_check(phi, rng, spanning=False, cap=cap)
    if not cert.valid:
        raise ArithmeticError("independence not certified")
    return cert.expected
