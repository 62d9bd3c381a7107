from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affgrass import nilpotent as nz
from affgrass.exact import ExactMatrix, RandomSource, rank
from affgrass.partitions import conjugate, dominance_leq, partitions
from affgrass.weyl import dominates

from conftest import gauss_rank


def test_conjugate_examples():
    assert conjugate((2,)) == (1, 1)
    assert conjugate((2, 1)) == (2, 1)
    assert conjugate((3, 1)) == (2, 1, 1)


def test_dominance_examples():
    assert dominance_leq((1, 1), (2,))
    assert dominance_leq((2, 1), (2, 1))
    assert not dominance_leq((3, 1, 1, 1), (2, 2, 2))
    assert not dominance_leq((2, 2, 2), (3, 1, 1, 1))
    with pytest.raises(ValueError):
        dominance_leq((2,), (2, 1))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: st.sampled_from(partitions(n))))
def test_conjugate_involution(mu):
    assert conjugate(conjugate(mu)) == mu
    assert sum(conjugate(mu)) == sum(mu)


def test_orbit_membership_examples():
    zero = ExactMatrix.zeros(3, 3)
    for mu in partitions(3):
        assert nz.orbit_membership(zero, mu)[0]
    assert nz.orbit_membership(nz.jordan_matrix((3,)), (3,)) == (True, True)
    assert nz.orbit_membership(nz.jordan_matrix((2, 1)), (3,)) == (True, False)
    with pytest.raises(ValueError, match="not nilpotent"):
        nz.orbit_membership(ExactMatrix.identity(2), (2,))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_closure_order_is_dominance(n):
    for nu in partitions(n):
        J = nz.jordan_matrix(nu)
        for mu in partitions(n):
            assert nz.orbit_membership(J, mu)[0] == dominance_leq(nu, mu)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_random_orbit_points(n):
    for mu in partitions(n):
        for seed in range(50):
            pt = nz.random_orbit_point(mu, RandomSource(seed), integral=seed % 2 == 0)
            assert pt.matrix.power(n).is_zero()
            assert nz.orbit_membership(pt, mu) == (True, True)
            assert nz.orbit_type(pt.matrix) == mu


def test_zero_orbit_point():
    pt = nz.random_orbit_point((1, 1, 1), RandomSource(0))
    assert pt.matrix.is_zero()


def test_power_ranks_against_gauss():
    rng = RandomSource(3)
    pt = nz.random_orbit_point((3, 1), rng)
    P = pt.matrix
    for k in range(1, 5):
        assert rank(P.power(k)) == gauss_rank(P.power(k).tolist())


def test_lusztig_zero():
    L = nz.lusztig_embed(ExactMatrix.zeros(2, 2))
    assert L.matrix.tolist() == [[0, 0], [0, 0], [1, 0], [0, 1]]


def test_lusztig_minors_n2():
    a, b, c = 2, 4, -1
    N = ExactMatrix([[a, b], [c, -a]])
    table = nz.minor_tables(N)
    got = [table.get(lab, 0) for lab in combinations(range(1, 5), 2)]
    assert got == [0, -b, a, a, c, 1]


@pytest.mark.parametrize("mu", [(2,), (3,), (2, 1), (4,), (2, 2), (3, 1)])
def test_lusztig_structure(mu):
    n = sum(mu)
    rng = RandomSource(sum(mu) * 7 + len(mu))
    kappa = tuple(j * n + 1 for j in range(n))
    for _ in range(10):
        pt = nz.random_orbit_point(mu, rng, integral=True)
        L = nz.lusztig_embed(pt)
        assert L.bottom_minor() == 1
        assert L.shift_pattern_holds()
        for lab in nz.minor_tables(pt.matrix):
            assert dominates(lab, kappa)


def test_lusztig_rejects_non_nilpotent():
    with pytest.raises(ValueError):
        nz.lusztig_embed(ExactMatrix.identity(2))


def test_weyl_rectangle_examples():
    assert nz.weyl_rectangle_dim(3, 3, 5) == 1
    assert nz.weyl_rectangle_dim(2, 1, 1) == 2
    assert nz.weyl_rectangle_dim(3, 2, 2) == 6
    assert nz.weyl_rectangle_dim(2, 3, 1) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_weyl_rectangle_methods_agree(n):
    for rows in range(0, n + 1):
        for cols in range(0, 5):
            assert nz.weyl_rectangle_dim(n, rows, cols, "tableaux") == nz.weyl_rectangle_dim(n, rows, cols, "formula")


def test_weyl_dimension_twist():
    # S_(1,-1) K^2 is the adjoint representation
    assert nz.weyl_dimension((1, -1), 2) == 3 == nz.weyl_dimension((2, 0), 2)
    with pytest.raises(ValueError):
        nz.weyl_dimension((0, 1), 2)


def test_filtration_examples():
    rng = RandomSource(1)
    assert nz.filtration_dimension((2,), 1, rng) == 4
    assert nz.filtration_dimension((2,), 2, rng) == 9
    for n in (2, 3):
        for m in (0, 1, 2):
            assert nz.filtration_dimension((1,) * n, m, rng) == 1
    with pytest.raises(ValueError, match="caps exceeded"):
        nz.filtration_dimension((5,), 1, rng)


def test_filtration_nested():
    rng = RandomSource(2)
    for mu in partitions(3):
        dims = [nz.filtration_dimension(mu, m, rng) for m in range(4)]
        assert dims == sorted(dims)


def test_conjecture_report():
    rep = nz.conjecture_check((2,), 1, RandomSource(3))
    assert {k: rep[k] for k in ("mu", "m", "filtration_dim", "predicted", "convention", "match")} == {
        "mu": [2], "m": 1, "filtration_dim": 4, "predicted": 4, "convention": "rows", "match": True
    }
    assert nz.conjecture_check((1, 1), 2, RandomSource(3))["match"]
    rep3 = nz.conjecture_check((3,), 1, RandomSource(4))
    assert rep3["filtration_dim"] == 27 == rep3["predicted"]


def test_rectangle_conventions_at_level_one():
    # a column (1^k) is an exterior power, a row (k) a symmetric power; they coincide only for k = 1
    for n in (2, 3, 4):
        for mu in partitions(n):
            same = nz.rectangle_prediction(mu, 1, "rows") == nz.rectangle_prediction(mu, 1, "cols")
            assert same == (mu == (n,))
    assert nz.rectangle_prediction((1, 1), 1, "rows") == 1
    assert nz.rectangle_prediction((1, 1), 1, "cols") == 3


def test_orbit_equations_n2():
    polys = [g.to_polynomial() for g in nz.orbit_equation_spaces((2,))]
    assert polys == [{((1, 1),): 1, ((2, 2),): 1}, {((1, 1), (2, 2)): 1, ((1, 2), (2, 1)): -1}]


def test_invariants_are_char_poly_coefficients():
    gens = {g.name: g for g in nz.orbit_equation_spaces((2,))}
    N = ExactMatrix([[1, 2], [3, 4]])
    v01 = [g for name, g in gens.items() if name.startswith("V[0,1]")][0]
    v02 = [g for name, g in gens.items() if name.startswith("V[0,2]")][0]
    assert v01.evaluate(N) == 5 and v02.evaluate(N) == -2


def test_hook_contains_all_two_minors():
    gens = nz.orbit_equation_spaces((2, 1, 1))
    singles = {(g.terms[0][1], g.terms[0][2]) for g in gens if len(g.terms) == 1 and len(g.terms[0][1]) == 2}
    for P in combinations(range(4), 2):
        for Q in combinations(range(4), 2):
            assert (P, Q) in singles


def test_square_entries_from_partial_traces():
    # V_{1,2}(p, q) = x_pq tr(X) - (X^2)_pq
    rng = RandomSource(5)
    X = ExactMatrix([rng.integers(4, 5) for _ in range(4)])
    X2 = X @ X
    tr = sum(X[i, i] for i in range(4))
    gens = [g for g in nz.orbit_equation_spaces((2, 2)) if g.name.startswith("V[1,2]")]
    assert len(gens) == 16
    for g in gens:
        (_, rows, cols) = g.terms[0]
        p, q = rows[0], cols[0]
        assert g.evaluate(X) == X[p, q] * tr - X2[p, q]


def test_mu_index():
    assert nz.mu_index((2, 2), 1) == 2
    assert nz.mu_index((2, 2), 2) == 3
    assert nz.mu_index((3, 1), 2) == 3


def test_cutout_examples():
    rep = nz.cutout_check((3,), RandomSource(1), points=10)
    assert rep["pass"] and rep["separating_witness"] == {}
    rep21 = nz.cutout_check((2, 1), RandomSource(2), points=10)
    assert rep21["pass"] and rep21["separating_witness"]["[3]"] is not None


def test_incomparable_pair_by_ranks():
    a, b = (3, 1, 1, 1), (2, 2, 2)
    assert not nz.orbit_membership(nz.jordan_matrix(a), b)[0]
    assert not nz.orbit_membership(nz.jordan_matrix(b), a)[0]


def test_cutout_n4_separation():
    rep = nz.cutout_check((2, 2), RandomSource(3), points=5)
    assert rep["pass"]
    assert rep["separating_witness"]["[3, 1]"] is not None
    rep2 = nz.cutout_check((3, 1), RandomSource(3), points=5)
    assert rep2["pass"] and "[2, 2]" not in rep2["separating_witness"]
