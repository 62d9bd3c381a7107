from fractions import Fraction
from math import factorial, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affgrass.exact import RandomSource
from affgrass.partitions import conjugate, dominance_leq, n_statistic, partitions
from affgrass import symfun as sf

from conftest import brute_ssyt


def tab(*rows):
    return sf.Tableau(tuple(tuple(r) for r in rows))


def test_charge_examples():
    assert sf.charge(tab([1], [2])) == 0
    assert sf.charge(tab([1, 2])) == 1
    charges = sorted(sf.charge(T) for T in sf.semistandard_tableaux((2, 1), (1, 1, 1)))
    assert charges == [1, 2]


def test_charge_with_repeated_letters():
    # word 2 1 1 2 splits into two copies of "2 1" (or "1 2"), charges 0 + 1
    assert sf.word_charge((2, 1, 1, 2)) == 1
    assert sf.word_charge((1, 1, 2, 2)) == 2


def test_charge_rejects_bad_content():
    with pytest.raises(ValueError, match="content must be a partition"):
        sf.word_charge((2, 2, 1))
    with pytest.raises(ValueError, match="content must be a partition"):
        sf.word_charge((1, 3))


def test_kostka_foulkes_examples():
    for mu in partitions(4):
        assert sf.kostka_foulkes(mu, mu) == sf.QPolynomial((1,))
    assert sf.kostka_foulkes((2, 1), (1, 1, 1)) == sf.QPolynomial((0, 1, 1))
    assert sf.kostka_foulkes((3,), (1, 1, 1)) == sf.QPolynomial((0, 0, 0, 1))
    assert sf.kostka_foulkes((1, 1), (2,)) == sf.ZERO
    assert sf.kostka_foulkes((2, 2), (2, 1, 1)) == sf.QPolynomial((0, 1))


def test_qpolynomial_json_and_text():
    p = sf.QPolynomial((0, 1, 1))
    assert p.to_json() == {"poly": [0, 1, 1]}
    assert str(p) == "q + q^2"
    assert p.reversed_by(3) == sf.QPolynomial((0, 1, 1))
    assert p.at(1) == 2


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_tableaux_match_brute_force(n):
    for lam in partitions(n):
        for mu in partitions(n):
            got = sorted(T.rows for T in sf.semistandard_tableaux(lam, mu))
            assert got == brute_ssyt(lam, mu)
            assert sf.kostka_foulkes(lam, mu).at(1) == len(got)
            assert all(T.is_semistandard() and T.content == mu for T in sf.semistandard_tableaux(lam, mu))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.sampled_from(partitions(n)), st.sampled_from(partitions(n)))))
def test_kostka_foulkes_degree_and_support(pair):
    lam, mu = pair
    K = sf.kostka_foulkes(lam, mu)
    if dominance_leq(mu, lam):
        # monic of degree n(mu) - n(lam)
        assert K.degree == n_statistic(mu) - n_statistic(lam)
        assert K.coefficient(K.degree) == 1
    else:
        assert K == sf.ZERO
    assert all(c >= 0 for c in K.coeffs)


def test_sn_character_examples():
    assert sf.sn_character((2, 1)).to_json() == {"classes": [[1, 1, 1], [2, 1], [3]], "values": ["2", "0", "-1"]}
    for rho, v in sf.sn_character((4,)).values:
        assert v == 1
    for rho, v in sf.sn_character((1, 1, 1, 1)).values:
        assert v == (-1) ** (sum(rho) - len(rho))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_character_table_orthonormal(n):
    chars = {lam: sf.sn_character(lam) for lam in partitions(n)}
    for a in chars:
        for b in chars:
            assert sf.inner_product(chars[a], chars[b]) == (1 if a == b else 0)
    # degrees square-sum to n!
    assert sum(chars[lam][(1,) * n] ** 2 for lam in chars) == factorial(n)


def test_character_cap():
    with pytest.raises(ValueError):
        sf.sn_character((7,))


def test_c_mu_generators_examples():
    assert [g.name() for g in sf.c_mu_generators((2,))] == ["e_1(1,2)", "e_2(1,2)"]
    n3 = sf.c_mu_generators((3,))
    assert sorted(g.name() for g in n3) == ["e_1(1,2,3)", "e_2(1,2,3)", "e_3(1,2,3)"]
    ones = sf.c_mu_generators((1, 1, 1))
    assert {g.name() for g in ones} >= {"e_1(1)", "e_1(2)", "e_1(3)"}


def test_d_statistic():
    assert [sf.d_statistic((1, 1, 1), k) for k in (1, 2, 3)] == [1, 2, 3]
    assert [sf.d_statistic((3,), k) for k in (1, 2, 3)] == [0, 0, 3]


def test_b_mu_examples():
    chars = sf.b_mu_graded_character((2,), 4)
    assert sf.graded_dimensions((2,), 4) == [1, 1, 0, 0, 0]
    assert chars[0].as_dict() == {(1, 1): 1, (2,): 1}
    assert chars[1].as_dict() == {(1, 1): 1, (2,): -1}
    for mu in partitions(3):
        c0 = sf.b_mu_graded_character(mu, 0)[0]
        assert all(v == 1 for _, v in c0.values)
    assert sf.graded_dimensions((1, 1, 1), 5) == [1, 0, 0, 0, 0, 0]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_total_dimension_is_multinomial(n):
    for mu in partitions(n):
        dims = sf.graded_dimensions(mu, 8)
        assert dims[-1] == 0 and dims[-2] == 0
        assert sum(dims) == factorial(n) // prod(factorial(x) for x in conjugate(mu))


def test_graded_multiplicity_trivial_rep():
    for mu in partitions(3):
        r = sf.graded_multiplicity(mu, (3,), 6)
        assert r.coefficient(0) == 1


@pytest.mark.parametrize("n", [2, 3])
def test_oracle_pair(n):
    res = sf.oracle_pair(n, 8)
    assert res["passing"] == ["cocharge-conj"]
    for mu in partitions(n):
        total = sum(
            sf.graded_multiplicity(mu, lam, 8).at(1) * sf.sn_character(lam)[(1,) * n] for lam in partitions(n)
        )
        assert total == sum(sf.graded_dimensions(mu, 8))


def test_oracle_pair_n3_shape21():
    for lam in partitions(3):
        assert sf.graded_multiplicity((2, 1), lam, 6) == sf.modified_kostka(lam, conjugate((2, 1)))


def test_level_one_weights():
    assert sf.level_one_weights(2) == [(1, -1), (0, 0)]
    for alpha in sf.level_one_weights(4):
        assert sum(alpha) == 0 and alpha[-1] >= -1


def test_level_one_examples():
    rep = sf.level_one_check((2,), 6, RandomSource(1))
    assert rep["pass"]
    assert [d["predicted"] for d in rep["per_degree"]][:3] == [1, 3, 0]
    ones = sf.level_one_check((1, 1, 1), 6, RandomSource(1))
    assert [d["predicted"] for d in ones["per_degree"]] == [1, 0, 0, 0, 0, 0, 0]
    with pytest.raises(ValueError):
        sf.level_one_check((4,), 2, RandomSource(1))


def test_level_one_n3_full_orbit():
    assert sf.level_one_prediction((3,), 4) == [1, 8, 8, 10, 0]
    assert sum(sf.level_one_prediction((3,), 6)) == 27


def test_fraction_free_traces_are_integers():
    for mu in partitions(4):
        for f in sf.b_mu_graded_character(mu, 7):
            assert all(not isinstance(v, Fraction) or v.denominator == 1 for _, v in f.values)
