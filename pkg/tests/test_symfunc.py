import pytest

from agtlab.exactalg import mpq
from agtlab.partitions import Partition, partitions
from agtlab.symfunc import (DegreeOverflow, SymVector, basis_convert, inner_product, jack_norm_formula,
                            jack_table, p1_power_in_jack)

P = Partition


def vec(basis, d, N=4):
    return SymVector(N, basis, {P(k): v for k, v in d.items()})


def test_power_sum_to_monomial():
    assert basis_convert(vec("p", {(1,): 1}), "m") == vec("m", {(1,): 1})
    assert basis_convert(vec("p", {(1, 1): 1}), "m") == vec("m", {(2,): 1, (1, 1): 2})
    assert basis_convert(vec("m", {(2,): 1}), "p") == vec("p", {(2,): 1})
    assert basis_convert(vec("m", {(1, 1): 1}), "p") == vec("p", {(1, 1): mpq(1, 2), (2,): mpq(-1, 2)})


def test_small_jacks(sym):
    b = sym["b"]
    T = jack_table(3, b)
    assert T.jack((1,)) == vec("m", {(1,): 1}, 3)
    assert T.jack((1, 1)) == vec("m", {(1, 1): 1}, 3)
    assert T.jack((2,)) == SymVector(3, "m", {P((2,)): 1, P((1, 1)): 2 * b / (1 + b)})
    assert T.norm[P((2,))] == 2 / (b * (1 + b)) == jack_norm_formula(P((2,)), b)


def test_power_sum_inner_products(sym):
    b = sym["b"]
    assert inner_product(vec("p", {(1,): 1}), vec("p", {(1,): 1}), b) == 1 / b
    assert inner_product(vec("p", {(1, 1): 1}), vec("p", {(1, 1): 1}), b) == 2 / b ** 2
    assert inner_product(vec("p", {(2,): 1}), vec("p", {(1, 1): 1}), b) == 0


def test_p1_power_lemma(sym):
    b = sym["b"]
    assert p1_power_in_jack(1, b) == SymVector(1, "jack", {P((1,)): 1})
    assert p1_power_in_jack(2, b) == SymVector(2, "jack", {P((2,)): 1, P((1, 1)): 2 / (b + 1)})
    T = jack_table(5, b)
    for n in range(1, 6):
        direct = basis_convert(SymVector(5, "p", {P([1] * n): 1}), "m")
        assert T.jack_to_m(p1_power_in_jack(n, b, 5)) == direct


def test_jack_basis_round_trip():
    T = jack_table(4, mpq(3, 2))
    v = SymVector(4, "m", {P((2, 1, 1)): mpq(5), P((3, 1)): mpq(-1, 4), P((1,)): 2})
    assert T.jack_to_m(T.m_to_jack(v)) == v


def test_orthogonality_at_rational_beta():
    beta = mpq(2, 7)
    T = jack_table(5, beta)
    for n in range(6):
        for lam in partitions(n):
            for mu in partitions(n):
                ip = inner_product(T.jack(lam), T.jack(mu), beta, T)
                assert ip == (jack_norm_formula(lam, beta) if lam == mu else 0)


def test_jack_at_beta_one_is_schur_like():
    # beta = 1: J_(1,1) = m_(1,1), J_(2) = m_(2) + m_(1,1)
    T = jack_table(2, 1)
    assert T.jack((2,)) == SymVector(2, "m", {P((2,)): 1, P((1, 1)): 1})


def test_degree_overflow():
    with pytest.raises(DegreeOverflow):
        jack_table(2, mpq(1)).jack((3,))
