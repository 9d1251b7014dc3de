import pytest

from agtlab.ale import (ALESpace, Charge, InconsistentCharge, cartan_inverse, cartan_matrix, character_chi,
                        enumerate_charges, eta_power_in)
from agtlab.exactalg import mpq


def test_charge_examples():
    c = Charge((1,), 2)
    assert (c.j, c.v, c.delta) == (1, (mpq(1, 2),), mpq(1, 4))
    c = Charge((1, 1), 3)
    assert (c.j, c.v, c.delta) == (0, (1, 1), 1)
    assert Charge((0,), 2).delta == 0


def test_cartan_inverse():
    for k in range(2, 6):
        C, Ci = cartan_matrix(k), cartan_inverse(k)
        n = k - 1
        for i in range(n):
            for j in range(n):
                assert sum(C[i][t] * Ci[t][j] for t in range(n)) == (1 if i == j else 0)


def test_enumeration_examples():
    assert [c.u for c in enumerate_charges(0, 2, 1)] == [(0,), (-2,), (2,)]
    assert [c.u for c in enumerate_charges(1, 2, 3, "A0")] == [(-1,), (1,)]
    assert [c.u for c in enumerate_charges(0, 3, 0)] == [(0, 0)]


def test_enumeration_complete_against_brute_force():
    k, dmax = 3, mpq(5, 2)
    got = {c.u for j in range(k) for c in enumerate_charges(j, k, dmax)}
    want = {(a, b) for a in range(-8, 9) for b in range(-8, 9) if Charge((a, b), k).delta <= dmax}
    assert got == want


def test_character_k2():
    x0 = character_chi(0, 2, 2)
    assert x0.min_degree() == mpq(-1, 24)
    x1 = character_chi(1, 2, 1)
    lead = [(e, c) for e, c in x1.sorted_terms() if e[0] == mpq(5, 24)]
    assert sorted(e[1] for e, _ in lead) == [mpq(-1, 2), mpq(1, 2)]


@pytest.mark.parametrize("k", [2, 3, 4])
def test_vacuum_character_normalisation(k):
    s = (eta_power_in(k, k - 1, 2) * character_chi(0, k, 2)).truncate(1)
    assert s.coefficient((mpq(0),) + (mpq(0),) * (k - 1)) == 1


def test_patch_weights(sym):
    X = ALESpace(2, sym["e1"], sym["e2"])
    assert X.eps1(1) == 2 * sym["e1"] and X.eps2(1) == sym["e2"] - sym["e1"]
    assert X.eps1(2) == sym["e1"] - sym["e2"] and X.eps2(2) == 2 * sym["e2"]


def test_bad_charge():
    with pytest.raises((InconsistentCharge, ValueError)):
        Charge((1, 2, 3), 3)
