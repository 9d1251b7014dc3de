import pytest

from agtlab.exactalg import mpq
from agtlab.fock import (FockBasisState, FockSpace, FockVector, GradeOverflow, MissingLatticeLabel, OperatorExpr,
                         chevalley_check, co_matrix_element, co_sign_calibration, cocycle, commutator_check,
                         fixed_point_class, gaiotto_whittaker, gen, integrals_of_motion, sym_to_fock,
                         virasoro_check, whittaker_solve)
from agtlab.nekrasov_c2 import m_bifund
from agtlab.partitions import Partition, partitions
from agtlab.symfunc import jack_table


def one_boson(lam):
    return FockBasisState((Partition(lam),))


def test_annihilator_kills_vacuum():
    S = FockSpace.single(mpq(3))
    vac = FockVector.vacuum(1)
    assert S.apply(gen("a", (1,), 1), vac).is_zero()


def test_heisenberg_pairing_uses_inverse_beta():
    S = FockSpace.single(mpq(3))
    v = S.apply(gen("a", (1,), 1) * gen("a", (1,), -1), FockVector.vacuum(1))
    assert v == FockVector.vacuum(1, coeff=mpq(1, 3))


def test_heisenberg_commutator_on_states():
    S = FockSpace.single(mpq(2))
    states = S.states(3)
    for m in range(1, 3):
        rep = commutator_check(S, gen("a", (1,), m), gen("a", (1,), -m), OperatorExpr.identity(mpq(m, 2)), states)
        assert rep["pass"]


def test_grade_bound_enforced():
    S = FockSpace.single()
    v = FockVector.vacuum(1, bound=1)
    with pytest.raises(GradeOverflow):
        S.apply(gen("a", (1,), -1) * gen("a", (1,), -1), v, bound=1)


def test_lattice_operator_needs_label():
    S = FockSpace.lattice(2)
    with pytest.raises(MissingLatticeLabel):
        S.apply(gen("e", 1, 0), FockVector.vacuum(S.ns))


def test_cartan_generators_read_charge_k3():
    S = FockSpace.lattice(3)
    for a in range(2):
        u = tuple(1 if t == a else 0 for t in range(2))
        vac = FockVector.vacuum(S.ns, u)
        for i in (1, 2):
            got = S.apply(gen("h", i, 0), vac)
            assert got == vac.scale(1 if i == a + 1 else 0)


def test_cocycle_bimultiplicative():
    vecs = [(1, 0), (0, 1), (1, 1), (2, -1)]
    for a in vecs:
        for b in vecs:
            for c in vecs:
                ab = tuple(x + y for x, y in zip(a, b))
                assert cocycle(ab, c) == cocycle(a, c) * cocycle(b, c)


def test_chevalley_relations_k2():
    S = FockSpace.lattice(2)
    rep = chevalley_check(S, 2, [(0,), (2,), (-2,)])
    assert rep["pass"], [c for c in rep["checks"] if not c["pass"]][:1]


def test_virasoro_lattice_k2():
    S = FockSpace.lattice(2)
    assert virasoro_check(S, "sl", 2, [(0,), (1,)], nmax=2)["pass"]


def test_virasoro_rank_k_sampled():
    S = FockSpace.rank_k(2, mpq(3, 7), mpq(-5, 11))
    assert virasoro_check(S, "h", 2, nmax=2)["pass"]


def test_carlsson_okounkov_small(sym):
    e1, e2, mu = sym["e1"], sym["e2"], sym["mu"]
    S = FockSpace.rank_k(1, e1, e2)
    T = jack_table(2, S.beta(1))
    sign = co_sign_calibration(S, T, mu, e1, e2)
    alpha, beta_exp = -mu / e2, (mu + e1 + e2) / e2
    for a in [(), (1,), (2,), (1, 1)]:
        for b in [(), (1,), (2,), (1, 1)]:
            want = m_bifund(Partition(a), Partition(b), mu, e1, e2) * (-1) ** Partition(b).weight
            assert co_matrix_element(S, T, a, b, alpha, beta_exp, e1, e2, sign) == want


def test_integrals_eigenvalues(sym):
    e1, e2 = sym["e1"], sym["e2"]
    S = FockSpace.rank_k(1, e1, e2)
    T = jack_table(3, S.beta(1))
    for n in range(4):
        for lam in partitions(n):
            J = sym_to_fock(T.jack(lam))
            assert integrals_of_motion(S, 1, J) == J.scale(mpq(n))
            ev = -sum(((a - 1) * e1 + (b - 1) * e2 for a, b in lam.cells()), 0 * e1)
            assert integrals_of_motion(S, 2, J) == J.scale(ev)


def test_fixed_point_class_of_one_box(sym):
    e1, e2 = sym["e1"], sym["e2"]
    S = FockSpace.rank_k(1, e1, e2)
    T = jack_table(1, S.beta(1))
    v = fixed_point_class(T, (1,), e1, e2)
    assert set(v.coeffs) == {one_boson((1,))}


def test_gaiotto_whittaker_c2(sym):
    e1, e2, eta = sym["e1"], sym["e2"], sym["mu"]
    S = FockSpace.rank_k(1, e1, e2)
    G, rep = gaiotto_whittaker(S, [eta], 3)
    assert rep["pass"] and len(rep["checks"]) == 3
    assert whittaker_solve(S, {(0, 1): eta / S.beta(1)}, 3) == G
