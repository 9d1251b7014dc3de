import pytest

from agtlab.ale import ALESpace
from agtlab.exactalg import QSeries, mpq, sample_assignment
from agtlab.nekrasov_ale import (ALEQuiverSpec, TruncationWarning, _charge_tuples, agt_report, ale_series_vars,
                                 closed_forms_ale, matrix_element_ale, z_pure_ale, z_quiver_ale)
from agtlab.nekrasov_c2 import QuiverSpec, z_quiver_c2
from agtlab.partitions import Partition

E, ONE = Partition(()), Partition((1,))


def test_matrix_element_examples(sym):
    e1, e2, mu = sym["e1"], sym["e2"], sym["mu"]
    val, z, v = matrix_element_ale([E, E], (0,), 0, [E, E], (0,), 0, mu, 2, e1, e2)
    assert (val, z, v) == (1, 0, (0,))
    val, _, _ = matrix_element_ale([ONE, E], (0,), 0, [ONE, E], (0,), 0, 0 * mu, 2, e1, e2)
    assert val == 2 * e1 * (e2 - e1)
    val, z, v = matrix_element_ale([E, E], (0,), 0, [E, E], (2,), 0, mu, 2, e1, e2)
    assert val == mu and z == 1 and v == (1,)


def test_holonomy_mismatch_rejected(sym):
    with pytest.raises(ValueError):
        matrix_element_ale([E, E], (1,), 0, [E, E], (0,), 0, sym["mu"], 2, sym["e1"], sym["e2"])


def test_pure_leading_terms(sym):
    z = z_pure_ale(2, 0, 1, e1=sym["e1"], e2=sym["e2"])
    assert z.coefficient((mpq(0), mpq(0))) == 1
    assert z.coefficient((mpq(1), mpq(0))) == 1 / (2 * sym["e1"] * sym["e2"])


def test_truncation_warning():
    with pytest.warns(TruncationWarning):
        ALEQuiverSpec(QuiverSpec("pure"), 2, (0,), 2, dmax=1)


@pytest.mark.parametrize("k,j", [(2, 0), (2, 1), (3, 0), (3, 2)])
def test_pure_against_closed_form_sampled(k, j):
    s = sample_assignment(["e1", "e2"], 11)
    a = z_pure_ale(k, j, 2, e1=s["e1"], e2=s["e2"])
    b = closed_forms_ale("pure", k, j, 2, e1=s["e1"], e2=s["e2"])
    assert a.difference(b) == []


def test_fundamental_leg_at_zero_mass_is_conformal_character(sym):
    e1, e2 = sym["e1"], sym["e2"]
    spec = ALEQuiverSpec(QuiverSpec("A", 0, (sym["mu0"], 0 * e1)), 2, (1,), 2)
    z = z_quiver_ale(spec, e1, e2)
    assert z.difference(closed_forms_ale("A_0", 2, 1, 2, (sym["mu0"], 0 * e1), e1, e2)) == []


def test_agt_report():
    s = sample_assignment(["e1", "e2"], 2)
    a = z_pure_ale(2, 0, 2, e1=s["e1"], e2=s["e2"])
    assert agt_report([("same", a, a)])["pass"]
    bad = a + QSeries.monomial(a.vars, (mpq(2), mpq(0)), s["e1"], a.order, a.weights)
    rep = agt_report([("bad", a, bad)])
    assert not rep["pass"] and rep["entries"][0]["diff"] == [["2", "0"]]


def test_agt_report_sampled(sym):
    a = z_pure_ale(2, 0, 1, e1=sym["e1"], e2=sym["e2"])
    b = closed_forms_ale("pure", 2, 0, 1, e1=sym["e1"], e2=sym["e2"])
    samples = [sample_assignment(["e1", "e2"], t) for t in range(3)]
    rep = agt_report([("pure", a, b)], samples, range(3))
    assert rep["pass"] and rep["seeds"] == [0, 1, 2]


def test_structural_factorisation_without_shifts_or_edges():
    # with both off, the sum is the lattice factor times one C^2 cyclic function per chart
    k, r, order = 2, 1, 2
    s = sample_assignment(["e1", "e2", "mu0", "mu1"], 5)
    masses = (s["mu0"], s["mu1"])
    spec = ALEQuiverSpec(QuiverSpec("A_hat", r, masses), k, (0, 1), order, mass_shift="none", edge_factors=False)
    got = z_quiver_ale(spec, s["e1"], s["e2"])

    names, weights = ale_series_vars(k, r + 1)
    lattice = {}
    for cs in _charge_tuples(spec):
        e = tuple(c.delta for c in cs) + tuple(x for c in cs for x in c.v)
        lattice[e] = lattice.get(e, 0) + 1
    want = QSeries(names, lattice, order, weights)
    X = ALESpace(k, s["e1"], s["e2"])
    rows = [[1 if t == a else 0 for t in range(len(names))] for a in range(r + 1)]
    for i in range(1, k + 1):
        zi = z_quiver_c2(QuiverSpec("A_hat", r, masses), order, X.eps1(i), X.eps2(i))
        want = (want * zi.substitute_monomial(rows, names, weights)).truncate(order)
    assert got.difference(want) == []
