import pytest
from hypothesis import given, settings, strategies as st

from agtlab.exactalg import (QSeries, QuadExt, RatFunc, ZeroDenominator, eta_series, evaluate, mpq,
                             parse_rational, rational_str, sample_assignment, scalar_from_json, scalar_json,
                             series_compose)


def q(*coeffs, order=None):
    return QSeries(("q",), {(mpq(i),): c for i, c in enumerate(coeffs) if c}, order)


def test_evaluate_ratio(sym):
    assert evaluate(sym["e1"] / sym["e2"], {"e1": 3, "e2": 2}) == mpq(3, 2)


def test_evaluate_pole(sym):
    with pytest.raises(ZeroDenominator):
        evaluate(1 / (sym["e1"] - sym["e2"]), {"e1": 1, "e2": 1})


def test_evaluate_removable_singularity(sym):
    e1, e2 = sym["e1"], sym["e2"]
    f = (e1 ** 2 - e2 ** 2) / (e1 - e2)
    assert evaluate(f, {"e1": 1, "e2": 1}) == 2


def test_partial_evaluation_keeps_free_variables(sym):
    f = sym["e1"] * sym["mu"] + sym["e2"]
    g = evaluate(f, {"e1": 2})
    assert isinstance(g, RatFunc)
    assert g == 2 * RatFunc.var("mu") + RatFunc.var("e2")


def test_exp_series():
    c = mpq(3, 5)
    got = series_compose(q(0, c), "exp", order=2)
    assert got.difference(q(1, c, c * c / 2, order=2)) == []


def test_pow_binomial():
    got = series_compose(q(1, -1), "pow", a=-2, order=2)
    assert got.difference(q(1, 2, 3, order=2)) == []


def test_pow_of_exp_is_scaled_exp():
    e = series_compose(q(0, 1), "exp", order=2)
    got = series_compose(e, "pow", a=mpq(1, 3), order=2)
    assert got.difference(q(1, mpq(1, 3), mpq(1, 18), order=2)) == []


def test_log_inverts_exp():
    f = q(0, mpq(2, 7), mpq(-1, 3), order=5)
    assert series_compose(series_compose(f, "exp"), "log").difference(f) == []


def test_eta_leading_term():
    e = eta_series(mpq(1, 24))
    assert e.sorted_terms() == [((mpq(1, 24),), 1)]


def test_eta_two_terms():
    e = eta_series(mpq(49, 24))
    assert [(x[0], c) for x, c in e.sorted_terms()] == [(mpq(1, 24), 1), (mpq(25, 24), -1), (mpq(49, 24), -1)]


def test_inverse_eta_counts_partitions():
    e = eta_series(mpq(3) + mpq(1, 24)).shift((mpq(-1, 24),))
    inv = series_compose(e, "pow", a=-1, order=3)
    assert inv.difference(q(1, 1, 2, 3, order=3)) == []


def test_quadratic_extension_arithmetic():
    r = QuadExt.rho(mpq(-6))
    assert r * r == -6
    x = 1 + 2 * r
    assert x / x == 1
    assert (x * x.conj()) == x.norm()


def test_scalar_json_round_trip(sym):
    f = (sym["e1"] + 3) / (sym["e2"] - sym["mu"])
    for c in (mpq(-7, 3), f, QuadExt(mpq(1, 2), mpq(3), mpq(5))):
        assert scalar_from_json(scalar_json(c)) == c


def test_sample_assignment_is_deterministic():
    a = sample_assignment(["e2", "e1"], 11)
    assert a == sample_assignment(["e1", "e2"], 11)
    assert a != sample_assignment(["e1", "e2"], 12)


def test_difference_locates_defect(sym):
    a = q(1, sym["e2"], sym["e1"], order=3)
    b = q(1, sym["e2"], 2 * sym["e1"], order=3)
    assert a.difference(b) == [(mpq(2),)]


@settings(max_examples=40, deadline=None)
@given(st.integers(-50, 50), st.integers(1, 50))
def test_rational_text_round_trip(n, d):
    x = mpq(n, d)
    assert parse_rational(rational_str(x)) == x


@settings(max_examples=25, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=2, max_size=4))
def test_series_product_is_commutative(cs):
    a = q(*[mpq(c.numerator, c.denominator) for c in cs], order=4)
    b = q(1, *[mpq(c.numerator + 1, c.denominator) for c in cs[:2]], order=4)
    assert (a * b).difference(b * a) == []
