from hypothesis import given, strategies as st

from agtlab.partitions import (Partition, dominance_compare, enumerate_tuples, hooks, partition_count,
                               partition_stats, partitions, tuple_count)


def test_hooks_examples():
    assert hooks(Partition((2, 1)), (1, 1)) == (1, 1, 0, 0)
    assert hooks(Partition(()), (1, 1)) == (-1, -1, 0, 0)
    assert hooks(Partition((3, 1)), (1, 2)) == (1, 0, 1, 0)


def test_enumeration_counts():
    assert set(enumerate_tuples(1, 3)) == {(Partition((3,)),), (Partition((2, 1)),), (Partition((1, 1, 1)),)}
    two = enumerate_tuples(2, 2)
    assert len(two) == 5
    assert (Partition((1,)), Partition((1,))) in two
    # coefficient of q^4 in prod (1 - q^n)^-3
    assert len(enumerate_tuples(3, 4)) == 51 == tuple_count(3, 4)


def test_tuple_counts_match_generating_function():
    from agtlab.exactalg import eta_series, mpq, series_compose

    e = eta_series(mpq(6) + mpq(1, 24)).shift((mpq(-1, 24),))
    gen = series_compose(e, "pow", a=-3, order=6)
    for n in range(7):
        assert gen.coefficient((mpq(n),)) == len(enumerate_tuples(3, n))


def test_stats():
    w, l, z, t = partition_stats((1, 1))
    assert (w, l, z) == (2, 2, 2)
    assert partition_stats((3,))[3] == Partition((1, 1, 1))
    assert dominance_compare((1, 1, 1), (2, 1)) == "less"
    assert dominance_compare((3, 1, 1, 1), (2, 2, 2)) == "incomparable"


def test_partition_counts():
    assert [partition_count(n) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert all(len(partitions(n)) == partition_count(n) for n in range(12))


@given(st.lists(st.integers(1, 6), max_size=6))
def test_transpose_is_involution(parts):
    lam = Partition(sorted(parts, reverse=True))
    assert lam.transpose().transpose() == lam
    assert lam.transpose().weight == lam.weight


@given(st.lists(st.integers(1, 5), min_size=1, max_size=5))
def test_hook_lengths_positive(parts):
    lam = Partition(sorted(parts, reverse=True))
    for a, b in lam.cells():
        arm, leg, _, _ = hooks(lam, (a, b))
        assert arm >= 0 and leg >= 0
