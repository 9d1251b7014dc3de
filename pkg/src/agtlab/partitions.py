"""Partitions, Young diagrams and tuples of partitions.

Cells are addressed as ``(a, b)`` with row ``a >= 1`` and column ``b >= 1``.
Arm and leg lengths are defined for every cell, inside the diagram or not,
so they can be negative.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import factorial
from typing import Iterator, List, Sequence, Tuple

__all__ = [
    "Partition", "PartitionTuple", "partitions", "enumerate_tuples", "hooks",
    "partition_stats", "dominance_compare", "partition_count", "tuple_count",
]


class Partition(tuple):
    """Weakly decreasing tuple of positive integers; ``Partition()`` is the empty partition."""

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(int(p) for p in parts if p)
        if any(p < 0 for p in parts) or any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts: tuple) -> "Partition":
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, a: int) -> int:
        """``lambda_a`` with the convention ``lambda_a = 0`` beyond the length."""
        return self[a - 1] if 1 <= a <= len(self) else 0

    def transpose(self) -> "Partition":
        return _transpose(self)

    def arm(self, a: int, b: int) -> int:
        return self.part(a) - b

    def leg(self, a: int, b: int) -> int:
        return self.transpose().part(b) - a

    def cells(self) -> List[Tuple[int, int]]:
        return [(a, b) for a, row in enumerate(self, 1) for b in range(1, row + 1)]

    def contains(self, cell) -> bool:
        a, b = cell
        return a >= 1 and b >= 1 and self.part(a) >= b

    def multiplicities(self) -> dict:
        m = {}
        for p in self:
            m[p] = m.get(p, 0) + 1
        return m

    def z(self) -> int:
        out = 1
        for j, mj in self.multiplicities().items():
            out *= j ** mj * factorial(mj)
        return out

    def add_cell_rows(self) -> List[int]:
        """Rows where a box can be added."""
        return [a for a in range(1, len(self) + 2) if a == 1 or self.part(a - 1) > self.part(a)]

    def remove_cell_rows(self) -> List[int]:
        return [a for a in range(1, len(self) + 1) if self.part(a) > self.part(a + 1)]

    def to_json(self):
        return list(self)

    def __repr__(self):
        return "(" + ",".join(map(str, self)) + ")" if self else "∅"


@lru_cache(maxsize=None)
def _transpose(lam: tuple) -> Partition:
    if not lam:
        return Partition._trusted(())
    return Partition._trusted(tuple(sum(1 for p in lam if p >= b) for b in range(1, lam[0] + 1)))


class PartitionTuple(tuple):
    """Ordered k-tuple of partitions."""

    def __new__(cls, parts: Sequence):
        return super().__new__(cls, tuple(p if isinstance(p, Partition) else Partition(p) for p in parts))

    @property
    def weight(self) -> int:
        return sum(p.weight for p in self)

    def to_json(self):
        return [list(p) for p in self]

    def __repr__(self):
        return "(" + "|".join(repr(p) for p in self) + ")"


def hooks(lam: Partition, cell: Tuple[int, int]) -> Tuple[int, int, int, int]:
    """(arm, leg, arm colength, leg colength) of a cell relative to ``lam``."""
    a, b = cell
    if a < 1 or b < 1:
        raise ValueError("cells are 1-indexed")
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    return lam.arm(a, b), lam.leg(a, b), b - 1, a - 1


@lru_cache(maxsize=None)
def _partitions(n: int, cap: int) -> Tuple[Partition, ...]:
    if n == 0:
        return (Partition._trusted(()),)
    out = []
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, first):
            out.append(Partition._trusted((first,) + rest))
    return tuple(out)


def partitions(n: int) -> Tuple[Partition, ...]:
    """All partitions of ``n`` in reverse lexicographic order, ``(n)`` first."""
    if n < 0:
        return ()
    return _partitions(n, n)


def _compositions(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """Weak compositions of n into k parts, lexicographically decreasing."""
    if k == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_tuples(k: int, n: int) -> Tuple[PartitionTuple, ...]:
    """All k-tuples of total weight n.

    Ordered by component weights (lexicographically decreasing), then by
    each component in the order of :func:`partitions`.
    """
    if k < 1:
        raise ValueError("k must be positive")
    out = []
    for comp in _compositions(n, k):
        for combo in product(*(partitions(w) for w in comp)):
            out.append(PartitionTuple(combo))
    return tuple(out)


def partition_count(n: int) -> int:
    return len(partitions(n))


def tuple_count(k: int, n: int) -> int:
    """Coefficient of q^n in prod (1-q^m)^(-k), computed by power-series convolution."""
    p = [partition_count(i) for i in range(n + 1)]
    acc = [1] + [0] * n
    for _ in range(k):
        acc = [sum(acc[i] * p[m - i] for i in range(m + 1)) for m in range(n + 1)]
    return acc[n]


def dominance_compare(lam: Sequence[int], mu: Sequence[int]) -> str:
    """'equal', 'greater' (lam dominates mu), 'less' or 'incomparable'."""
    lam, mu = Partition(lam), Partition(mu)
    if lam == mu:
        return "equal"
    if lam.weight != mu.weight:
        return "incomparable"
    ge = le = True
    s1 = s2 = 0
    for i in range(max(len(lam), len(mu))):
        s1 += lam.part(i + 1)
        s2 += mu.part(i + 1)
        ge &= s1 >= s2
        le &= s1 <= s2
    if ge:
        return "greater"
    if le:
        return "less"
    return "incomparable"


def partition_stats(lam: Sequence[int]):
    lam = Partition(lam)
    return lam.weight, lam.length, lam.z(), lam.transpose()
