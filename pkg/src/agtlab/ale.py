"""Combinatorial data of the ALE space X_k.

Cartan matrix of type A_{k-1}, the torus weights of the k toric charts,
charge lattices ``U_j`` and the level-one characters built from them.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .exactalg import QSeries, as_rational, eta_series, series_compose

__all__ = [
    "cartan_matrix", "cartan_inverse", "ALESpace", "Charge", "charge",
    "enumerate_charges", "conformal_defect", "character_chi", "InconsistentCharge",
    "omega", "lattice_sum", "eta_power_in", "series_vars", "xi_vars", "holonomy_of_v",
]


class InconsistentCharge(ValueError):
    """A charge vector violates the holonomy congruences."""


@lru_cache(maxsize=None)
def cartan_matrix(k: int) -> Tuple[Tuple[int, ...], ...]:
    n = k - 1
    return tuple(tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def cartan_inverse(k: int) -> Tuple[Tuple[mpq, ...], ...]:
    """(C^-1)_{ij} = min(i,j) (k - max(i,j)) / k with 1-based indices."""
    n = k - 1
    return tuple(tuple(mpq(min(i, j) * (k - max(i, j)), k) for j in range(1, n + 1)) for i in range(1, n + 1))


def mat_vec(M, v):
    return tuple(sum((a * b for a, b in zip(row, v)), mpq(0)) for row in M)


def dot(a, b):
    return sum((x * y for x, y in zip(a, b)), mpq(0))


def quad(M, a, b=None):
    """a . M b"""
    return dot(a, mat_vec(M, a if b is None else b))


class ALESpace:
    """Patch weights of X_k over given equivariant parameters ``e1, e2``."""

    def __init__(self, k: int, e1, e2):
        if k < 1:
            raise ValueError("k must be positive")
        self.k, self.e1, self.e2 = k, e1, e2
        self.C = cartan_matrix(k)
        self.Cinv = cartan_inverse(k)

    def eps1(self, i: int):
        return (self.k - i + 1) * self.e1 - (i - 1) * self.e2

    def eps2(self, i: int):
        return -(self.k - i) * self.e1 + i * self.e2

    def patches(self) -> List[Tuple[object, object]]:
        return [(self.eps1(i), self.eps2(i)) for i in range(1, self.k + 1)]

    def beta(self, i: int):
        return -self.eps1(i) / self.eps2(i)

    def to_json(self):
        from .exactalg import scalar_json

        return {
            "k": self.k,
            "cartan": [list(r) for r in self.C],
            "cartan_inverse": [[str(x) for x in r] for r in self.Cinv],
            "patches": [[scalar_json(a), scalar_json(b)] for a, b in self.patches()],
        }


class Charge:
    """u in Z^(k-1) with derived holonomy j, v = C^-1 u and conformal dimension."""

    __slots__ = ("k", "u", "j", "v", "delta")

    def __init__(self, u: Sequence[int], k: int):
        if len(u) != k - 1:
            raise ValueError(f"charge for k={k} needs {k - 1} components")
        self.k = k
        self.u = tuple(int(x) for x in u)
        self.j = sum(i * x for i, x in enumerate(self.u, 1)) % k
        self.v = mat_vec(cartan_inverse(k), self.u)
        self.delta = dot(self.u, self.v) / 2
        for l, vl in enumerate(self.v, 1):
            if (k * vl + l * self.j) % k != 0:
                raise InconsistentCharge(f"k v_{l} is not congruent to -l j mod k for u={self.u}")

    @property
    def gamma(self) -> Tuple[mpq, ...]:
        """Root-lattice coordinates v_i - (C^-1)^{ij}."""
        om = omega(self.k, self.j)
        return tuple(a - b for a, b in zip(self.v, om))

    def to_json(self):
        return {"k": self.k, "u": list(self.u), "j": self.j, "v": [str(x) for x in self.v],
                "delta": str(self.delta)}

    def __eq__(self, other):
        return isinstance(other, Charge) and (self.k, self.u) == (other.k, other.u)

    def __hash__(self):
        return hash((self.k, self.u))

    def __repr__(self):
        return f"Charge(u={self.u}, j={self.j}, delta={self.delta})"


def charge(u: Sequence[int], k: int) -> Charge:
    return Charge(u, k)


def omega(k: int, j: int) -> Tuple[mpq, ...]:
    """Fundamental weight omega_j in the basis of simple roots (zero for j = 0)."""
    if j == 0:
        return tuple(mpq(0) for _ in range(k - 1))
    Ci = cartan_inverse(k)
    return tuple(Ci[i][j - 1] for i in range(k - 1))


def holonomy_of_v(v: Sequence, k: int) -> int:
    """Class of k v_{k-1} modulo k."""
    x = as_rational(v[-1]) * k
    if x.denominator != 1:
        raise InconsistentCharge(f"k v_(k-1) is not an integer for v={v}")
    return int(x.numerator) % k


def conformal_defect(k: int, j_self: int, v_self, neighbours: Sequence[Tuple[int, Sequence]] = ()):
    """d^{X_k} for a vertex with holonomy j_self and charge vector v_self.

    ``neighbours`` lists (relative holonomy, neighbour v) for every arrow at the
    vertex (outgoing and incoming alike).  Fundamental legs are not arrows:
    the constant 2 in the formula already accounts for them, so an A_0 vertex
    has no neighbours and the condition reads u.C^-1 u = j (k - j) / k.
    """
    C = cartan_matrix(k)
    n_arrows = len(neighbours)
    d = mpq(j_self * (k - j_self), 2 * k) * (2 - n_arrows)
    for jrel, _ in neighbours:
        d += mpq(jrel * (k - jrel), 4 * k)
    d -= quad(C, v_self)
    for _, vn in neighbours:
        d += quad(C, v_self, vn) / 2
    return d


def _box_bound(delta_max) -> int:
    # u . C^-1 u >= |u|^2 / lambda_max(C) > |u|^2 / 4, so |u_i|^2 <= 8 delta_max
    d = as_rational(delta_max) * 8
    return isqrt(int(d.numerator // d.denominator))


def enumerate_charges(j: int, k: int, delta_max, conformal: Optional[str] = None) -> List[Charge]:
    """Charges in U_j with Delta <= delta_max, sorted by (Delta, u).

    ``conformal='A0'`` keeps only u . C^-1 u = j (k - j) / k.
    """
    delta_max = as_rational(delta_max)
    if delta_max < 0:
        return []
    if k == 1:
        return [Charge((), 1)] if j == 0 else []
    B = _box_bound(delta_max)
    out = []
    for u in product(range(-B, B + 1), repeat=k - 1):
        if sum(i * x for i, x in enumerate(u, 1)) % k != j:
            continue
        c = Charge(u, k)
        if c.delta > delta_max:
            continue
        if conformal == "A0" and 2 * c.delta != mpq(j * (k - j), k):
            continue
        out.append(c)
    out.sort(key=lambda c: (c.delta, c.u))
    return out


def xi_vars(k: int, prefix: str = "xi") -> Tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(1, k))


def series_vars(k: int) -> Tuple[Tuple[str, ...], Tuple[int, ...]]:
    names = ("q",) + xi_vars(k)
    return names, (1,) + (0,) * (k - 1)


def lattice_sum(j: int, k: int, order, conformal: bool = False) -> QSeries:
    """sum over u in U_j of q^Delta_u xi^(C^-1 u), exponents of q up to ``order``."""
    names, weights = series_vars(k)
    terms: Dict[tuple, int] = {}
    for c in enumerate_charges(j, k, order, "A0" if conformal else None):
        e = (c.delta,) + c.v
        terms[e] = terms.get(e, 0) + 1
    return QSeries(names, terms, order, weights)


def eta_power_in(k: int, power: int, order, names=None, weights=None) -> QSeries:
    """eta(q)^power as a series in the (q, xi...) variables."""
    if names is None:
        names, weights = series_vars(k)
    order = as_rational(order)
    lead = mpq(power, 24)
    eta = eta_series(max(order - lead + mpq(1, 24), mpq(1, 24)))
    p = series_compose(eta, "pow", a=mpq(power), lead=mpq(1, 24), order=order)
    rows = [[1] + [0] * (len(names) - 1)]
    return p.substitute_monomial(rows, names, weights)


def character_chi(j: int, k: int, order, conformal: bool = False) -> QSeries:
    """eta^(1-k) sum_{u in U_j} q^(u.C^-1 u / 2) xi^(C^-1 u), truncated at q-exponent ``order``."""
    order = as_rational(order)
    shift = mpq(k - 1, 24)
    theta = lattice_sum(j, k, order + shift, conformal)
    inv_eta = eta_power_in(k, 1 - k, order + shift)
    return (theta * inv_eta).truncate(order)
