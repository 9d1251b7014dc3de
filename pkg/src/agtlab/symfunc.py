"""Symmetric functions truncated at a degree bound.

Supported bases are monomial (``"m"``), power sum (``"p"``) and Jack
(``"jack"``).  The Jack inner product is ``<p_lam, p_mu> = delta z_lam
beta^(-l(lam))``; Jack functions are the monic, dominance-triangular,
orthogonal basis for it.
"""
from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import Dict, List, Mapping, Tuple

from gmpy2 import mpq

from .partitions import Partition, partitions

__all__ = [
    "DegreeOverflow", "SingularParameter", "SymVector", "JackTable", "jack_table",
    "basis_convert", "inner_product", "p1_power_in_jack", "p_to_m_matrix", "m_to_p_matrix",
    "jack_norm_formula", "jack_upper_hook_product", "jack_lower_hook_product",
]

BASES = ("m", "p", "jack")


class DegreeOverflow(ValueError):
    """A result would need partitions above the declared degree bound."""


class SingularParameter(ArithmeticError):
    """The Jack parameter makes a Gram-Schmidt norm vanish."""


class SymVector:
    """Sparse combination of basis functions indexed by partitions of weight <= N."""

    __slots__ = ("N", "basis", "coeffs")

    def __init__(self, N: int, basis: str, coeffs: Mapping = None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.N, self.basis = N, basis
        clean = {}
        for lam, c in (coeffs or {}).items():
            lam = lam if isinstance(lam, Partition) else Partition(lam)
            if lam.weight > N:
                raise DegreeOverflow(f"{lam} exceeds degree bound {N}")
            if not c == 0:
                clean[lam] = clean[lam] + c if lam in clean else c
        self.coeffs = {k: v for k, v in clean.items() if not v == 0}

    @classmethod
    def basis_element(cls, N, basis, lam, coeff=1):
        return cls(N, basis, {Partition(lam): coeff})

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return SymVector(self.N, self.basis, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return SymVector(self.N, self.basis, {k: c * v for k, v in self.coeffs.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def _check(self, other):
        if self.basis != other.basis or self.N != other.N:
            raise ValueError("vectors in different bases or degree bounds")

    def homogeneous(self, n: int) -> "SymVector":
        return SymVector(self.N, self.basis, {k: v for k, v in self.coeffs.items() if k.weight == n})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, SymVector):
            return NotImplemented
        return self.basis == other.basis and (self - other).is_zero() if self.N == other.N else False

    def __repr__(self):
        body = " + ".join(f"({c})*{self.basis}{lam!r}" for lam, c in sorted(self.coeffs.items()))
        return f"SymVector[{body or '0'}]"


# ---------------------------------------------------------------- p <-> m

def _count_assignments(lam: Tuple[int, ...], mu: Tuple[int, ...]) -> int:
    """Number of maps from the parts of lam to the rows of mu with row sums mu."""
    target = list(mu)

    def rec(i):
        if i == len(lam):
            return 1 if all(t == 0 for t in target) else 0
        total = 0
        for j in range(len(target)):
            if target[j] >= lam[i]:
                target[j] -= lam[i]
                total += rec(i + 1)
                target[j] += lam[i]
        return total

    return rec(0)


@lru_cache(maxsize=None)
def p_to_m_matrix(n: int) -> Dict[Partition, Dict[Partition, int]]:
    """p_lam = sum_mu R[lam][mu] m_mu: R counts monomial x^mu in the product of power sums."""
    return {lam: {mu: c for mu in partitions(n) if (c := _count_assignments(tuple(lam), tuple(mu)))}
            for lam in partitions(n)}


@lru_cache(maxsize=None)
def m_to_p_matrix(n: int) -> Dict[Partition, Dict[Partition, mpq]]:
    """Inverse of :func:`p_to_m_matrix` by exact Gauss-Jordan elimination."""
    parts = partitions(n)
    R = p_to_m_matrix(n)
    size = len(parts)
    # rows of A: p_lam in terms of m; invert A so that m_mu = sum_lam Inv[mu][lam] p_lam
    A = [[mpq(R[lam].get(mu, 0)) for mu in parts] for lam in parts]
    inv = [[mpq(int(i == j)) for j in range(size)] for i in range(size)]
    for col in range(size):
        piv = next(r for r in range(col, size) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        s = A[col][col]
        A[col] = [x / s for x in A[col]]
        inv[col] = [x / s for x in inv[col]]
        for r in range(size):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    # inv is A^{-1}: (A^{-1})[mu-index][lam-index]; p = A m  =>  m = A^{-1} p
    return {parts[i]: {parts[j]: inv[i][j] for j in range(size) if inv[i][j] != 0} for i in range(size)}


def _convert_pm(v: SymVector, target: str) -> SymVector:
    out: Dict[Partition, object] = {}
    for lam, c in v.coeffs.items():
        table = p_to_m_matrix(lam.weight) if target == "m" else m_to_p_matrix(lam.weight)
        for mu, r in table[lam].items():
            out[mu] = out[mu] + c * r if mu in out else c * r
    return SymVector(v.N, target, out)


def basis_convert(v: SymVector, target: str, table: "JackTable" = None) -> SymVector:
    if target not in BASES:
        raise ValueError(f"unknown basis {target!r}")
    if v.basis == target:
        return v
    if "jack" in (v.basis, target):
        if table is None:
            raise ValueError("jack conversions need a JackTable")
        if table.N < v.N:
            raise DegreeOverflow("JackTable degree bound is below the vector's")
        if v.basis == "jack":
            return basis_convert(table.jack_to_m(v), target)
        return table.m_to_jack(basis_convert(v, "m"))
    return _convert_pm(v, target)


# ---------------------------------------------------------------- inner product

def _exact(beta):
    return mpq(beta) if isinstance(beta, int) else beta


def _pp(lam: Partition, beta):
    return mpq(lam.z()) / _exact(beta) ** lam.length if lam.length else 1


def inner_product(f: SymVector, g: SymVector, beta, table: "JackTable" = None):
    fp = basis_convert(f, "p", table)
    gp = basis_convert(g, "p", table)
    total = 0
    for lam, c in fp.coeffs.items():
        if lam in gp.coeffs:
            total = total + c * gp.coeffs[lam] * _pp(lam, beta)
    return total


# ---------------------------------------------------------------- Jack

def jack_upper_hook_product(lam: Partition, beta):
    """prod over cells of (beta L + A + 1)."""
    out = mpq(1)
    for a, b in lam.cells():
        out = out * (beta * lam.leg(a, b) + lam.arm(a, b) + 1)
    return out


def jack_lower_hook_product(lam: Partition, beta):
    """prod over cells of (beta (L + 1) + A)."""
    out = mpq(1)
    for a, b in lam.cells():
        out = out * (beta * (lam.leg(a, b) + 1) + lam.arm(a, b))
    return out


def jack_norm_formula(lam: Partition, beta):
    beta = _exact(beta)
    return jack_upper_hook_product(lam, beta) / jack_lower_hook_product(lam, beta)


class JackTable:
    """Monic Jack functions up to degree N in the monomial basis, with squared norms."""

    def __init__(self, N: int, beta):
        self.N, self.beta = N, _exact(beta)
        self.expansion: Dict[Partition, Dict[Partition, object]] = {}
        self.norm: Dict[Partition, object] = {}
        for n in range(N + 1):
            self._build(n)

    def _m_gram(self, n):
        """<m_lam, m_mu> computed through the power-sum expansion."""
        inv = m_to_p_matrix(n)
        parts = partitions(n)
        weight = {nu: _pp(nu, self.beta) for nu in parts}
        G = {}
        for i, lam in enumerate(parts):
            for mu in parts[i:]:
                s = 0
                a, b = inv[lam], inv[mu]
                for nu, c in a.items():
                    if nu in b:
                        s = s + c * b[nu] * weight[nu]
                G[lam, mu] = G[mu, lam] = s
        return G

    def _build(self, n):
        G = self._m_gram(n)
        order = list(reversed(partitions(n)))  # (1^n) first; lexicographic refines dominance
        done: List[Partition] = []
        for lam in order:
            vec = {lam: 1}
            for mu in done:
                # <m_lam, J_mu> / <J_mu, J_mu>
                num = 0
                for nu, c in self.expansion[mu].items():
                    num = num + c * G[lam, nu]
                if not num == 0:
                    f = num / self.norm[mu]
                    for nu, c in self.expansion[mu].items():
                        vec[nu] = vec.get(nu, 0) - f * c
            vec = {k: v for k, v in vec.items() if not v == 0}
            norm = 0
            for a, ca in vec.items():
                for b, cb in vec.items():
                    norm = norm + ca * cb * G[a, b]
            if norm == 0:
                raise SingularParameter(f"zero norm for J{lam!r} at beta={self.beta}")
            self.expansion[lam] = vec
            self.norm[lam] = norm
            done.append(lam)

    def jack(self, lam) -> SymVector:
        lam = Partition(lam)
        if lam.weight > self.N:
            raise DegreeOverflow(f"{lam} exceeds the table bound {self.N}")
        return SymVector(self.N, "m", self.expansion[lam])

    def jack_to_m(self, v: SymVector) -> SymVector:
        out = {}
        for lam, c in v.coeffs.items():
            if lam.weight > self.N:
                raise DegreeOverflow(f"{lam} exceeds the table bound {self.N}")
            for mu, e in self.expansion[lam].items():
                out[mu] = out[mu] + c * e if mu in out else c * e
        return SymVector(v.N, "m", out)

    def m_to_jack(self, v: SymVector) -> SymVector:
        """Triangular solve: peel off the lexicographically largest m-term repeatedly."""
        rem = dict(v.coeffs)
        out = {}
        while rem:
            lam = max(rem, key=lambda p: (p.weight, tuple(p)))
            c = rem[lam]
            if lam.weight > self.N:
                raise DegreeOverflow(f"{lam} exceeds the table bound {self.N}")
            out[lam] = c
            for mu, e in self.expansion[lam].items():
                val = rem.get(mu, 0) - c * e
                if val == 0:
                    rem.pop(mu, None)
                else:
                    rem[mu] = val
        return SymVector(v.N, "jack", out)

    def to_json(self):
        from .exactalg import scalar_json

        return {
            "N": self.N,
            "beta": scalar_json(self.beta),
            "jacks": [
                {"partition": list(lam),
                 "m": [[list(mu), scalar_json(c)] for mu, c in sorted(exp.items())],
                 "norm": scalar_json(self.norm[lam])}
                for lam, exp in sorted(self.expansion.items(), key=lambda t: (t[0].weight, tuple(t[0])))
            ],
        }


_TABLES: Dict[tuple, JackTable] = {}


def jack_table(N: int, beta) -> JackTable:
    """Build (or fetch) a JackTable. Tables for equal (N, beta) are shared."""
    key = (N, repr(beta) if not isinstance(beta, (int, mpq)) else beta)
    tab = _TABLES.get(key)
    if tab is None or tab.beta != beta:
        tab = JackTable(N, beta)
        _TABLES[key] = tab
    return tab


def p1_power_in_jack(n: int, beta, N: int = None) -> SymVector:
    """(p_1)^n = n! sum_{|lam|=n} J_lam / prod(beta L + A + 1)."""
    N = n if N is None else N
    if n > N:
        raise DegreeOverflow("n exceeds the degree bound")
    beta = _exact(beta)
    return SymVector(N, "jack", {lam: mpq(factorial(n)) / jack_upper_hook_product(lam, beta)
                                 for lam in partitions(n)})
