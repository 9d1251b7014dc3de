"""Instanton partition functions of abelian quiver gauge theories on C^2.

Fixed points of Hilb^n(C^2) are partitions; every contribution is a product
of the factors :func:`m_bifund` and :func:`m_fund`.  Scalars can be exact
rational functions (symbolic mode) or rationals (sampled mode); nothing
here cares which.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Sequence, Tuple

from gmpy2 import mpq

from .exactalg import QSeries, RatFunc, eta_series, series_compose
from .partitions import Partition, partitions

EMPTY = Partition()

__all__ = [
    "m_bifund", "m_fund", "eu_plus", "eu_minus", "tangent_euler", "QuiverSpec",
    "z_quiver_c2", "closed_forms_c2", "coupling_vars", "symbolic_parameters", "cyclic_trace",
]


def _cells(Y: Partition):
    for a, row in enumerate(Y, 1):
        for b in range(1, row + 1):
            yield a, b


def m_bifund(Y1: Partition, Y2: Partition, a, e1, e2):
    """Equivariant Euler class of the bifundamental fibre at (Y1, Y2) with mass ``a``."""
    Y1t, Y2t = Y1.transpose(), Y2.transpose()
    out = mpq(1)
    for s_a, s_b in _cells(Y1):
        L = Y2t.part(s_b) - s_a
        A = Y1.part(s_a) - s_b
        out = out * (a - L * e1 + (A + 1) * e2)
    for s_a, s_b in _cells(Y2):
        L = Y1t.part(s_b) - s_a
        A = Y2.part(s_a) - s_b
        out = out * (a + (L + 1) * e1 - A * e2)
    return out


def m_fund(Y: Partition, a, e1, e2):
    """prod over cells of (a - L' e1 - A' e2)."""
    out = mpq(1)
    for s_a, s_b in _cells(Y):
        out = out * (a - (s_a - 1) * e1 - (s_b - 1) * e2)
    return out


def eu_plus(Y: Partition, e1, e2):
    Yt = Y.transpose()
    out = mpq(1)
    for a, b in _cells(Y):
        out = out * ((Yt.part(b) - a + 1) * e1 - (Y.part(a) - b) * e2)
    return out


def eu_minus(Y: Partition, e1, e2):
    Yt = Y.transpose()
    out = mpq(1)
    for a, b in _cells(Y):
        out = out * ((Yt.part(b) - a) * e1 - (Y.part(a) - b + 1) * e2)
    return out


def tangent_euler(Y: Partition, e1, e2):
    """Euler class of the tangent space at the fixed point, m_{Y,Y}(0)."""
    return m_bifund(Y, Y, 0, e1, e2)


@dataclass
class QuiverSpec:
    """Abelian quiver shape with its masses.

    ``kind`` is ``pure``, ``A_hat`` (r+1 vertices on a cycle, masses
    mu_0..mu_r on the arrows) or ``A`` (a chain of r+1 vertices with masses
    mu_0 (end fundamental), mu_1..mu_r (arrows), mu_{r+1} (end fundamental)).
    """

    kind: str
    r: int = 0
    masses: Sequence = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind not in ("pure", "A_hat", "A"):
            raise ValueError(f"unknown quiver kind {self.kind!r}")
        if self.r < 0:
            raise ValueError("r must be nonnegative")
        need = {"pure": 0, "A_hat": self.r + 1, "A": self.r + 2}[self.kind]
        if len(self.masses) != need:
            raise ValueError(f"{self.kind} with r={self.r} needs {need} masses, got {len(self.masses)}")

    @property
    def n_vertices(self) -> int:
        return 1 if self.kind == "pure" else self.r + 1

    @classmethod
    def parse(cls, text: str, masses=()):
        """``pure``, ``ahat:R`` or ``a:R``."""
        t = text.strip().lower()
        if t == "pure":
            return cls("pure", 0, tuple(masses))
        name, _, r = t.partition(":")
        kind = {"ahat": "A_hat", "a": "A"}.get(name)
        if kind is None or not r.isdigit():
            raise ValueError(f"bad quiver description {text!r}")
        return cls(kind, int(r), tuple(masses))

    def mass_names(self) -> List[str]:
        n = {"pure": 0, "A_hat": self.r + 1, "A": self.r + 2}[self.kind]
        return [f"mu{i}" for i in range(n)]


def coupling_vars(spec: QuiverSpec) -> Tuple[str, ...]:
    return ("q",) if spec.n_vertices == 1 else tuple(f"q{i}" for i in range(spec.n_vertices))


def _vertex_tuples(nv: int, order: int):
    """All nv-tuples of partitions with total weight <= order."""
    for ws in product(range(order + 1), repeat=nv):
        if sum(ws) > order:
            continue
        for lam in product(*(partitions(w) for w in ws)):
            yield ws, lam


def fixed_point_weight(spec: QuiverSpec, lam: Sequence[Partition], e1, e2):
    """Contribution of one fixed point (without the coupling monomial)."""
    mu = spec.masses
    den = mpq(1)
    for Y in lam:
        den = den * tangent_euler(Y, e1, e2)
    if spec.kind == "pure":
        return 1 / den
    num = mpq(1)
    if spec.kind == "A_hat":
        n = spec.r + 1
        for v in range(n):
            num = num * m_bifund(lam[v], lam[(v + 1) % n], mu[v], e1, e2)
    else:
        # the end fundamentals are bifundamentals against the empty diagram
        r = spec.r
        num = m_bifund(lam[0], EMPTY, mu[0], e1, e2) * m_bifund(EMPTY, lam[r], mu[r + 1], e1, e2)
        for v in range(r):
            num = num * m_bifund(lam[v + 1], lam[v], mu[v + 1], e1, e2)
    return num / den


def z_quiver_c2(spec: QuiverSpec, order: int, e1, e2) -> QSeries:
    """Fixed-point sum truncated at total degree ``order`` in the couplings."""
    names = coupling_vars(spec)
    terms: Dict[tuple, object] = {}
    for ws, lam in _vertex_tuples(spec.n_vertices, order):
        w = fixed_point_weight(spec, lam, e1, e2)
        e = tuple(mpq(x) for x in ws)
        terms[e] = terms[e] + w if e in terms else w
    return QSeries(names, terms, order)


def _euler_product(order: int, power, var_row: Sequence[int], names) -> QSeries:
    """prod_{n>=1} (1 - x^n)^power with x the monomial ``var_row`` in ``names``."""
    o = mpq(order, sum(var_row))
    phi = eta_series(o + mpq(1, 24)).shift((mpq(-1, 24),))
    body = series_compose(phi, "pow", a=power, order=o)
    return QSeries(names, {tuple(e[0] * r for r in var_row): c for e, c in body.terms.items()}, order)


def _binomial_factor(order: int, power, var_row: Sequence[int], names) -> QSeries:
    """(1 - x)^power, x a monomial."""
    one = QSeries.one(names)
    x = QSeries.monomial(names, tuple(mpq(r) for r in var_row))
    return series_compose(one - x, "pow", a=power, order=order)


def closed_forms_c2(spec: QuiverSpec, order: int, e1, e2, variant: str = "printed") -> QSeries:
    """Product formulas for the partition functions.

    For the cyclic quiver two versions exist.  ``printed`` is the product of
    eta functions of the individual couplings; ``trace`` is the free-boson
    torus trace of the vertex operators (see :func:`cyclic_trace`).  They
    agree for r = 0 only.
    """
    names = coupling_vars(spec)
    nv = spec.n_vertices
    mu = spec.masses
    if spec.kind == "pure":
        x = QSeries.monomial(names, (mpq(1),), 1 / (e1 * e2))
        return series_compose(x, "exp", order=order)
    if spec.kind == "A_hat":
        if variant == "trace":
            return cyclic_trace(mu, order, e1, e2)
        if variant != "printed":
            raise ValueError(f"unknown variant {variant!r}")
        out = QSeries.one(names, order)
        for v in range(nv):
            row = [1 if i == v else 0 for i in range(nv)]
            expo = -mu[v] * (mu[v] + e1 + e2) / (e1 * e2)
            out = out * _euler_product(order, expo, row, names)
        return out * _euler_product(order, mpq(-1), [1] * nv, names)
    # chain: z_v = q_0 ... q_{v-1}, so z_v'/z_v = q_v ... q_{v'-1}
    out = QSeries.one(names, order)
    for v in range(spec.r + 2):
        for w in range(v + 1, spec.r + 2):
            row = [1 if v <= i < w else 0 for i in range(nv)]
            expo = -mu[w] * (mu[v] + e1 + e2) / (e1 * e2)
            out = out * _binomial_factor(order, expo, row, names)
    return out


def cyclic_trace(mu: Sequence, order: int, e1, e2) -> QSeries:
    """Tr q^L0 V(mu_0, z_0) ... V(mu_r, z_r) on the Fock space, z_v = q_1 ... q_v.

    With K(a, b) = mu_b (mu_a + e1 + e2) / (e1 e2) the normal-ordering and
    trace identities of a single free boson give

        prod_n (1 - q^n)^-1
        prod_{a<b} (1 - z_b/z_a)^(-K(b, a))
        prod_{a,b} prod_{n>=1} (1 - q^n z_a/z_b)^(-K(a, b)),     q = q_0 ... q_r.
    """
    nv = len(mu)
    names = tuple(f"q{i}" for i in range(nv)) if nv > 1 else ("q",)

    def K(a, b):
        return mu[b] * (mu[a] + e1 + e2) / (e1 * e2)

    out = _euler_product(order, mpq(-1), [1] * nv, names)
    for a in range(nv):
        for b in range(a + 1, nv):
            row = [1 if a < i <= b else 0 for i in range(nv)]
            out = out * _binomial_factor(order, -K(b, a), row, names)
    for a in range(nv):
        for b in range(nv):
            for n in range(1, order + 1):
                if a == b:
                    row = [n] * nv
                elif a > b:
                    row = [n + (1 if b < i <= a else 0) for i in range(nv)]
                else:
                    row = [n - 1 + (1 if (i <= a or i > b) else 0) for i in range(nv)]
                if sum(row) > order:
                    continue
                out = out * _binomial_factor(order, -K(a, b), row, names)
    return out


def symbolic_parameters(spec: QuiverSpec):
    """(e1, e2, masses) as rational-function generators."""
    names = ["e1", "e2"] + spec.mass_names()
    g = RatFunc.gens(names)
    return g["e1"], g["e2"], tuple(g[n] for n in spec.mass_names())
