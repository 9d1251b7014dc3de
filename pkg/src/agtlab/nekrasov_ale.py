"""Instanton partition functions on the ALE space X_k.

A fixed point is a tuple of charges ``u`` (one per quiver vertex) together
with a k-tuple of partitions per vertex, one partition for each toric chart.
Contributions factor over the charts, with masses shifted by the charge
differences, times the diagram-independent edge factors of :mod:`edges`.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .ale import (ALESpace, Charge, InconsistentCharge, character_chi, conformal_defect,
                  enumerate_charges, eta_power_in, series_vars)
from .edges import edge_factor
from .exactalg import QSeries, as_rational, is_zero, rational_str, series_compose
from .nekrasov_c2 import EMPTY, QuiverSpec, m_bifund
from .partitions import Partition, enumerate_tuples

__all__ = [
    "TruncationWarning", "ALEQuiverSpec", "matrix_element_ale", "z_pure_ale", "z_quiver_ale",
    "closed_forms_ale", "agt_report", "ale_series_vars", "mass_shifts",
]


class TruncationWarning(UserWarning):
    """The charge cutoff is below the q-order, so lattice terms may be missing."""


def ale_series_vars(k: int, n_vertices: int = 1) -> Tuple[Tuple[str, ...], Tuple[int, ...]]:
    """Couplings first (weight 1), then the xi fugacities (weight 0)."""
    if n_vertices == 1:
        return series_vars(k)
    qs = tuple(f"q{a}" for a in range(n_vertices))
    xs = tuple(f"xi{a}_{i}" for a in range(n_vertices) for i in range(1, k))
    return qs + xs, (1,) * n_vertices + (0,) * len(xs)


def _charge(u, k) -> Charge:
    return u if isinstance(u, Charge) else Charge(tuple(u), k)


def mass_shifts(v: Sequence, X: ALESpace) -> List:
    """s_i = v_i eps1^(i) + v_(i-1) eps2^(i), with v_0 = v_k = 0."""
    k = X.k
    vv = [mpq(0)] + [as_rational(x) for x in v] + [mpq(0)]
    return [vv[i] * X.eps1(i) + vv[i - 1] * X.eps2(i) for i in range(1, k + 1)]


def _patch_bifund(Y1: Sequence[Partition], Y2: Sequence[Partition], masses: Sequence, X: ALESpace):
    out = mpq(1)
    for i in range(1, X.k + 1):
        out = out * m_bifund(Y1[i - 1], Y2[i - 1], masses[i - 1], X.eps1(i), X.eps2(i))
    return out


def _tangent(Y: Sequence[Partition], X: ALESpace):
    return _patch_bifund(Y, Y, [0] * X.k, X)


def matrix_element_ale(Y1: Sequence[Partition], u1, j1: Optional[int], Y2: Sequence[Partition], u2,
                       j2: Optional[int], mu, k: int, e1, e2, cc_index: str = "n",
                       shift: bool = True, edges: bool = True):
    """Bifundamental weight between fixed points [Y1, u1] and [Y2, u2].

    Returns ``(value, z_exponent, x_exponent)``: the product over charts of
    m_{Y1^i, Y2^i}(mu - s_i) with s_i built from v21 = v2 - v1, times the
    edge factors ell_{v21}; the z-exponent |Y2| - |Y1| + Delta_2 - Delta_1;
    and the x-exponent v21.  ``j1``/``j2`` may be None; if given they must
    match the holonomy of the charges.
    """
    c1, c2 = _charge(u1, k), _charge(u2, k)
    for c, j in ((c1, j1), (c2, j2)):
        if j is not None and j % k != c.j:
            raise InconsistentCharge(f"charge {c.u} has holonomy {c.j}, not {j}")
    if len(Y1) != k or len(Y2) != k:
        raise ValueError(f"need {k} partitions per fixed point")
    Y1 = [Partition(y) for y in Y1]
    Y2 = [Partition(y) for y in Y2]
    X = ALESpace(k, e1, e2)
    v21 = tuple(b - a for a, b in zip(c1.v, c2.v))
    s = mass_shifts(v21, X) if shift else [0] * k
    value = _patch_bifund(Y1, Y2, [mu - x for x in s], X)
    if edges and k > 1:
        value = value * edge_factor(v21, k, mu, e1, e2, cc_index)[0]
    z = sum(y.weight for y in Y2) - sum(y.weight for y in Y1) + c2.delta - c1.delta
    return value, mpq(z), v21


@dataclass
class ALEQuiverSpec:
    """A quiver on X_k with holonomies and truncation.

    ``mass_shift`` selects how fundamental legs of the A-type chain see the
    charge of their vertex:

    * ``"matrix"``: as bifundamentals against a frozen vertex of charge 0,
      i.e. m_{Y,0}(mu_0 + s) and m_{0,Y}(mu_{r+1} - s) with edge factors;
    * ``"printed"``: both masses shifted to mu - s, no edge factor;
    * ``"unshifted"``: fundamental masses left alone; arrows still shifted.
    * ``"none"``: no shifts anywhere (structural regression).
    ``edge_factors=False`` drops every ell factor.
    """

    quiver: QuiverSpec
    k: int
    j: Tuple[int, ...]
    order: object
    dmax: object = None
    mass_shift: str = "unshifted"
    edge_factors: bool = True
    cc_index: str = "n"

    def __post_init__(self):
        nv = self.quiver.n_vertices
        self.j = tuple(int(x) for x in self.j)
        if len(self.j) != nv:
            raise ValueError(f"need {nv} holonomies, got {len(self.j)}")
        if any(not 0 <= x < self.k for x in self.j):
            raise ValueError("holonomies must lie in 0..k-1")
        if self.mass_shift not in ("matrix", "printed", "unshifted", "none"):
            raise ValueError(f"unknown mass_shift {self.mass_shift!r}")
        self.order = as_rational(self.order)
        self.dmax = self.order if self.dmax is None else as_rational(self.dmax)
        if self.dmax < self.order:
            warnings.warn(f"dmax {self.dmax} < order {self.order}: lattice terms may be missing",
                          TruncationWarning, stacklevel=2)

    def arrows(self) -> List[Tuple[int, int, int]]:
        """(first, second, mass index) for each bifundamental m_{Y_first, Y_second}."""
        q, nv = self.quiver, self.quiver.n_vertices
        if q.kind == "A_hat":
            return [(a, (a + 1) % nv, a) for a in range(nv)]
        if q.kind == "A":
            return [(a + 1, a, a + 1) for a in range(q.r)]
        return []

    def to_json(self):
        return {
            "quiver": self.quiver.kind, "r": self.quiver.r, "k": self.k, "j": list(self.j),
            "order": rational_str(self.order), "dmax": rational_str(self.dmax),
            "mass_shift": self.mass_shift, "edge_factors": self.edge_factors,
            "cc_index": self.cc_index,
        }


def _is_conformal(spec: ALEQuiverSpec, charges: Sequence[Charge]) -> bool:
    kind = spec.quiver.kind
    if kind == "pure":
        return True
    k = spec.k
    nbrs: List[list] = [[] for _ in charges]
    for a, b, _ in spec.arrows():
        jr = (charges[b].j - charges[a].j) % k
        nbrs[a].append((jr, charges[b].v))
        nbrs[b].append((jr, charges[a].v))
    for a, c in enumerate(charges):
        if conformal_defect(k, c.j, c.v, nbrs[a]) != 0:
            return False
    return True


def _charge_tuples(spec: ALEQuiverSpec):
    per = [enumerate_charges(j, spec.k, spec.dmax) for j in spec.j]
    for cs in product(*per):
        if sum(c.delta for c in cs) > spec.order:
            continue
        if _is_conformal(spec, cs):
            yield cs


def _vertex_diagrams(k: int, nv: int, budget: int):
    """Per-vertex k-tuples of partitions with total weight <= budget."""
    for ws in product(range(budget + 1), repeat=nv):
        if sum(ws) > budget:
            continue
        for combo in product(*(enumerate_tuples(k, w) for w in ws)):
            yield ws, combo


def _charge_data(spec: ALEQuiverSpec, cs: Sequence[Charge], X: ALESpace):
    """Per-arrow and per-leg (masses per chart, constant factor) for a charge tuple."""
    k, mu = spec.k, spec.quiver.masses
    shift = spec.mass_shift != "none"
    legs = []
    const = mpq(1)
    zero = [0] * k

    def ell(v, m):
        if not spec.edge_factors or k == 1:
            return 1
        return edge_factor(v, k, m, X.e1, X.e2, spec.cc_index)[0]

    for a, b, mi in spec.arrows():
        v21 = tuple(y - x for x, y in zip(cs[a].v, cs[b].v))
        s = mass_shifts(v21, X) if shift else zero
        legs.append((a, b, [mu[mi] - x for x in s]))
        const = const * ell(v21, mu[mi])
    if spec.quiver.kind == "A":
        r = spec.quiver.r
        v0, vr = cs[0].v, cs[r].v
        mode = spec.mass_shift
        if mode == "matrix":
            s0, sr = mass_shifts(v0, X), mass_shifts(vr, X)
            legs.append((0, None, [mu[0] + x for x in s0]))
            legs.append((None, r, [mu[r + 1] - x for x in sr]))
            const = const * ell(tuple(-x for x in v0), mu[0]) * ell(vr, mu[r + 1])
        elif mode == "printed":
            s0, sr = mass_shifts(v0, X), mass_shifts(vr, X)
            legs.append((0, None, [mu[0] - x for x in s0]))
            legs.append((None, r, [mu[r + 1] - x for x in sr]))
        else:
            legs.append((0, None, [mu[0]] * k))
            legs.append((None, r, [mu[r + 1]] * k))
    return legs, const


def _fixed_point_sum(spec: ALEQuiverSpec, e1, e2) -> QSeries:
    k, nv = spec.k, spec.quiver.n_vertices
    X = ALESpace(k, e1, e2)
    names, weights = ale_series_vars(k, nv)
    empty = [EMPTY] * k
    terms: Dict[tuple, object] = {}
    for cs in _charge_tuples(spec):
        legs, const = _charge_data(spec, cs, X)
        if is_zero(const):
            continue
        budget = int(spec.order - sum(c.delta for c in cs))
        xi = tuple(x for c in cs for x in c.v)
        for ws, Ys in _vertex_diagrams(k, nv, budget):
            den = mpq(1)
            for Y in Ys:
                den = den * _tangent(Y, X)
            num = const
            for a, b, masses in legs:
                num = num * _patch_bifund(empty if a is None else Ys[a], empty if b is None else Ys[b], masses, X)
            e = tuple(w + c.delta for w, c in zip(ws, cs)) + xi
            w = num / den
            terms[e] = terms[e] + w if e in terms else w
    return QSeries(names, terms, spec.order, weights)


def z_pure_ale(k: int, j: int, order, dmax=None, e1=None, e2=None) -> QSeries:
    """sum_{u in U_j} q^Delta_u xi^(C^-1 u) prod_i Z_C2(eps^(i); q), truncated at q-order ``order``."""
    spec = ALEQuiverSpec(QuiverSpec("pure"), k, (j,), order, dmax)
    return _fixed_point_sum(spec, e1, e2)


def z_quiver_ale(spec: ALEQuiverSpec, e1, e2) -> QSeries:
    """Fixed-point sum of a quiver theory on X_k (pure, cyclic or chain)."""
    return _fixed_point_sum(spec, e1, e2)


def _q_only(k: int, nv: int, s: QSeries) -> QSeries:
    names, weights = ale_series_vars(k, nv)
    rows = [[1 if i == a else 0 for i in range(len(names))] for a in range(len(s.vars))]
    return s.substitute_monomial(rows, names, weights)


def closed_forms_ale(kind: str, k: int, j: int, order, masses=(), e1=None, e2=None) -> QSeries:
    """Product formulas: ``pure``, ``A_hat_0`` or ``A_0`` on X_k.

    * pure: eta^(k-1) chi_j exp(q / (k e1 e2))
    * A_hat_0: q^(k/24) eta^-1 chi_j (q^(-1/24) eta)^(-mu (mu + e1 + e2) / (k e1 e2))
    * A_0: eta^(k-1) chi_conf_j (1 - q)^(-mu_1 (mu_0 + e1 + e2) / (k e1 e2))
    """
    order = as_rational(order)
    names, weights = ale_series_vars(k, 1)
    E = e1 + e2
    if kind == "pure":
        front = eta_power_in(k, k - 1, order + 1) * character_chi(j, k, order)
        x = QSeries.monomial(("q",), (mpq(1),), 1 / (k * e1 * e2))
        return (front * _q_only(k, 1, series_compose(x, "exp", order=order))).truncate(order)
    if kind == "A_hat_0":
        (mu,) = masses
        expo = -mu * (mu + E) / (k * e1 * e2)
        chi = character_chi(j, k, order)
        inv_eta = eta_power_in(k, -1, order + 1)
        front = (inv_eta * chi).truncate(order - mpq(k, 24)).shift((mpq(k, 24),) + (0,) * (k - 1))
        phi = _euler(order, expo)
        return (front * _q_only(k, 1, phi)).truncate(order)
    if kind == "A_0":
        mu0, mu1 = masses
        expo = -mu1 * (mu0 + E) / (k * e1 * e2)
        front = eta_power_in(k, k - 1, order + 1) * character_chi(j, k, order, conformal=True)
        one = QSeries.one(("q",))
        binom = series_compose(one - QSeries.monomial(("q",), (mpq(1),)), "pow", a=expo, order=order)
        return (front * _q_only(k, 1, binom)).truncate(order)
    raise ValueError(f"unknown closed form {kind!r}")


def _euler(order, power) -> QSeries:
    """prod_{n>=1} (1 - q^n)^power in the single variable q."""
    from .exactalg import eta_series

    phi = eta_series(order + mpq(1, 24)).shift((mpq(-1, 24),))
    return series_compose(phi, "pow", a=power, order=order)


def agt_report(pairs: Sequence[Tuple[str, QSeries, QSeries]], samples: Sequence = (), seeds: Sequence = ()):
    """Exact comparison of (label, computed, closed form) pairs.

    Each entry gets the sorted list of disagreeing exponents.  When
    ``samples`` is given the series are compared after evaluating at every
    assignment (their seeds are recorded in the verdict).
    """
    entries = []
    ok = True
    for label, a, b in pairs:
        if samples:
            diffs = set()
            for s in samples:
                diffs.update(a.evaluate(s).difference(b.evaluate(s)))
            diff = sorted(diffs, key=lambda e: (a.degree(e), e))
        else:
            diff = a.difference(b)
        passed = not diff
        ok = ok and passed
        entries.append({
            "label": label, "pass": passed, "vars": list(a.vars),
            "diff": [[rational_str(x) for x in e] for e in diff],
        })
    out = {"pass": ok, "mode": "sampled" if samples else "symbolic", "entries": entries}
    if samples:
        out["seeds"] = list(seeds)
    return out
