"""Edge contributions to Chern characters and Euler classes on X_k.

For a charge difference ``v`` these are the Young-diagram independent
factors ``ell^(n)_v`` attached to each exceptional divisor.  The Laurent
polynomials L^(n)_v are produced as signed lists of monomials
``(chi_1^n)^a (chi_2^n)^b``, i.e. torus weights ``a eps1^(n) + b eps2^(n)``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import floor
from typing import Dict, List, Sequence, Tuple

from gmpy2 import mpq

from .ale import ALESpace, InconsistentCharge, cartan_inverse, cartan_matrix, dot, holonomy_of_v, mat_vec
from .exactalg import as_rational

__all__ = [
    "EdgeMonomial", "EdgeData", "edge_data", "edge_chern", "edge_factor", "blowup_oracle_k2",
    "rank_defect", "edge_json", "InconsistentCharge",
]


@dataclass(frozen=True)
class EdgeMonomial:
    sign: int
    a: int
    b: int

    def weight(self, w1, w2):
        return self.a * w1 + self.b * w2

    def to_json(self):
        return {"sign": self.sign, "a": self.a, "b": self.b}


@dataclass
class EdgeData:
    """Intermediate integer data: holonomy, s-vector, minima d_n and cutoff m."""

    k: int
    v: Tuple[mpq, ...]
    j: int
    s: Tuple[int, ...]
    d: Tuple[int, ...]
    solved: Tuple[bool, ...]
    m: int


def _cinv(k: int, n: int, j: int) -> mpq:
    """(C^-1)^{nj} with the zero conventions for j = 0 and n = k."""
    if j == 0 or n == k or n == 0:
        return mpq(0)
    return cartan_inverse(k)[n - 1][j - 1]


def _check_charge(v: Sequence, k: int) -> Tuple[Tuple[mpq, ...], int]:
    if len(v) != k - 1:
        raise InconsistentCharge(f"need {k - 1} components for k={k}")
    v = tuple(as_rational(x) for x in v)
    j = holonomy_of_v(v, k)
    for l, vl in enumerate(v, 1):
        x = k * vl + l * j
        if x.denominator != 1 or int(x) % k:
            raise InconsistentCharge(f"k v_{l} is not congruent to -{l} j mod k for v={v}")
    return v, j


def edge_data(v: Sequence, k: int, cc_index: str = "n") -> EdgeData:
    """Solve the quadratic membership conditions by scanning 0 <= i <= |s_n|.

    ``cc_index`` picks the diagonal entry of C^-1 appearing in the constant
    term: ``"n"`` uses (C^-1)^{nn}, ``"j"`` uses (C^-1)^{jj}.
    """
    v, j = _check_charge(v, k)
    C = cartan_matrix(k)
    s = tuple(int(v[n - 1] - _cinv(k, n, j)) for n in range(1, k))
    d, solved = [], []
    for n in range(1, k):
        w = list(v)
        for p in range(1, n):
            w[p - 1] -= s[p - 1]
        Cw = mat_vec(C, w)
        lin = Cw[n - 1]  # w . C e_n
        cc = _cinv(k, n, n) if cc_index == "n" else _cinv(k, j, j)
        const = (dot(w, Cw) - cc) / 2
        sn = s[n - 1]
        sgn = -1 if sn >= 0 else 1
        sols = [i for i in range(abs(sn) + 1) if i * i + sgn * i * lin + const == 0]
        solved.append(bool(sols))
        d.append(min(sols) if sols else abs(sn))
    m = next((n for n in range(1, k) if solved[n - 1]), k - 1)
    return EdgeData(k, v, j, s, tuple(d), tuple(solved), m)


def _block(i_lo, i_hi, t_lo, t_hi_fn, a_fn, b_sign, sign, out: Counter):
    for i in range(i_lo, i_hi + 1):
        for t in range(t_lo, t_hi_fn(i) + 1):
            out[(a_fn(i), b_sign * t)] += sign


def _printed_L(data: EdgeData, n: int, limits: str = "printed") -> Counter:
    """L^(n) from the six branch formulas.

    ``limits="full"`` repairs the mixed a > 0 branch so that its two sums
    cover i in [a - d, a - 1] like every other branch: the second sum stops
    at a - 1 (printed: 2a + X - 2) and the inner bound of the first sum is
    -2i - X - 1 as in the pure negative branch (printed: 2i - X - 1).
    """
    k, j = data.k, data.j
    a = data.s[n - 1]
    s_next = 0 if n == k - 1 else data.s[n]
    X = (1 if n == j else 0) - s_next
    h, hm = int(floor(mpq(X, 2))), int(floor(mpq(-X, 2)))
    d = data.d[n - 1]
    out: Counter = Counter()
    if a > 0:
        if X + 2 * (a - d) >= 0:
            _block(a - d, a - 1, 0, lambda i: 2 * i + X, lambda i: i + h, 1, -1, out)
        elif 2 <= X + 2 * a:
            first = (lambda i: 2 * i - X - 1) if limits == "printed" else (lambda i: -2 * i - X - 1)
            _block(a - d, -h - 1, 1, first, lambda i: i - hm, -1, 1, out)
            top = 2 * a + X - 2 if limits == "printed" else a - 1
            _block(-h, top, 0, lambda i: 2 * i + X, lambda i: i + h, 1, -1, out)
        else:
            _block(a - d, a - 1, 1, lambda i: -2 * i - X - 1, lambda i: i - hm, -1, 1, out)
    elif a < 0:
        if X + 2 * a < 2 - 2 * d:
            _block(1 - a - d, -a, 1, lambda i: 2 * i - X - 1, lambda i: -i - hm, -1, -1, out)
        elif X + 2 * a < 0:
            _block(1 - a - d, h, 0, lambda i: -2 * i + X, lambda i: -i + h, 1, 1, out)
            _block(h + 1, -a, 1, lambda i: 2 * i - X - 1, lambda i: -i - hm, -1, -1, out)
        else:
            _block(1 - a - d, -a, 0, lambda i: -2 * i + X, lambda i: -i + h, 1, 1, out)
    return out


def edge_chern(v: Sequence, k: int, cc_index: str = "n", sign: str = "flipped",
               limits: str = "full") -> List[List[EdgeMonomial]]:
    """Signed monomial lists L^(n)_v for n = 1..k-1.

    The printed branch formulas carry the opposite overall sign to the
    rank identity and to the k = 2 blowup factors; ``sign="flipped"``
    (the default) multiplies them by -1, ``sign="printed"`` keeps them.
    ``limits`` is passed to the branch evaluation (``"full"`` or ``"printed"``).
    """
    data = edge_data(v, k, cc_index)
    glob = -1 if sign == "flipped" else 1
    lists = []
    for n in range(1, k):
        if n > data.m or data.d[n - 1] == 0:
            lists.append([])
            continue
        lists.append(_expand(_printed_L(data, n, limits), glob))
    return lists


def _expand(cnt: Counter, glob: int) -> List[EdgeMonomial]:
    out = []
    for (a, b), c in sorted(cnt.items()):
        for _ in range(abs(c)):
            out.append(EdgeMonomial(glob * (1 if c > 0 else -1), a, b))
    return out


def edge_factor(v: Sequence, k: int, mu, e1, e2, cc_index: str = "n", sign: str = "flipped",
                patch_weights: bool = True, limits: str = "full"):
    """(ell_total, ell_c1, signed_count).

    With ``patch_weights`` the n-th factor is evaluated at the weights
    (eps1^(n), eps2^(n)) of the n-th chart; otherwise at (e1, e2) directly,
    which is how the k = 2 closed form is written.
    """
    lists = edge_chern(v, k, cc_index, sign, limits)
    X = ALESpace(k, e1, e2)
    total, c1, count = 1, 0, 0
    for n, mons in enumerate(lists, 1):
        w1, w2 = (X.eps1(n), X.eps2(n)) if patch_weights else (e1, e2)
        for mono in mons:
            sigma = mono.weight(w1, w2)
            total = total * (mu + sigma) if mono.sign > 0 else total / (mu + sigma)
            c1 = c1 + mono.sign * sigma
            count += mono.sign
    return total, c1, count


def rank_defect(v: Sequence, k: int) -> mpq:
    """1/2 v.Cv - j(k-j)/(2k), the expected signed count."""
    v, j = _check_charge(v, k)
    return dot(v, mat_vec(cartan_matrix(k), v)) / 2 - mpq(j * (k - j), 2 * k)


def blowup_oracle_k2(v, mu, e1, e2):
    """Closed product for k = 2 in terms of floor(v) and the fractional part."""
    v = as_rational(v)
    if (2 * v).denominator != 1:
        raise InconsistentCharge("2 v must be an integer for k = 2")
    fl = int(floor(v))
    fr = v - fl
    out = mpq(1)
    if fl > 0:
        for i in range(fl):
            for t in range(int(2 * i + 2 * fr) + 1):
                out = out * (mu + i * e1 + t * e2)
    elif fl < 0:
        for i in range(1, -fl + 1):
            for t in range(1, int(2 * i - 2 * fr - 1) + 1):
                out = out * (mu + (2 * fr - i) * e1 - t * e2)
    return out


def edge_json(v: Sequence, k: int, cc_index: str = "n") -> List[Dict]:
    return [{"n": n, "monomials": [m.to_json() for m in mons]}
            for n, mons in enumerate(edge_chern(v, k, cc_index), 1)]
