"""Truncated Fock modules, bosonic vertex operators and the Frenkel-Kac action.

A :class:`FockSpace` is fixed by a list of boson species ``a^s`` with
commutators ``[a^s_m, a^t_n] = m delta_{m+n,0} G_st``.  Three families are
provided:

* ``FockSpace.rank_k(k, e1, e2)``: species ``p^1..p^k`` with
  ``G = diag(1/beta_i)``, the Fock space of the Hilbert schemes on X_k
  (``k = 1`` is C^2 with ``beta = -e1/e2``);
* ``FockSpace.lattice(k)``: species ``q^1..q^(k-1)`` with ``G = C``, the
  Fock space of the root-lattice Heisenberg algebra;
* ``FockSpace.single(beta)``: one boson with ``[a_m, a_-m] = m / beta``.

Basis states are products of creation modes, one partition per species,
optionally tensored with a lattice label ``u`` (the charge whose weight is
``v = C^-1 u``).  Every operator application is exact; a declared grade
bound only guards against silently leaving the truncated module.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from gmpy2 import mpq

from .ale import ALESpace, Charge, InconsistentCharge, cartan_inverse, cartan_matrix
from .exactalg import QuadExt, as_rational, scalar_json
from .partitions import Partition, partitions

__all__ = [
    "GradeOverflow", "MissingLatticeLabel", "FockBasisState", "FockVector", "FockSpace",
    "Gen", "OperatorExpr", "gen", "apply", "commutator", "commutator_check", "cocycle",
    "basis_states", "co_matrix_element", "co_sign_calibration", "integrals_of_motion",
    "gaiotto_vector", "gaiotto_whittaker", "whittaker_solve", "primary_field_check",
    "chevalley_check", "virasoro_check", "fock_inner", "sym_to_fock", "fock_to_sym",
    "affine_cartan", "fixed_point_class",
]


class GradeOverflow(ValueError):
    """An operator pushed a state beyond the declared grade bound."""


class MissingLatticeLabel(ValueError):
    """A lattice operator met a state without a lattice label."""


# ---------------------------------------------------------------- scalars

def _mul(a, b):
    # RatFunc * QuadExt has to be dispatched from the QuadExt side
    if isinstance(b, QuadExt) and not isinstance(a, QuadExt):
        return b * a
    return a * b


def _add(a, b):
    if isinstance(b, QuadExt) and not isinstance(a, QuadExt):
        return b + a
    return a + b


def _is0(c) -> bool:
    return c == 0


# ---------------------------------------------------------------- states

class FockBasisState(NamedTuple):
    """prod_s a^s_{-lambda^s} |0>  (x)  [label]."""

    parts: Tuple[Partition, ...]
    u: Optional[Tuple[int, ...]] = None

    @property
    def grade(self) -> int:
        return sum(p.weight for p in self.parts)

    def sort_key(self):
        return (self.grade, tuple(tuple(p) for p in self.parts), self.u or ())

    def charge(self, k: int) -> Charge:
        if self.u is None:
            raise MissingLatticeLabel("state carries no lattice label")
        return Charge(self.u, k)

    def label_str(self) -> str:
        body = ";".join(",".join(map(str, p)) for p in self.parts)
        return f"[{body}]" + ("" if self.u is None else "@(" + ",".join(map(str, self.u)) + ")")

    def to_json(self):
        out = {"parts": [list(p) for p in self.parts]}
        if self.u is not None:
            out["u"] = list(self.u)
        return out


def _with_part(parts, s, m):
    lst = sorted(parts[s] + (m,), reverse=True)
    return parts[:s] + (Partition._trusted(tuple(lst)),) + parts[s + 1:]


def _without_part(parts, s, m):
    lst = list(parts[s])
    lst.remove(m)
    return parts[:s] + (Partition._trusted(tuple(lst)),) + parts[s + 1:]


class FockVector:
    """Sparse combination of basis states; ``bound`` is the grade bound (None: unbounded)."""

    __slots__ = ("ns", "bound", "coeffs")

    def __init__(self, ns: int, coeffs: Dict[FockBasisState, object] = None, bound: Optional[int] = None):
        self.ns, self.bound = ns, bound
        clean = {}
        for s, c in (coeffs or {}).items():
            if len(s.parts) != ns:
                raise ValueError(f"state {s} has {len(s.parts)} species, expected {ns}")
            if bound is not None and s.grade > bound:
                raise GradeOverflow(f"state {s.label_str()} exceeds grade bound {bound}")
            if not _is0(c):
                clean[s] = c
        self.coeffs = clean

    @classmethod
    def vacuum(cls, ns: int, u=None, bound=None, coeff=1):
        parts = tuple(Partition() for _ in range(ns))
        return cls(ns, {FockBasisState(parts, None if u is None else tuple(u)): coeff}, bound)

    @classmethod
    def basis(cls, state: FockBasisState, bound=None, coeff=1):
        return cls(len(state.parts), {state: coeff}, bound)

    def _like(self, coeffs):
        return FockVector(self.ns, coeffs, self.bound)

    def __add__(self, other: "FockVector"):
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            out[s] = _add(out[s], c) if s in out else c
        return self._like({s: c for s, c in out.items() if not _is0(c)})

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        if _is0(c):
            return self._like({})
        return self._like({s: _mul(v, c) for s, v in self.coeffs.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def is_zero(self) -> bool:
        return not self.coeffs

    def max_grade(self) -> int:
        return max((s.grade for s in self.coeffs), default=0)

    def grade_part(self, n: int) -> "FockVector":
        return self._like({s: c for s, c in self.coeffs.items() if s.grade == n})

    def truncate(self, n: int) -> "FockVector":
        return FockVector(self.ns, {s: c for s, c in self.coeffs.items() if s.grade <= n}, n)

    def map_coefficients(self, fn: Callable) -> "FockVector":
        return self._like({s: fn(c) for s, c in self.coeffs.items()})

    def items(self):
        return sorted(self.coeffs.items(), key=lambda t: t[0].sort_key())

    def coefficient(self, state: FockBasisState):
        return self.coeffs.get(state, 0)

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return (self - other).is_zero()

    def to_json(self):
        return [{"state": s.to_json(), "coeff": scalar_json(c)} for s, c in self.items()]

    def __repr__(self):
        body = " + ".join(f"({c})*{s.label_str()}" for s, c in self.items())
        return f"FockVector[{body or '0'}]"


# ---------------------------------------------------------------- operator words

@dataclass(frozen=True)
class Gen:
    """One generator.  ``kind`` and ``args``:

    ``p`` (i, m), ``q`` (i, m), ``pE`` (m,), ``a`` (species vector, m),
    ``L`` (family, n) with family in h/sl/gl, ``e``/``f``/``h`` (i, m),
    ``V`` (root-coordinate vector, m) the z^m coefficient of V(gamma, z),
    ``I`` (1,) or (2,).
    """

    kind: str
    args: tuple

    def __str__(self):
        return f"{self.kind}{self.args}"


def gen(kind: str, *args) -> "OperatorExpr":
    return OperatorExpr([(1, (Gen(kind, tuple(args)),))])


class OperatorExpr:
    """Linear combination of words; a word is applied right to left."""

    __slots__ = ("terms",)

    def __init__(self, terms: Sequence[Tuple[object, Tuple[Gen, ...]]] = ()):
        self.terms = [(c, w) for c, w in terms if not _is0(c)]

    @classmethod
    def identity(cls, coeff=1):
        return cls([(coeff, ())])

    def __add__(self, other):
        return OperatorExpr(self.terms + _as_expr(other).terms)

    def __sub__(self, other):
        return self + _as_expr(other) * (-1)

    def __mul__(self, other):
        if isinstance(other, OperatorExpr):
            return OperatorExpr([(_mul(a, b), wa + wb) for a, wa in self.terms for b, wb in other.terms])
        return OperatorExpr([(_mul(a, other), w) for a, w in self.terms])

    def __rmul__(self, c):
        return OperatorExpr([(_mul(a, c), w) for a, w in self.terms])

    def __neg__(self):
        return self * (-1)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*" + "".join(map(str, w)) if w else f"({c})" for c, w in self.terms)


def _as_expr(x) -> OperatorExpr:
    return x if isinstance(x, OperatorExpr) else OperatorExpr.identity(x)


def commutator(A: OperatorExpr, B: OperatorExpr) -> OperatorExpr:
    return A * B - B * A


# ---------------------------------------------------------------- the space

def cocycle(a: Sequence[int], b: Sequence[int]) -> int:
    """epsilon(a, b) for root-lattice vectors, bimultiplicative with
    epsilon(gamma_i, gamma_j) = -1 for j in {i, i+1} and +1 otherwise."""
    n = len(a)
    e = 0
    for i in range(n):
        e += int(a[i]) * (int(b[i]) + (int(b[i + 1]) if i + 1 < n else 0))
    return -1 if e % 2 else 1


class FockSpace:
    """Heisenberg Fock module with optional lattice labels of type A_{k-1}.

    ``convention`` selects the Frenkel-Kac mode assignment: ``"graded"``
    (E_i (x) t^m = eps V_{-m}(gamma_i), F_i (x) t^m = eps' V_{-m}(-gamma_i),
    compatible with L_0) or ``"printed"`` (V_{m + delta_ij} and
    V_{-m - delta_ij} with j the holonomy of the label).

    ``f_sign`` fixes eps' for F: ``"standard"`` uses -epsilon(gamma_i, beta)
    (the factor epsilon(alpha, -alpha) = -1 of the lattice construction),
    ``"printed"`` uses epsilon(beta, gamma_i).  E always uses epsilon(gamma_i, beta).
    """

    def __init__(self, gram, k: int = 1, kind: str = "generic", ale: Optional[ALESpace] = None,
                 convention: str = "graded", f_sign: str = "standard"):
        self.G = [list(r) for r in gram]
        self.ns = len(self.G)
        self.k = k
        self.kind = kind
        self.ale = ale
        if convention not in ("graded", "printed"):
            raise ValueError(f"unknown convention {convention!r}")
        self.convention = convention
        if f_sign not in ("standard", "printed"):
            raise ValueError(f"unknown f_sign {f_sign!r}")
        self.f_sign = f_sign
        self._rho = None

    # constructors --------------------------------------------------------
    @classmethod
    def rank_k(cls, k: int, e1, e2, convention: str = "graded", f_sign: str = "standard") -> "FockSpace":
        X = ALESpace(k, e1, e2)
        gram = [[(1 / X.beta(i) if i == j else 0) for j in range(1, k + 1)] for i in range(1, k + 1)]
        return cls(gram, k, "rank_k", X, convention, f_sign)

    @classmethod
    def lattice(cls, k: int, convention: str = "graded", f_sign: str = "standard") -> "FockSpace":
        C = cartan_matrix(k)
        return cls([[mpq(x) for x in r] for r in C], k, "lattice", None, convention, f_sign)

    @classmethod
    def single(cls, beta=1) -> "FockSpace":
        beta = as_rational(beta) if isinstance(beta, int) else beta
        return cls([[1 / beta]], 1, "single")

    def with_convention(self, convention: str = None, f_sign: str = None) -> "FockSpace":
        out = FockSpace(self.G, self.k, self.kind, self.ale, convention or self.convention,
                        f_sign or self.f_sign)
        out._rho = self._rho
        return out

    # basic data ----------------------------------------------------------
    def beta(self, i: int):
        return self.ale.beta(i)

    def unit(self, s: int, c=1):
        return tuple(c if t == s else 0 for t in range(self.ns))

    def p_vec(self, i: int):
        if self.kind not in ("rank_k", "single"):
            raise ValueError("p^i modes live on the rank-k or single Fock space")
        return self.unit(i - 1)

    def q_vec(self, i: int):
        """Species vector of q^i = -beta_i p^i + p^(i+1) (rank k) or the i-th lattice boson."""
        if not 1 <= i <= self.k - 1:
            raise ValueError(f"q^{i} needs 1 <= i <= {self.k - 1}")
        if self.kind == "lattice":
            return self.unit(i - 1)
        if self.kind == "rank_k":
            v = [0] * self.ns
            v[i - 1] = -self.beta(i)
            v[i] = 1
            return tuple(v)
        raise ValueError("q^i modes need a lattice or rank-k space")

    def gamma_vec(self, c: Sequence):
        """Species vector of q^gamma for gamma = sum_i c_i gamma_i."""
        out = [0] * self.ns
        for i, ci in enumerate(c, 1):
            if _is0(ci):
                continue
            for s, x in enumerate(self.q_vec(i)):
                if not _is0(x):
                    out[s] = _add(out[s], _mul(x, ci))
        return tuple(out)

    @property
    def rho(self) -> QuadExt:
        """Formal square root of -k e1 e2."""
        if self._rho is None:
            X = self.ale
            self._rho = QuadExt.rho(-self.k * X.e1 * X.e2)
        return self._rho

    def pE_vec(self):
        """p_m = rho sum_i p^i_m / eps2^(i), normalised so that [p_m, p_-m] = m."""
        if self.kind != "rank_k":
            raise ValueError("the E-class boson needs a rank-k space")
        return tuple(self.rho * (1 / self.ale.eps2(i)) for i in range(1, self.k + 1))

    def pairing(self, x: Sequence, y: Sequence):
        """c-number [X_m, Y_-m] / m for species vectors x, y."""
        tot = 0
        for s in range(self.ns):
            if _is0(x[s]):
                continue
            for t in range(self.ns):
                if not _is0(y[t]) and not _is0(self.G[s][t]):
                    tot = _add(tot, _mul(_mul(x[s], y[t]), self.G[s][t]))
        return tot

    # single modes -------------------------------------------------------
    def mode(self, v: FockVector, vec: Sequence, m: int) -> FockVector:
        """Apply X_m = sum_s vec_s a^s_m (m != 0)."""
        if m == 0:
            raise ValueError("zero modes act on labels; use zero_mode")
        out: Dict[FockBasisState, object] = {}
        if m < 0:
            for st, c in v.coeffs.items():
                for s, x in enumerate(vec):
                    if _is0(x):
                        continue
                    ns = FockBasisState(_with_part(st.parts, s, -m), st.u)
                    val = _mul(c, x)
                    out[ns] = _add(out[ns], val) if ns in out else val
        else:
            w = [0] * self.ns
            for s, x in enumerate(vec):
                if _is0(x):
                    continue
                for t in range(self.ns):
                    if not _is0(self.G[s][t]):
                        w[t] = _add(w[t], _mul(x, self.G[s][t]))
            for st, c in v.coeffs.items():
                for t in range(self.ns):
                    if _is0(w[t]):
                        continue
                    cnt = st.parts[t].count(m)
                    if not cnt:
                        continue
                    ns = FockBasisState(_without_part(st.parts, t, m), st.u)
                    val = _mul(c, _mul(w[t], m * cnt))
                    out[ns] = _add(out[ns], val) if ns in out else val
        return FockVector(self.ns, {s: c for s, c in out.items() if not _is0(c)}, v.bound)

    def zero_mode(self, v: FockVector, c: Sequence) -> FockVector:
        """q^gamma_0 acts on the label as <gamma, lambda> = c . u."""
        out = {}
        for st, x in v.coeffs.items():
            if st.u is None:
                raise MissingLatticeLabel("zero mode applied to an unlabelled state")
            val = sum((as_rational(ci) * ui for ci, ui in zip(c, st.u)), mpq(0))
            if val:
                out[st] = _mul(x, val)
        return FockVector(self.ns, out, v.bound)

    def _exp_part(self, v: FockVector, vec, n: int, sign: int, coeff) -> FockVector:
        """Coefficient of x^n in exp(coeff sum_m x^m X_{sign m} / m) applied to v."""
        total = FockVector(self.ns, {}, v.bound)
        if n == 0:
            return v
        for lam in partitions(n):
            w = v
            for part in lam:
                w = self.mode(w, vec, sign * part)
                if w.is_zero():
                    break
            if w.is_zero():
                continue
            total = total + w.scale(_mul(coeff ** lam.length, mpq(1, lam.z())))
        return total

    def lattice_exponent(self, u, shift) -> Tuple[mpq, Tuple[int, ...]]:
        """(1/2 <gamma,gamma> + <gamma, lambda>, shifted label) for gamma = sum c_i gamma_i."""
        if u is None:
            raise MissingLatticeLabel("lattice shift needs a labelled state")
        C = cartan_matrix(self.k)
        c = [as_rational(x) for x in shift]
        Cc = [sum((C[i][j] * c[j] for j in range(len(c))), mpq(0)) for i in range(len(c))]
        z0 = sum((a * b for a, b in zip(c, Cc)), mpq(0)) / 2 + sum((a * b for a, b in zip(c, u)), mpq(0))
        nu = tuple(a + b for a, b in zip(u, Cc))
        if any(x.denominator != 1 for x in nu):
            raise InconsistentCharge(f"shift {tuple(shift)} leaves the charge lattice from u={u}")
        return z0, tuple(int(x) for x in nu)

    def bosonic_exponential(self, v: FockVector, vec, alpha=1, beta=-1, shift: Optional[Sequence] = None,
                            creation_max: int = 4) -> Dict[mpq, FockVector]:
        """z-coefficients of exp(alpha sum z^m X_-m / m) exp(beta sum z^-m X_m / m) v.

        With ``shift = c`` the lattice factor exp(log z c + gamma) acts first.
        The creation side is infinite, so only coefficients whose creation
        degree is at most ``creation_max`` are produced.
        """
        out: Dict[mpq, FockVector] = {}
        for st, coef in v.items():
            z0, u = (mpq(0), st.u) if shift is None else self.lattice_exponent(st.u, shift)
            base = FockVector(self.ns, {FockBasisState(st.parts, u): coef}, None)
            for a in range(st.grade + 1):
                ann = self._exp_part(base, vec, a, 1, beta)
                if ann.is_zero():
                    continue
                for b in range(creation_max + 1):
                    cre = self._exp_part(ann, vec, b, -1, alpha)
                    if cre.is_zero():
                        continue
                    key = z0 + b - a
                    out[key] = out[key] + cre if key in out else cre
        return {e: w for e, w in sorted(out.items()) if not w.is_zero()}

    def vertex_mode(self, v: FockVector, vec, m, alpha=1, beta=-1, shift=None) -> FockVector:
        """z^m coefficient of the bosonic exponential, generated only as far as needed."""
        m = as_rational(m)
        out = FockVector(self.ns, {}, None)
        for st, coef in v.items():
            z0, u = (mpq(0), st.u) if shift is None else self.lattice_exponent(st.u, shift)
            base = FockVector(self.ns, {FockBasisState(st.parts, u): coef}, None)
            d = m - z0
            if d.denominator != 1:
                continue
            d = int(d)
            for a in range(max(0, -d), st.grade + 1):
                ann = self._exp_part(base, vec, a, 1, beta)
                if ann.is_zero():
                    continue
                cre = self._exp_part(ann, vec, a + d, -1, alpha)
                out = out + cre
        return FockVector(self.ns, out.coeffs, v.bound)

    # Virasoro ------------------------------------------------------------
    def sugawara(self, v: FockVector, vecs: Sequence, M, n: int, zero: Optional[Sequence] = None) -> FockVector:
        """L_n = 1/2 sum_{a,b} M_ab sum_m :X^a_{-m} X^b_{m+n}:, with zero modes
        X^a_0 = zero[a] . u when ``zero`` is given and X^a_0 = 0 otherwise."""
        g = v.max_grade()
        out = FockVector(self.ns, {}, v.bound)
        r = len(vecs)
        for a in range(r):
            for b in range(r):
                Mab = M[a][b]
                if _is0(Mab):
                    continue
                # both annihilating: X^a_s X^b_t with s + t = n
                for s in range(1, n):
                    t = n - s
                    w = self.mode(self.mode(v, vecs[b], t), vecs[a], s)
                    out = out + w.scale(_mul(Mab, mpq(1, 2)))
                # both creating: s + t = -n
                for s in range(1, -n):
                    t = -n - s
                    w = self.mode(self.mode(v, vecs[b], -t), vecs[a], -s)
                    out = out + w.scale(_mul(Mab, mpq(1, 2)))
                # mixed, normal ordered: X^a_{-r} X^b_{r+n}, r >= 1, r + n >= 1
                for rr in range(max(1, 1 - n), g - n + 1):
                    w = self.mode(self.mode(v, vecs[b], rr + n), vecs[a], -rr)
                    out = out + w.scale(Mab)
                if zero is not None:
                    if n == 0:
                        w = self.zero_mode(self.zero_mode(v, zero[b]), zero[a])
                        out = out + w.scale(_mul(Mab, mpq(1, 2)))
                    else:
                        w = self.zero_mode(self.mode(v, vecs[b], n), zero[a])
                        out = out + w.scale(Mab)
        return out

    def virasoro(self, v: FockVector, family: str, n: int) -> FockVector:
        if family == "h":
            if self.kind == "rank_k":
                return self.sugawara(v, [self.pE_vec()], [[1]], n)
            if self.kind == "single":
                # unit-normalised boson a / sqrt(G)
                return self.sugawara(v, [(1,)], [[1 / self.G[0][0]]], n)
            raise ValueError("the h Virasoro needs a rank-k or single space")
        if family == "sl":
            k = self.k
            vecs = [self.q_vec(i) for i in range(1, k)]
            zero = [tuple(1 if t == i else 0 for t in range(k - 1)) for i in range(k - 1)]
            return self.sugawara(v, vecs, cartan_inverse(k), n, zero)
        if family == "gl":
            return self.virasoro(v, "h", n) + self.virasoro(v, "sl", n)
        raise ValueError(f"unknown Virasoro family {family!r}")

    def virasoro_orthonormal(self, v: FockVector, basis: Sequence[Sequence], n: int) -> FockVector:
        """L^sl_n from an explicit orthonormal basis eta_i = sum_j basis[i][j] gamma_j."""
        k = self.k
        C = cartan_matrix(k)
        for a in basis:
            for b in basis:
                ip = 0
                for i in range(k - 1):
                    for j in range(k - 1):
                        if C[i][j]:
                            ip = _add(ip, _mul(_mul(a[i], b[j]), C[i][j]))
                want = 1 if a is b else 0
                if not ip == want:
                    raise ValueError("basis is not orthonormal")
        vecs = [self.gamma_vec(eta) for eta in basis]
        ident = [[1 if i == j else 0 for j in range(len(basis))] for i in range(len(basis))]
        return self.sugawara_general_zero(v, vecs, ident, n, basis)

    def sugawara_general_zero(self, v, vecs, M, n, zero_coeffs):
        """Like :meth:`sugawara` but with zero modes whose coefficients may be irrational."""
        base = self.sugawara(v, vecs, M, n)
        r = len(vecs)
        for a in range(r):
            for b in range(r):
                Mab = M[a][b]
                if _is0(Mab):
                    continue
                if n == 0:
                    w = self._zero_general(self._zero_general(v, zero_coeffs[b]), zero_coeffs[a])
                    base = base + w.scale(_mul(Mab, mpq(1, 2)))
                else:
                    w = self._zero_general(self.mode(v, vecs[b], n), zero_coeffs[a])
                    base = base + w.scale(Mab)
        return base

    def _zero_general(self, v, c):
        out = {}
        for st, x in v.coeffs.items():
            if st.u is None:
                raise MissingLatticeLabel("zero mode applied to an unlabelled state")
            val = 0
            for ci, ui in zip(c, st.u):
                val = _add(val, _mul(ci, ui))
            if not _is0(val):
                out[st] = _mul(x, val)
        return FockVector(self.ns, out, v.bound)

    # Frenkel-Kac ----------------------------------------------------------
    def _root(self, i: int) -> Tuple[int, ...]:
        """gamma_i for i >= 1; gamma_0 = -theta."""
        k = self.k
        if i == 0:
            return tuple(-1 for _ in range(k - 1))
        return tuple(1 if t == i - 1 else 0 for t in range(k - 1))

    def _root_part(self, u) -> Tuple[int, ...]:
        """beta in Q with lambda = beta + omega_j."""
        c = Charge(u, self.k)
        return tuple(int(x) for x in c.gamma)

    def _fk(self, v: FockVector, kind: str, i: int, m: int) -> FockVector:
        k = self.k
        if k < 2:
            raise ValueError("Frenkel-Kac generators need k >= 2")
        if kind == "h":
            if m != 0:
                vec = self.gamma_vec(self._root(i))
                return self.mode(v, vec, m)
            if i == 0:
                out = {}
                for st, x in v.coeffs.items():
                    if st.u is None:
                        raise MissingLatticeLabel("h_0 needs a labelled state")
                    out[st] = _mul(x, 1 - sum(st.u))
                return FockVector(self.ns, {s: c for s, c in out.items() if not _is0(c)}, v.bound)
            return self.zero_mode(v, self._root(i))
        root = self._root(i)
        sign_root = root if kind == "e" else tuple(-x for x in root)
        vec = self.gamma_vec(sign_root)
        out = FockVector(self.ns, {}, v.bound)
        for st, x in v.items():
            if st.u is None:
                raise MissingLatticeLabel("Frenkel-Kac generators need labelled states")
            beta = self._root_part(st.u)
            j = Charge(st.u, k).j
            if kind == "e":
                eps = cocycle(root, beta)
                zm = -(m + (1 if i == 0 else 0)) if self.convention == "graded" else m + (1 if i == j else 0)
            else:
                eps = cocycle(beta, root) if self.f_sign == "printed" else -cocycle(root, beta)
                zm = -(m - (1 if i == 0 else 0)) if self.convention == "graded" else -m - (1 if i == j else 0)
            w = self.vertex_mode(FockVector(self.ns, {st: x}, None), vec, zm, 1, -1, sign_root)
            out = out + FockVector(self.ns, w.coeffs, v.bound).scale(eps)
        return out

    # integrals of motion (one boson) ----------------------------------------
    def integral(self, v: FockVector, p: int) -> FockVector:
        if self.kind != "rank_k" or self.k != 1:
            raise ValueError("integrals of motion are implemented for the C^2 Fock space")
        X = self.ale
        beta = X.beta(1)
        e1 = X.e1
        g = v.max_grade()
        one = self.unit(0)
        if p == 1:
            out = FockVector(self.ns, {}, v.bound)
            for m in range(1, g + 1):
                out = out + self.mode(self.mode(v, one, m), one, -m)
            return out.scale(beta)
        if p != 2:
            raise ValueError("only I_1 and I_2 are available")
        cubic = FockVector(self.ns, {}, v.bound)
        for m in range(1, g + 1):
            for n in range(1, g + 1):
                if m + n <= g:
                    # p_-m p_-n p_(m+n): annihilate m+n, create n, create m
                    cubic = cubic + self.mode(self.mode(self.mode(v, one, m + n), one, -n), one, -m)
                # p_-(m+n) p_n p_m
                w = self.mode(self.mode(self.mode(v, one, m), one, n), one, -(m + n))
                cubic = cubic + w
        quad = FockVector(self.ns, {}, v.bound)
        for m in range(1, g + 1):
            quad = quad + self.mode(self.mode(v, one, m), one, -m).scale(m - 1)
        return (cubic.scale(beta / 2) - quad.scale((beta - 1) / 2)).scale(e1)

    # dispatch -------------------------------------------------------------
    def apply_gen(self, g: Gen, v: FockVector) -> FockVector:
        kind, args = g.kind, g.args
        if kind == "p":
            i, m = args
            return self.mode(v, self.p_vec(i), m)
        if kind == "q":
            i, m = args
            if m == 0:
                return self.zero_mode(v, self._root(i))
            return self.mode(v, self.q_vec(i), m)
        if kind == "pE":
            return self.mode(v, self.pE_vec(), args[0])
        if kind == "a":
            vec, m = args
            return self.mode(v, vec, m)
        if kind == "L":
            return self.virasoro(v, args[0], args[1])
        if kind in ("e", "f", "h"):
            return self._fk(v, kind, args[0], args[1])
        if kind == "V":
            c, m = args
            return FockVector(self.ns, self.vertex_mode(v, self.gamma_vec(c), m, 1, -1, c).coeffs, v.bound)
        if kind == "I":
            return self.integral(v, args[0])
        raise ValueError(f"unknown generator kind {kind!r}")

    def apply(self, expr: OperatorExpr, v: FockVector, bound: Optional[int] = None) -> FockVector:
        out = FockVector(self.ns, {}, bound if bound is not None else v.bound)
        for c, word in expr.terms:
            w = v if bound is None else FockVector(v.ns, v.coeffs, bound)
            for g in reversed(word):
                w = self.apply_gen(g, w)
                if bound is not None and w.max_grade() > bound:
                    raise GradeOverflow(f"{g} leaves grade bound {bound}")
                if w.is_zero():
                    break
            out = out + w.scale(c)
        return out

    # state enumeration ---------------------------------------------------------
    def states(self, grade: int, labels: Iterable = (None,)) -> List[FockBasisState]:
        return basis_states(self.ns, grade, labels)


def basis_states(ns: int, grade: int, labels: Iterable = (None,)) -> List[FockBasisState]:
    """All basis states of total grade <= ``grade`` with the given labels."""
    labels = list(labels)
    out = []
    for g in range(grade + 1):
        for ws in product(range(g + 1), repeat=ns):
            if sum(ws) != g:
                continue
            for parts in product(*(partitions(w) for w in ws)):
                for u in labels:
                    out.append(FockBasisState(tuple(parts), None if u is None else tuple(u)))
    return out


def apply(expr: OperatorExpr, v: FockVector, space: FockSpace, bound: Optional[int] = None) -> FockVector:
    return space.apply(expr, v, bound)


# ---------------------------------------------------------------- checks

def commutator_check(space: FockSpace, A: OperatorExpr, B: OperatorExpr, expected: OperatorExpr,
                     states: Iterable[FockBasisState], relation: str = "") -> dict:
    """(AB - BA - expected) s = 0 on every sample state; reports the first failure."""
    lhs = commutator(A, B) - expected
    checked = 0
    for s in states:
        v = FockVector.basis(s)
        r = space.apply(lhs, v)
        checked += 1
        if not r.is_zero():
            return {"relation": relation or str(lhs), "pass": False, "checked": checked,
                    "state": s.to_json(), "residual": r.to_json()}
    return {"relation": relation or str(lhs), "pass": True, "checked": checked}


def affine_cartan(k: int):
    if k == 2:
        return [[2, -2], [-2, 2]]
    n = k
    return [[2 if i == j else (-1 if (i - j) % n in (1, n - 1) else 0) for j in range(n)] for i in range(n)]


def chevalley_check(space: FockSpace, grade: int, labels: Sequence, indices: Optional[Sequence[int]] = None) -> dict:
    """[h_i,h_j] = 0, [e_i,f_j] = delta_ij h_j, [h_i,e_j] = C_ij e_j, [h_i,f_j] = -C_ij f_j."""
    k = space.k
    idx = list(range(k)) if indices is None else list(indices)
    Ch = affine_cartan(k)
    states = space.states(grade, labels)
    results = []
    for i in idx:
        for j in idx:
            e_i, h_i = gen("e", i, 0), gen("h", i, 0)
            e_j, f_j, h_j = gen("e", j, 0), gen("f", j, 0), gen("h", j, 0)
            zero = OperatorExpr()
            results.append(commutator_check(space, h_i, h_j, zero, states, f"[h{i},h{j}]=0"))
            results.append(commutator_check(space, e_i, f_j, h_j if i == j else zero, states,
                                            f"[e{i},f{j}]={'h' + str(j) if i == j else 0}"))
            results.append(commutator_check(space, h_i, e_j, e_j * Ch[i][j], states, f"[h{i},e{j}]={Ch[i][j]}e{j}"))
            results.append(commutator_check(space, h_i, f_j, f_j * (-Ch[i][j]), states, f"[h{i},f{j}]={-Ch[i][j]}f{j}"))
    return {"pass": all(r["pass"] for r in results), "checks": results,
            "states": len(states), "convention": space.convention, "f_sign": space.f_sign}


def virasoro_check(space: FockSpace, family: str, grade: int, labels: Sequence = (None,), nmax: int = 2) -> dict:
    """[L_n, L_m] = (n-m) L_(n+m) + c (n^3 - n)/12 delta_(n+m,0) for |n|, |m| <= nmax."""
    c = {"h": 1, "sl": space.k - 1, "gl": space.k}[family]
    states = space.states(grade, labels)
    results = []
    for n in range(-nmax, nmax + 1):
        for m in range(-nmax, nmax + 1):
            if n <= m:
                continue
            Ln, Lm = gen("L", family, n), gen("L", family, m)
            exp = gen("L", family, n + m) * (n - m)
            if n + m == 0:
                exp = exp + OperatorExpr.identity(mpq(c * (n ** 3 - n), 12))
            results.append(commutator_check(space, Ln, Lm, exp, states, f"[L{n},L{m}] ({family})"))
    return {"pass": all(r["pass"] for r in results), "checks": results, "central_charge": c}


def primary_field_check(space: FockSpace, states: Sequence[FockBasisState], vec, alpha, beta, delta,
                        shift=None, family: str = "h", nmax: int = 2, form: str = "n", window: int = 3) -> dict:
    """[L_n, V(z)] = z^n (z d/dz + delta w(n)) V(z), compared per z-coefficient.

    Mode form: [L_n, V_t] = (t - n + delta w(n)) V_(t-n), with w(n) = n for
    ``form="n"`` and n + 1 for ``form="n+1"``.  Every mode is computed
    exactly; t runs over the lattice offset plus -grade-|n| .. ``window``.
    """
    results = []
    for n in range(-nmax, nmax + 1):
        wn = n if form == "n" else n + 1
        fail = None
        for s in states:
            v = FockVector.basis(s)
            z0 = mpq(0) if shift is None else space.lattice_exponent(s.u, shift)[0]
            Lv = space.virasoro(v, family, n)
            for d in range(-s.grade - abs(n) - 1, window + 1):
                t = z0 + d
                lhs = space.virasoro(space.vertex_mode(v, vec, t, alpha, beta, shift), family, n) \
                    - space.vertex_mode(Lv, vec, t, alpha, beta, shift)
                rhs = space.vertex_mode(v, vec, t - n, alpha, beta, shift).scale((t - n) + delta * wn)
                diff = lhs - rhs
                if not diff.is_zero():
                    fail = {"n": n, "state": s.to_json(), "z_exponent": str(t), "residual": diff.to_json()}
                    break
            if fail:
                break
        results.append({"n": n, "pass": fail is None, **({"failure": fail} if fail else {})})
    return {"pass": all(r["pass"] for r in results), "form": form, "checks": results}


# ---------------------------------------------------------------- C^2: Jack dictionary

def fock_inner(space: FockSpace, v: FockVector, w: FockVector):
    """Symmetric bilinear form with <a_-lambda, a_-lambda> = prod z_lambda G^l (diagonal G)."""
    tot = 0
    for s, c in v.coeffs.items():
        d = w.coeffs.get(s)
        if d is None:
            continue
        norm = mpq(1)
        for t, lam in enumerate(s.parts):
            if lam.length:
                norm = _mul(norm, _mul(mpq(lam.z()), space.G[t][t] ** lam.length))
        tot = _add(tot, _mul(_mul(c, d), norm))
    return tot


def sym_to_fock(f, bound=None) -> FockVector:
    """Symmetric function (any basis with table) in power sums -> one-species Fock vector."""
    from .symfunc import basis_convert

    fp = basis_convert(f, "p")
    return FockVector(1, {FockBasisState((lam,)): c for lam, c in fp.coeffs.items()}, bound)


def fock_to_sym(v: FockVector, N: int):
    from .symfunc import SymVector

    return SymVector(N, "p", {s.parts[0]: c for s, c in v.coeffs.items()})


def _jack_state(table, lam, bound=None) -> FockVector:
    from .symfunc import basis_convert

    return sym_to_fock(basis_convert(table.jack(lam), "p"), bound)


def fixed_point_class(table, lam, e1, e2, bound=None) -> FockVector:
    """[lambda] = eu_+(lambda) J_lambda in the power-sum realisation."""
    from .nekrasov_c2 import eu_plus

    return _jack_state(table, lam, bound).scale(eu_plus(Partition(lam), e1, e2))


def co_matrix_element(space: FockSpace, table, lam1, lam2, alpha, beta_exp, e1, e2, sign: str = "none"):
    """Coefficient of z^(|lam2| - |lam1|) in <V_{alpha,beta}(z)[lam1], [lam2]>, times the sign convention
    ``sign`` in {none, grade1, grade2, both}."""
    lam1, lam2 = Partition(lam1), Partition(lam2)
    v1 = fixed_point_class(table, lam1, e1, e2)
    v2 = fixed_point_class(table, lam2, e1, e2)
    m = lam2.weight - lam1.weight
    Vv = space.vertex_mode(v1, space.unit(0), m, alpha, beta_exp)
    val = fock_inner(space, Vv, v2)
    s = {"none": 0, "grade1": lam1.weight, "grade2": lam2.weight, "both": lam1.weight + lam2.weight}[sign]
    return -val if s % 2 else val


def co_sign_calibration(space: FockSpace, table, mu, e1, e2) -> str:
    """Pick the global sign convention from (empty, empty), (empty, (1)), ((1), (1))."""
    from .nekrasov_c2 import m_bifund

    alpha, beta_exp = -mu / e2, (mu + e1 + e2) / e2
    anchors = [((), ()), ((), (1,)), ((1,), (1,))]
    for sign in ("none", "grade1", "grade2", "both"):
        ok = True
        for a, b in anchors:
            want = m_bifund(Partition(a), Partition(b), mu, e1, e2)
            want = want if Partition(b).weight % 2 == 0 else -want
            if not co_matrix_element(space, table, a, b, alpha, beta_exp, e1, e2, sign) == want:
                ok = False
                break
        if ok:
            return sign
    raise ArithmeticError("no global sign convention matches the anchors")


def integrals_of_motion(space: FockSpace, p: int, v: FockVector) -> FockVector:
    return space.integral(v, p)


# ---------------------------------------------------------------- Gaiotto / Whittaker

def gaiotto_vector(space: FockSpace, etas: Sequence, bound: int, u=None) -> FockVector:
    """exp(sum_i eta_i a^i_-1) |0> (x) [u], truncated at grade ``bound``."""
    vac = FockVector.vacuum(space.ns, u, bound)
    vec = tuple(etas)
    out = vac
    term = vac
    for n in range(1, bound + 1):
        term = space.mode(term, vec, -1).scale(mpq(1, n))
        out = out + term
    return out


def whittaker_solve(space: FockSpace, chi: Dict[Tuple[int, int], object], bound: int, w0=1, u=None) -> FockVector:
    """Solve a^i_m w = chi(i, m) w grade by grade by linear algebra (no closed form used).

    ``chi`` maps (species, mode) to the eigenvalue; missing entries are 0.
    """
    w = FockVector.vacuum(space.ns, u, bound, w0)
    prev = w
    for n in range(1, bound + 1):
        basis = [s for s in basis_states(space.ns, n, [u]) if s.grade == n]
        rows, rhs = [], []
        for sp in range(space.ns):
            for m in range(1, n + 1):
                target = prev.scale(chi.get((sp, m), 0)) if m == 1 else FockVector(space.ns)
                images = [space.mode(FockVector.basis(s), space.unit(sp), m) for s in basis]
                keys = sorted({t for im in images for t in im.coeffs} | set(target.coeffs), key=lambda t: t.sort_key())
                for t in keys:
                    rows.append([im.coeffs.get(t, 0) for im in images])
                    rhs.append(target.coeffs.get(t, 0))
        sol = _solve(rows, rhs, len(basis))
        cur = FockVector(space.ns, {s: c for s, c in zip(basis, sol)}, bound)
        w = w + cur
        prev = cur
    return w


def _solve(rows, rhs, n):
    """Exact Gaussian elimination; raises if inconsistent or underdetermined."""
    A = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(A)) if not _is0(A[i][c])), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [_mul(x, inv) for x in A[r]]
        for i in range(len(A)):
            if i != r and not _is0(A[i][c]):
                f = A[i][c]
                A[i] = [x - _mul(f, y) for x, y in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, len(A)):
        if not _is0(A[i][n]):
            raise ArithmeticError("Whittaker system is inconsistent")
    if len(piv_cols) < n:
        raise ArithmeticError("Whittaker system is underdetermined")
    sol = [0] * n
    for i, c in enumerate(piv_cols):
        sol[c] = A[i][n]
    return sol


def gaiotto_whittaker(space: FockSpace, etas: Sequence, bound: int, u=None) -> Tuple[FockVector, dict]:
    """Build G(eta) and check the Whittaker relations through grade ``bound - 1``.

    Per species: a^i_1 G = eta_i G_ii G and a^i_m G = 0 for m >= 2 (G_ii = 1/beta_i).
    On a rank-k space also: q^i_1 G = (eta_(i+1)/beta_(i+1) - eta_i) G and
    p_1 G = -rho sum_i eta_i / eps1^(i) G for the E-class boson.
    """
    G = gaiotto_vector(space, etas, bound, u)
    res = []

    info = []

    def check(name, vec, m, value, into=res):
        lhs = space.mode(G, vec, m).truncate(bound - m)
        rhs = G.truncate(bound - m).scale(value) if not _is0(value) else FockVector(space.ns)
        diff = FockVector(space.ns, (lhs - rhs).coeffs)
        into.append({"relation": name, "pass": diff.is_zero(),
                     **({} if diff.is_zero() else {"residual": diff.to_json()})})

    for i in range(space.ns):
        check(f"a^{i + 1}_1", space.unit(i), 1, _mul(etas[i], space.G[i][i]))
        for m in range(2, bound + 1):
            check(f"a^{i + 1}_{m}", space.unit(i), m, 0)
    if space.kind == "rank_k" and space.k >= 2:
        X = space.ale
        for i in range(1, space.k):
            val = etas[i] / X.beta(i + 1) - etas[i - 1]
            check(f"q^{i}_1", space.q_vec(i), 1, val)
            for m in range(2, bound + 1):
                check(f"q^{i}_{m}", space.q_vec(i), m, 0)
        s = 0
        for i in range(1, space.k + 1):
            s = s + etas[i - 1] / X.eps1(i)
        check("pE_1", space.pE_vec(), 1, _mul(space.rho, -s))
        # eigenvalue with the opposite sign, +rho sum eta_i / eps1^(i); kept for comparison only
        check("pE_1 (+ sign)", space.pE_vec(), 1, _mul(space.rho, s), info)
        for m in range(2, bound + 1):
            check(f"pE_{m}", space.pE_vec(), m, 0)
    return G, {"pass": all(r["pass"] for r in res), "checks": res, "informational": info}
