"""Exact coefficient arithmetic.

Three kinds of scalars circulate through the library:

* ``mpq`` (gmpy2 rationals) in sampled mode,
* :class:`RatFunc`, a normalized multivariate rational function over Q,
* :class:`QuadExt`, elements ``a + b*rho`` of a quadratic extension where
  ``rho**2`` is a fixed scalar (used for the square root of ``-k e1 e2``).

All algorithmic code is written against the ordinary arithmetic operators,
so the same routine runs symbolically or on sampled rational points.
:class:`QSeries` is a truncated multivariate series with exact rational
exponents and arbitrary scalar coefficients.
"""
from __future__ import annotations

import json
import random
import re
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple

import gmpy2
from gmpy2 import mpq, mpz
from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, FracField
from sympy.polys.orderings import lex

__all__ = [
    "mpq", "ZeroDenominator", "BadLeadingTerm", "RatFunc", "QuadExt", "QSeries",
    "as_rational", "rational_str", "parse_rational", "evaluate", "series_compose",
    "eta_series", "sample_assignment", "var_sort_key", "is_zero", "scalar_json",
    "scalar_from_json",
]


class ZeroDenominator(ArithmeticError):
    """A denominator vanished at the requested assignment."""


class BadLeadingTerm(ValueError):
    """A series does not have the leading term a composition requires."""


# ---------------------------------------------------------------- rationals

def as_rational(x) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, (int, Fraction)):
        return mpq(x)
    if isinstance(x, str):
        return parse_rational(x)
    if type(x).__name__ == "mpz":
        return mpq(x)
    raise TypeError(f"not an exact rational: {x!r}")


def parse_rational(s: str) -> mpq:
    s = s.strip()
    if "/" in s:
        p, q = s.split("/")
        return mpq(int(p), int(q))
    return mpq(int(s))


def rational_str(x) -> str:
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def is_zero(c) -> bool:
    return c == 0


# ---------------------------------------------------------------- variables

_PRIORITY = {"e": 0, "mu": 1, "eta": 2, "xi": 3, "x": 4, "z": 5, "rho": 6}
_NAME_RE = re.compile(r"^([A-Za-z_]+?)(\d*)$")


def var_sort_key(name: str):
    """Canonical order: e1, e2, mu0.., eta.., xi.., x.., z, rho, then the rest."""
    m = _NAME_RE.match(name)
    if not m:
        return (9, name, 0)
    head, idx = m.group(1), m.group(2)
    return (_PRIORITY.get(head, 8), head, int(idx) if idx else -1)


@lru_cache(maxsize=None)
def _field(names: Tuple[str, ...]) -> FracField:
    return FracField(names, QQ, lex)


def _canon_names(names: Iterable[str]) -> Tuple[str, ...]:
    return tuple(sorted(set(names), key=var_sort_key))


# ---------------------------------------------------------------- RatFunc

class RatFunc:
    """Normalized rational function over Q in an ordered set of named variables.

    The numerator and denominator never share a polynomial factor (the
    underlying sparse fraction field cancels gcds on construction), so
    equality is structural and agrees with cross-multiplication.
    """

    __slots__ = ("_f",)

    def __init__(self, f: FracElement):
        self._f = f

    # construction -------------------------------------------------------
    @staticmethod
    def field(names: Sequence[str]) -> FracField:
        return _field(_canon_names(names))

    @classmethod
    def gens(cls, names: Sequence[str]) -> Dict[str, "RatFunc"]:
        F = cls.field(names)
        return {str(s): cls(g) for s, g in zip(F.symbols, F.gens)}

    @classmethod
    def var(cls, name: str, names: Sequence[str] = ()) -> "RatFunc":
        return cls.gens(tuple(names) + (name,))[name]

    @classmethod
    def const(cls, c, names: Sequence[str] = ()) -> "RatFunc":
        F = cls.field(names)
        return cls(F.ground_new(QQ.convert(as_rational(c))))

    @classmethod
    def parse(cls, text: str, names: Sequence[str]) -> "RatFunc":
        """Parse an expression such as ``'-e1 + 2*mu0/3'`` over the given variables."""
        import sympy

        F = cls.field(names)
        local = {str(s): sympy.Symbol(str(s)) for s in F.symbols}
        expr = sympy.sympify(text, locals=local)
        extra = {str(s) for s in expr.free_symbols} - {str(s) for s in F.symbols}
        if extra:
            F = cls.field(tuple(map(str, F.symbols)) + tuple(extra))
        return cls(F.from_expr(expr))

    # introspection -------------------------------------------------------
    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(str(s) for s in self._f.field.symbols)

    @property
    def raw(self) -> FracElement:
        return self._f

    def free_variables(self) -> Tuple[str, ...]:
        used = set()
        for poly in (self._f.numer, self._f.denom):
            for monom in poly.monoms():
                used.update(i for i, e in enumerate(monom) if e)
        return tuple(v for i, v in enumerate(self.variables) if i in used)

    def is_constant(self) -> bool:
        return self._f.numer.is_ground and self._f.denom.is_ground

    def constant_value(self) -> mpq:
        if not self.is_constant():
            raise ValueError("not a constant")
        return mpq(self._f.numer.LC) / mpq(self._f.denom.LC) if self._f.numer else mpq(0)

    # promotion -----------------------------------------------------------
    def _lift(self, F: FracField) -> FracElement:
        if self._f.field is F:
            return self._f
        R = F.ring
        return F.new(self._f.numer.set_ring(R), self._f.denom.set_ring(R))

    def _coerce(self, other):
        """Return (a, b) FracElements over a common field, or NotImplemented."""
        if isinstance(other, RatFunc):
            if other._f.field is self._f.field:
                return self._f, other._f
            F = _field(_canon_names(self.variables + other.variables))
            return self._lift(F), other._lift(F)
        if isinstance(other, (int, mpz, mpq, Fraction)):
            return self._f, self._f.field.ground_new(QQ.convert(as_rational(other)))
        return NotImplemented

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return RatFunc(c[0] + c[1])

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return RatFunc(c[0] - c[1])

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return RatFunc(c[1] - c[0])

    def __mul__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return RatFunc(c[0] * c[1])

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        if not c[1]:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(c[0] / c[1])

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        if not c[0]:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(c[1] / c[0])

    def __neg__(self):
        return RatFunc(-self._f)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("RatFunc powers must be integers")
        if n < 0 and not self._f:
            raise ZeroDivisionError("zero to a negative power")
        return RatFunc(self._f ** n)

    def __eq__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return c[0] == c[1]

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __bool__(self):
        return bool(self._f)

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash(json.dumps(self.to_json(), sort_keys=True))

    # evaluation ------------------------------------------------------------
    def evaluate(self, assignment: Mapping[str, object]):
        """Substitute exact rationals; the result is an ``mpq`` if every variable is assigned.

        Partial assignments return a RatFunc in the remaining variables.
        """
        f = self._f
        names = self.variables
        missing = [n for n in self.free_variables() if n not in assignment]
        if missing:
            rest = [n for n in names if n not in assignment]
            F2 = _field(_canon_names(rest))
            num = _partial_eval(f.numer, names, assignment, F2.ring)
            den = _partial_eval(f.denom, names, assignment, F2.ring)
            if not den:
                raise ZeroDenominator(f"denominator of {self} vanishes at {dict(assignment)}")
            return RatFunc(F2.new(num, den))
        den = _full_eval(f.denom, names, assignment)
        if den == 0:
            raise ZeroDenominator(f"denominator of {self} vanishes at {dict(assignment)}")
        return _full_eval(f.numer, names, assignment) / den

    # serialization ---------------------------------------------------------
    def canonical_parts(self):
        """Integer numerator/denominator, jointly content-free, denominator LC > 0."""
        num, den = self._f.numer, self._f.denom
        coeffs = [mpq(c) for c in list(num.coeffs()) + list(den.coeffs())]
        lcm = 1
        for c in coeffs:
            lcm = gmpy2.lcm(lcm, c.denominator)
        g = 0
        for c in coeffs:
            g = gmpy2.gcd(g, (c * lcm).numerator)
        scale = mpq(lcm, g if g else 1)
        if mpq(den.LC) < 0:
            scale = -scale
        nt = sorted(((m, mpq(c) * scale) for m, c in num.terms()), reverse=True)
        dt = sorted(((m, mpq(c) * scale) for m, c in den.terms()), reverse=True)
        return nt, dt

    def to_json(self):
        nt, dt = self.canonical_parts()
        enc = lambda ts: [[list(m), str(c.numerator), str(c.denominator)] for m, c in ts]
        return {"vars": list(self.variables), "numer": enc(nt), "denom": enc(dt)}

    @classmethod
    def from_json(cls, obj) -> "RatFunc":
        F = _field(tuple(obj["vars"]))
        R = F.ring

        def dec(ts):
            p = R.zero
            for m, a, b in ts:
                p += R({tuple(m): QQ(int(a), int(b))})
            return p

        return cls(F.new(dec(obj["numer"]), dec(obj["denom"])))

    def __str__(self):
        return str(self._f.as_expr())

    def __repr__(self):
        return f"RatFunc({self})"


def _full_eval(poly, names, assignment):
    vals = [as_rational(assignment[n]) if n in assignment else None for n in names]
    total = mpq(0)
    for monom, c in poly.terms():
        t = mpq(c)
        for v, e in zip(vals, monom):
            if e:
                t *= v ** e
        total += t
    return total


def _partial_eval(poly, names, assignment, ring):
    keep = [i for i, n in enumerate(names) if n not in assignment]
    out = {}
    for monom, c in poly.terms():
        t = mpq(c)
        for i, (n, e) in enumerate(zip(names, monom)):
            if e and n in assignment:
                t *= as_rational(assignment[n]) ** e
        key = tuple(monom[i] for i in keep)
        out[key] = out.get(key, mpq(0)) + t
    return ring({k: QQ.convert(v) for k, v in out.items() if v})


def evaluate(f, assignment: Mapping[str, object]):
    """Evaluate a scalar (RatFunc, QuadExt or rational) at an exact assignment."""
    if isinstance(f, RatFunc):
        return f.evaluate(assignment)
    if isinstance(f, QuadExt):
        return QuadExt(evaluate(f.a, assignment), evaluate(f.b, assignment), evaluate(f.r, assignment))
    return as_rational(f)


# ---------------------------------------------------------------- QuadExt

class QuadExt:
    """``a + b*rho`` with ``rho**2 = r``; ``r`` is a nonsquare scalar fixed per element."""

    __slots__ = ("a", "b", "r")

    def __init__(self, a, b, r):
        self.a, self.b, self.r = a, b, r

    @classmethod
    def rho(cls, r):
        return cls(0 * r, 1 + 0 * r, r)

    def _split(self, other):
        if isinstance(other, QuadExt):
            return other.a, other.b
        return other, 0

    def __add__(self, other):
        a, b = self._split(other)
        return QuadExt(self.a + a, self.b + b, self.r)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._split(other)
        return QuadExt(self.a - a, self.b - b, self.r)

    def __rsub__(self, other):
        a, b = self._split(other)
        return QuadExt(a - self.a, b - self.b, self.r)

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.r)

    def __mul__(self, other):
        a, b = self._split(other)
        return QuadExt(self.a * a + self.b * b * self.r, self.a * b + self.b * a, self.r)

    __rmul__ = __mul__

    def conj(self):
        return QuadExt(self.a, -self.b, self.r)

    def norm(self):
        return self.a * self.a - self.b * self.b * self.r

    def __truediv__(self, other):
        if isinstance(other, QuadExt):
            n = other.norm()
            num = self * other.conj()
            return QuadExt(num.a / n, num.b / n, self.r)
        return QuadExt(self.a / other, self.b / other, self.r)

    def __rtruediv__(self, other):
        n = self.norm()
        c = self.conj()
        return QuadExt(other * c.a / n, other * c.b / n, self.r)

    def __pow__(self, n: int):
        out = QuadExt(1 + 0 * self.r, 0 * self.r, self.r)
        base = self if n >= 0 else 1 / self
        for _ in range(abs(n)):
            out = out * base
        return out

    def is_even(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        a, b = self._split(other)
        return self.a == a and self.b == b

    def __bool__(self):
        return not (self.a == 0 and self.b == 0)

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"({self.a}) + ({self.b})*rho"


# ---------------------------------------------------------------- JSON for scalars

def scalar_json(c):
    if isinstance(c, RatFunc):
        return {"ratfunc": c.to_json()}
    if isinstance(c, QuadExt):
        return {"a": scalar_json(c.a), "b": scalar_json(c.b), "rho2": scalar_json(c.r)}
    return rational_str(c)


def scalar_from_json(obj):
    if isinstance(obj, str):
        return parse_rational(obj)
    if "ratfunc" in obj:
        return RatFunc.from_json(obj["ratfunc"])
    return QuadExt(scalar_from_json(obj["a"]), scalar_from_json(obj["b"]), scalar_from_json(obj["rho2"]))


# ---------------------------------------------------------------- sampling

def random_rational(rng: random.Random, height: int = 10 ** 4) -> mpq:
    while True:
        num = rng.randint(-height, height)
        if num:
            return mpq(num, rng.randint(1, height))


def sample_assignment(names: Iterable[str], seed, height: int = 10 ** 4) -> Dict[str, mpq]:
    """Deterministic random rational point; names are drawn in canonical order."""
    rng = random.Random(seed)
    return {n: random_rational(rng, height) for n in sorted(set(names), key=var_sort_key)}


# ---------------------------------------------------------------- QSeries

Exponent = Tuple[mpq, ...]


def _deg(e: Exponent, w) -> mpq:
    return sum((a * b for a, b in zip(e, w) if b), mpq(0))


class QSeries:
    """Truncated series with exact rational exponents.

    ``vars`` names the series variables; ``weights`` gives each one's weight
    in the truncation degree (weight 0 marks a fugacity such as ``xi`` which
    is never truncated).  ``order`` bounds the weighted degree of stored
    terms; ``None`` means the series is known exactly (a polynomial).
    """

    __slots__ = ("vars", "weights", "order", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping = None, order=None,
                 weights: Sequence = None):
        self.vars = tuple(vars)
        self.weights = tuple(mpq(w) for w in (weights if weights is not None else [1] * len(self.vars)))
        self.order = None if order is None else as_rational(order)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(as_rational(x) for x in (e if isinstance(e, tuple) else (e,)))
            if len(e) != len(self.vars):
                raise ValueError("exponent length does not match variables")
            if c == 0:
                continue
            if self.order is not None and _deg(e, self.weights) > self.order:
                continue
            clean[e] = clean[e] + c if e in clean else c
            if clean[e] == 0:
                del clean[e]
        self.terms = clean

    # constructors ------------------------------------------------------------
    @classmethod
    def one(cls, vars=("q",), order=None, weights=None):
        return cls(vars, {tuple(mpq(0) for _ in vars): 1}, order, weights)

    @classmethod
    def monomial(cls, vars, exponent, coeff=1, order=None, weights=None):
        return cls(vars, {tuple(exponent): coeff}, order, weights)

    def _like(self, terms, order):
        return QSeries(self.vars, terms, order, self.weights)

    # queries -------------------------------------------------------------------
    def degree(self, e) -> mpq:
        return _deg(e, self.weights)

    def min_degree(self) -> Optional[mpq]:
        if not self.terms:
            return None
        return min(self.degree(e) for e in self.terms)

    def coefficient(self, exponent):
        if not isinstance(exponent, tuple):
            exponent = (exponent,)
        e = tuple(as_rational(x) for x in exponent)
        return self.terms.get(e, 0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (self.degree(t[0]), t[0]))

    def _check(self, other):
        if self.vars != other.vars or self.weights != other.weights:
            raise ValueError(f"incompatible series variables {self.vars} vs {other.vars}")

    # arithmetic ------------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, QSeries):
            return self + self._like({tuple(mpq(0) for _ in self.vars): other}, None)
        self._check(other)
        order = _min_order(self.order, other.order)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return self._like(out, order)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        return self._like({e: c * v for e, v in self.terms.items()}, self.order)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        self._check(other)
        a_self = self.min_degree()
        a_other = other.min_degree()
        cands = []
        if self.order is not None:
            cands.append(self.order + (a_other if a_other is not None else 0))
        if other.order is not None:
            cands.append(other.order + (a_self if a_self is not None else 0))
        order = min(cands) if cands else None
        w = self.weights
        out = {}
        for e1, c1 in self.terms.items():
            d1 = _deg(e1, w)
            for e2, c2 in other.terms.items():
                if order is not None and d1 + _deg(e2, w) > order:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return self._like(out, order)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("use series_compose for negative powers")
        out = QSeries.one(self.vars, None, self.weights)
        for _ in range(n):
            out = out * self
        return out

    def truncate(self, order):
        order = as_rational(order)
        if self.order is not None and order > self.order:
            raise ValueError("cannot truncate above the known order")
        return self._like(self.terms, order)

    def map_coefficients(self, fn: Callable):
        return self._like({e: fn(c) for e, c in self.terms.items()}, self.order)

    def evaluate(self, assignment):
        return self.map_coefficients(lambda c: evaluate(c, assignment))

    def substitute_monomial(self, var_images: Sequence[Sequence], new_vars, new_weights=None):
        """Rewrite each variable as a monomial in ``new_vars`` (exponent rows)."""
        out = {}
        n = len(new_vars)
        for e, c in self.terms.items():
            ne = [mpq(0)] * n
            for a, row in zip(e, var_images):
                for i in range(n):
                    ne[i] += a * as_rational(row[i])
            ne = tuple(ne)
            out[ne] = out[ne] + c if ne in out else c
        return QSeries(new_vars, out, self.order, new_weights)

    def shift(self, exponent):
        exponent = tuple(as_rational(x) for x in exponent)
        d = _deg(exponent, self.weights)
        order = None if self.order is None else self.order + d
        return self._like({tuple(a + b for a, b in zip(e, exponent)): c for e, c in self.terms.items()}, order)

    def equals(self, other, order=None) -> bool:
        return not self.difference(other, order)

    def difference(self, other, order=None):
        """Exponents (sorted) where the two series disagree up to the common order."""
        self._check(other)
        bound = _min_order(self.order, other.order)
        if order is not None:
            bound = _min_order(bound, as_rational(order))
        keys = set(self.terms) | set(other.terms)
        bad = []
        for e in keys:
            if bound is not None and self.degree(e) > bound:
                continue
            if not (self.terms.get(e, 0) - other.terms.get(e, 0)) == 0:
                bad.append(e)
        return sorted(bad, key=lambda e: (self.degree(e), e))

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.vars == other.vars and self.order == other.order and not self.difference(other)

    def to_json(self):
        single = len(self.vars) == 1
        terms = []
        for e, c in self.sorted_terms():
            key = rational_str(e[0]) if single else [rational_str(x) for x in e]
            terms.append([key, scalar_json(c)])
        return {
            "vars": list(self.vars),
            "weights": [rational_str(w) for w in self.weights],
            "order": None if self.order is None else rational_str(self.order),
            "terms": terms,
        }

    @classmethod
    def from_json(cls, obj):
        single = len(obj["vars"]) == 1
        terms = {}
        for key, c in obj["terms"]:
            e = (parse_rational(key),) if single else tuple(parse_rational(x) for x in key)
            terms[e] = scalar_from_json(c)
        order = None if obj["order"] is None else parse_rational(obj["order"])
        return cls(obj["vars"], terms, order, [parse_rational(w) for w in obj["weights"]])

    def __repr__(self):
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"{v}^{rational_str(x)}" for v, x in zip(self.vars, e) if x)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        tail = "" if self.order is None else f" + O(deg>{rational_str(self.order)})"
        return "QSeries[" + " + ".join(parts or ["0"]) + tail + "]"


def _min_order(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _power_sum(h: QSeries, coeffs: Callable[[int], object], order, const=None) -> QSeries:
    """Sum_{n>=0} coeffs(n) h^n truncated at ``order``; h must have positive minimal degree."""
    dmin = h.min_degree()
    out = QSeries.one(h.vars, order, h.weights).scale(coeffs(0)) if const is None else const
    if dmin is None:
        return out
    if dmin <= 0:
        raise BadLeadingTerm("composition needs a strictly positive minimal degree")
    hp = QSeries.one(h.vars, order, h.weights)
    n = 0
    while True:
        n += 1
        if n * dmin > order:
            break
        hp = hp * h
        out = out + hp.scale(coeffs(n))
    return out


def _binomial(a, n):
    c = 1
    for i in range(n):
        c = c * (a - i) / (i + 1)
    return c


def series_compose(f: QSeries, kind: str, a=None, lead=None, order=None) -> QSeries:
    """exp / log / pow(a) of a truncated series.

    * ``exp``: every term of ``f`` must have positive degree.
    * ``log``: ``f = 1 + h`` with ``h`` of positive degree.
    * ``pow``: ``f = x^lead (1 + h)``; the result is ``x^(a*lead) (1+h)^a``.
      ``a`` may be any scalar (a rational or a rational function).
    ``order`` is required when ``f`` is exact.
    """
    if order is None:
        order = f.order
    if order is None:
        raise ValueError("an exact series needs an explicit truncation order")
    order = as_rational(order)
    zero = tuple(mpq(0) for _ in f.vars)
    if kind == "exp":
        if f.terms and f.min_degree() <= 0:
            raise BadLeadingTerm("exp needs strictly positive minimal degree")
        return _power_sum(f, lambda n: mpq(1, _fact(n)), order)
    if kind == "log":
        if f.terms.get(zero, 0) != 1:
            raise BadLeadingTerm("log needs constant term 1")
        h = f - QSeries.one(f.vars, None, f.weights)
        z = QSeries(f.vars, {}, order, f.weights)
        return _power_sum(h, lambda n: 0 if n == 0 else mpq((-1) ** (n + 1), n), order, const=z)
    if kind == "pow":
        if a is None:
            raise ValueError("pow needs an exponent")
        if lead is None:
            lead = zero
        elif not isinstance(lead, tuple):
            lead = (lead,)
        lead = tuple(as_rational(x) for x in lead)
        g = f.shift(tuple(-x for x in lead))
        if g.terms.get(zero, 0) != 1:
            raise BadLeadingTerm("pow needs x^lead (1 + higher) form")
        h = g - QSeries.one(f.vars, None, f.weights)
        # the prefactor x^(a*lead) only makes sense for rational a
        new_lead = zero if lead == zero else tuple(as_rational(a) * x for x in lead)
        shift_deg = f.degree(new_lead)
        body = _power_sum(h, lambda n: _binomial(a, n), order - shift_deg)
        return body.shift(new_lead)
    raise ValueError(f"unknown composition {kind!r}")


@lru_cache(maxsize=None)
def _fact(n: int) -> int:
    return 1 if n < 2 else n * _fact(n - 1)


def eta_series(order, var: str = "q") -> QSeries:
    """q^(1/24) prod_{n>=1} (1 - q^n), truncated at exponent ``order``."""
    order = as_rational(order)
    lead = mpq(1, 24)
    if order < lead:
        raise ValueError("order must be at least 1/24")
    body = {0: 1}
    top = int(gmpy2.floor(order - lead))
    for n in range(1, top + 1):
        new = dict(body)
        for e, c in body.items():
            if e + n <= top:
                new[e + n] = new.get(e + n, 0) - c
        body = {e: c for e, c in new.items() if c}
    return QSeries((var,), {(mpq(e) + lead,): mpq(c) for e, c in body.items()}, order)
