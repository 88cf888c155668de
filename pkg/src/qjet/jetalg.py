"""
A^(n) in normal form: polynomials in x^(0..n), y^(0..n) with x-letters
written first, multiplied by the twisted product.

A monomial is keyed by ``(ex, ey)``, two exponent tuples of length n+1.
"""
from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Dict, Iterable, NamedTuple, Tuple

from .freealg import NCPoly, X, Y, jet_relations, normalize
from .qcoeff import ONE, ZERO, Q, QScalar, q_factorial, q_power

# Crossing j y-letters over k x-letters costs q^(TWIST_SIGN * j * k).
# Fixed by y x -> q x y; tests re-derive it from the rewriting oracle.
TWIST_SIGN = 1

Key = Tuple[Tuple[int, ...], Tuple[int, ...]]


class BiDegree(NamedTuple):
    """(total x-degree, total y-degree); tuple order is the lexicographic order."""
    i: int
    j: int


def _bideg(key: Key) -> BiDegree:
    return BiDegree(sum(key[0]), sum(key[1]))


class BiGradedPoly:
    __slots__ = ("order", "terms", "_hash")

    def __init__(self, order: int, terms=None):
        if order < 0:
            raise ValueError("jet order must be nonnegative")
        self.order = order
        t: Dict[Key, QScalar] = {}
        if terms:
            for (ex, ey), c in (terms.items() if isinstance(terms, dict) else terms):
                ex, ey = tuple(ex), tuple(ey)
                if len(ex) != order + 1 or len(ey) != order + 1:
                    raise ValueError(f"exponent vectors must have length {order + 1}")
                if min(ex + ey) < 0:
                    raise ValueError("negative exponent")
                c = QScalar.coerce(c)
                v = t.get((ex, ey), ZERO) + c
                if v.is_zero():
                    t.pop((ex, ey), None)
                else:
                    t[(ex, ey)] = v
        self.terms: Dict[Key, QScalar] = t
        self._hash = None

    @classmethod
    def _raw(cls, order: int, terms) -> "BiGradedPoly":
        p = cls.__new__(cls)
        p.order, p.terms, p._hash = order, terms, None
        return p

    # constructors

    @classmethod
    def zero(cls, n: int) -> "BiGradedPoly":
        return cls._raw(n, {})

    @classmethod
    def const(cls, n: int, c=ONE) -> "BiGradedPoly":
        z = (0,) * (n + 1)
        return cls(n, {(z, z): c})

    @classmethod
    def one(cls, n: int) -> "BiGradedPoly":
        return cls.const(n, ONE)

    @classmethod
    def monomial(cls, n: int, ex, ey, c=ONE) -> "BiGradedPoly":
        return cls(n, {(tuple(ex), tuple(ey)): c})

    @classmethod
    def var(cls, n: int, family: str, i: int = 0) -> "BiGradedPoly":
        if not 0 <= i <= n:
            raise ValueError(f"jet order {i} exceeds ambient order {n}")
        e = [0] * (n + 1)
        e[i] = 1
        z = [0] * (n + 1)
        family = family.lower()
        if family == "x":
            return cls.monomial(n, e, z)
        if family == "y":
            return cls.monomial(n, z, e)
        raise ValueError(f"unknown jet family {family!r}")

    # basic structure

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def support(self):
        return support(self)

    def size(self) -> int:
        return size(self)

    def component(self, d) -> "BiGradedPoly":
        return bihomogeneous_component(self, d)

    def components(self) -> Dict[BiDegree, "BiGradedPoly"]:
        parts: Dict[BiDegree, dict] = {}
        for k, c in self.terms.items():
            parts.setdefault(_bideg(k), {})[k] = c
        return {d: BiGradedPoly._raw(self.order, t) for d, t in parts.items()}

    def is_bihomogeneous(self) -> bool:
        return self.size() == 1

    def bidegree(self) -> BiDegree:
        """Bi-degree of a bi-homogeneous element."""
        sup = support(self)
        if len(sup) != 1:
            raise ValueError("bidegree() needs a nonzero bi-homogeneous element")
        return next(iter(sup))

    def total_degree(self) -> int:
        return max((sum(ex) + sum(ey) for ex, ey in self.terms), default=-1)

    def lift(self, m: int) -> "BiGradedPoly":
        """Re-embed at jet order m >= order."""
        if m < self.order:
            used = max((i for ex, ey in self.terms for i in range(self.order + 1) if ex[i] or ey[i]), default=-1)
            if used > m:
                raise ValueError(f"element uses jet order {used}, cannot restrict to {m}")
            return BiGradedPoly._raw(m, {(ex[:m + 1], ey[:m + 1]): c for (ex, ey), c in self.terms.items()})
        pad = (0,) * (m - self.order)
        return BiGradedPoly._raw(m, {(ex + pad, ey + pad): c for (ex, ey), c in self.terms.items()})

    def max_symbol_order(self) -> int:
        """Highest jet index actually used (-1 for constants)."""
        top = -1
        for ex, ey in self.terms:
            for i in range(self.order, top, -1):
                if ex[i] or ey[i]:
                    top = i
                    break
        return top

    def to_free(self) -> NCPoly:
        """The normal-form word of each monomial in B^(n)."""
        t = {}
        for (ex, ey), c in self.terms.items():
            w = tuple(X(i) for i, e in enumerate(ex) for _ in range(e))
            w += tuple(Y(i) for i, e in enumerate(ey) for _ in range(e))
            t[w] = c
        return NCPoly(t)

    def sorted_terms(self):
        """Descending total degree, then descending exponent data."""
        return sorted(self.terms.items(), key=lambda kc: (sum(kc[0][0]) + sum(kc[0][1]), kc[0]), reverse=True)

    # arithmetic

    def _check(self, other):
        if isinstance(other, BiGradedPoly):
            if other.order != self.order:
                raise ValueError(f"jet order mismatch: {self.order} vs {other.order}")
            return other
        try:
            return BiGradedPoly.const(self.order, QScalar.coerce(other))
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for k, c in other.terms.items():
            v = t.get(k, ZERO) + c
            if v.is_zero():
                t.pop(k, None)
            else:
                t[k] = v
        return BiGradedPoly._raw(self.order, t)

    __radd__ = __add__

    def __neg__(self):
        return BiGradedPoly._raw(self.order, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "BiGradedPoly":
        c = QScalar.coerce(c)
        if c.is_zero():
            return BiGradedPoly.zero(self.order)
        return BiGradedPoly._raw(self.order, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, BiGradedPoly):
            return mul_jet(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        return self.scale(QScalar.coerce(other).inverse())

    def __pow__(self, m: int):
        return pow_jet(self, m)

    def __eq__(self, other):
        if isinstance(other, BiGradedPoly):
            return self.order == other.order and self.terms == other.terms
        try:
            c = QScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self == BiGradedPoly.const(self.order, c)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        from .render import render_jet
        return render_jet(self)

    def __repr__(self):
        return f"BiGradedPoly({self.order}, {str(self)!r})"


def x(n: int = 0, i: int = 0) -> BiGradedPoly:
    return BiGradedPoly.var(n, "x", i)


def y(n: int = 0, i: int = 0) -> BiGradedPoly:
    return BiGradedPoly.var(n, "y", i)


def _add_vec(a, b):
    return tuple(u + v for u, v in zip(a, b))


def from_free(p: NCPoly, n: int) -> BiGradedPoly:
    """Read the exponent data off the normal form of p in A^(n)."""
    nf = normalize(p, jet_relations(n))
    terms = {}
    for w, c in nf.terms.items():
        ex, ey = [0] * (n + 1), [0] * (n + 1)
        seen_y = False
        for s in w:
            if s.family == "X":
                if seen_y:
                    raise AssertionError(f"normal form is not x-first: {w}")
                ex[s.order] += 1
            else:
                seen_y = True
                ey[s.order] += 1
        terms[(tuple(ex), tuple(ey))] = c
    return BiGradedPoly._raw(n, terms)


def mul_jet(a: BiGradedPoly, b: BiGradedPoly) -> BiGradedPoly:
    """
    The product of A^(n) transported to exponent data: the commutative
    product of monomials times q^(j*k), j the y-degree of the left factor
    and k the x-degree of the right one.
    """
    if a.order != b.order:
        raise ValueError(f"jet order mismatch: {a.order} vs {b.order}")
    t: Dict[Key, QScalar] = {}
    right = [((ex2, ey2), c2, sum(ex2)) for (ex2, ey2), c2 in b.terms.items()]
    for (ex1, ey1), c1 in a.terms.items():
        j = sum(ey1)
        for (ex2, ey2), c2, k in right:
            key = (_add_vec(ex1, ex2), _add_vec(ey1, ey2))
            c = c1 * c2
            if j and k:
                c = c * q_power(TWIST_SIGN * j * k)
            v = t.get(key, ZERO) + c
            if v.is_zero():
                t.pop(key, None)
            else:
                t[key] = v
    return BiGradedPoly._raw(a.order, t)


def mul_commutative(a: BiGradedPoly, b: BiGradedPoly) -> BiGradedPoly:
    """Ordinary product in A_c^(n) (no twist)."""
    if a.order != b.order:
        raise ValueError(f"jet order mismatch: {a.order} vs {b.order}")
    t: Dict[Key, QScalar] = {}
    for (ex1, ey1), c1 in a.terms.items():
        for (ex2, ey2), c2 in b.terms.items():
            key = (_add_vec(ex1, ex2), _add_vec(ey1, ey2))
            v = t.get(key, ZERO) + c1 * c2
            if v.is_zero():
                t.pop(key, None)
            else:
                t[key] = v
    return BiGradedPoly._raw(a.order, t)


def pow_jet(a: BiGradedPoly, m: int) -> BiGradedPoly:
    if m < 0:
        raise ValueError("pow_jet needs m >= 0")
    out = BiGradedPoly.one(a.order)
    for _ in range(m):
        out = mul_jet(out, a)
    return out


def delta_jet(a: BiGradedPoly) -> BiGradedPoly:
    """
    The derivation, landing in order n+1.  Replacing one x-letter by the
    next x-letter never moves it across a y-letter, so no q-factors arise.
    """
    n = a.order + 1
    t: Dict[Key, QScalar] = {}

    def bump(key, c):
        v = t.get(key, ZERO) + c
        if v.is_zero():
            t.pop(key, None)
        else:
            t[key] = v

    for (ex, ey), c in a.terms.items():
        ex, ey = ex + (0,), ey + (0,)
        for i in range(n):
            if ex[i]:
                e = list(ex)
                e[i] -= 1
                e[i + 1] += 1
                bump((tuple(e), ey), c * ex[i])
            if ey[i]:
                e = list(ey)
                e[i] -= 1
                e[i + 1] += 1
                bump((ex, tuple(e)), c * ey[i])
    return BiGradedPoly._raw(n, t)


def support(g: BiGradedPoly):
    return {_bideg(k) for k in g.terms}


def size(g: BiGradedPoly) -> int:
    return len(support(g))


def bihomogeneous_component(g: BiGradedPoly, d) -> BiGradedPoly:
    d = BiDegree(*d)
    return BiGradedPoly._raw(g.order, {k: c for k, c in g.terms.items() if _bideg(k) == d})


def truncate_total_degree(g: BiGradedPoly, N: int) -> BiGradedPoly:
    return BiGradedPoly._raw(g.order, {k: c for k, c in g.terms.items() if sum(k[0]) + sum(k[1]) <= N})


def q_exp_truncated(v, N: int) -> BiGradedPoly:
    """Sum of v^m / (m)!_q for m <= N, at jet order 0."""
    if N < 0:
        raise ValueError("truncation order must be nonnegative")
    if isinstance(v, str):
        v = {"x": x(0), "y": y(0), "x+y": x(0) + y(0)}[v.replace(" ", "")]
    if v.order != 0:
        raise ValueError("q_exp_truncated works at jet order 0")
    out = BiGradedPoly.zero(0)
    power = BiGradedPoly.one(0)
    for m in range(N + 1):
        out = out + power.scale(QScalar(1, q_factorial(m)))
        power = mul_jet(power, v)
    return out


def exponent_vectors(n: int, max_total: int) -> list:
    """Every (ex, ey) key in 2(n+1) variables with total degree <= max_total."""
    nv = 2 * (n + 1)
    out = []
    for e in itertools.product(range(max_total + 1), repeat=nv):
        if sum(e) <= max_total:
            out.append((tuple(e[:n + 1]), tuple(e[n + 1:])))
    return out


SAMPLE_COEFFS = (ONE, -ONE, Q, -Q, q_power(-1), -q_power(-1), Q + 1, Q - 1)


def random_bigraded(rng: random.Random, n: int, max_terms: int = 3, max_degree: int = 4,
                    coeffs: Iterable[QScalar] = SAMPLE_COEFFS, nonzero: bool = True) -> BiGradedPoly:
    """
    Seeded sample: 1..max_terms monomials drawn uniformly from the exponent
    vectors of total degree <= max_degree, coefficients drawn from ``coeffs``.
    """
    keys = _keys_cache(n, max_degree)
    coeffs = tuple(coeffs)
    while True:
        t = {}
        for _ in range(rng.randint(1, max_terms)):
            k = rng.choice(keys)
            t[k] = t.get(k, ZERO) + rng.choice(coeffs)
        p = BiGradedPoly(n, t)
        if p or not nonzero:
            return p


@lru_cache(maxsize=None)
def _keys_cache(n, d):
    return tuple(exponent_vectors(n, d))
