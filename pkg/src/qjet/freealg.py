"""
Free algebra over Q(q) on jet / GL_q(2) letters, and a length-2 rewriting
engine.

Normal forms computed here are the ground truth that the bi-graded fast
path in :mod:`qjet.jetalg` is checked against.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, NamedTuple, Optional, Tuple

from .qcoeff import ONE, ZERO, Q, QScalar, q_power


class JetSymbol(NamedTuple):
    family: str
    order: int = 0

    def __str__(self):
        if self.family in ("X", "Y"):
            base = self.family.lower()
            if self.order <= 2:
                return base + "'" * self.order
            return f"{base}^({self.order})"
        return _GL_NAMES[self.family]


_GL_NAMES = {"A": "a", "B": "b", "C": "c", "D": "d", "DINV": "Dinv"}
FAMILIES = ("X", "Y", "A", "B", "C", "D", "DINV")

Word = Tuple[JetSymbol, ...]


def X(i: int = 0) -> JetSymbol:
    return JetSymbol("X", i)


def Y(i: int = 0) -> JetSymbol:
    return JetSymbol("Y", i)


GA, GB, GC, GD, DINV = (JetSymbol(f) for f in ("A", "B", "C", "D", "DINV"))


def render_word(w: Word) -> str:
    """Letters joined by ``*`` with runs collapsed to powers."""
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        s = str(w[i])
        parts.append(s if j - i == 1 else f"{s}^{j - i}")
        i = j
    return "*".join(parts)


class NCPoly:
    """
    Element of the free algebra: a finite map from words to nonzero QScalars.

    ``*`` is concatenation (no normalization).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for w, c in (terms.items() if isinstance(terms, dict) else terms):
                c = QScalar.coerce(c)
                w = tuple(w)
                if w in t:
                    c = t[w] + c
                if c.is_zero():
                    t.pop(w, None)
                else:
                    t[w] = c
        self.terms: Dict[Word, QScalar] = t

    @classmethod
    def word(cls, w, c=ONE) -> "NCPoly":
        return cls({tuple(w): c})

    @classmethod
    def symbol(cls, s: JetSymbol) -> "NCPoly":
        return cls({(s,): ONE})

    @classmethod
    def const(cls, c) -> "NCPoly":
        return cls({(): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def symbols(self):
        return {s for w in self.terms for s in w}

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def _combine(self, other, sign):
        t = dict(self.terms)
        for w, c in other.terms.items():
            v = t.get(w, ZERO) + (c if sign > 0 else -c)
            if v.is_zero():
                t.pop(w, None)
            else:
                t[w] = v
        return _ncpoly_raw(t)

    def __add__(self, other):
        other = _as_ncpoly(other)
        if other is NotImplemented:
            return other
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_ncpoly(other)
        if other is NotImplemented:
            return other
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return _ncpoly_raw({w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "NCPoly":
        c = QScalar.coerce(c)
        if c.is_zero():
            return NCPoly()
        return _ncpoly_raw({w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return nc_mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power in the free algebra")
        out = NCPoly.const(ONE)
        for _ in range(e):
            out = nc_mul(out, self)
        return out

    def __eq__(self, other):
        other = _as_ncpoly(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self, alphabet=None):
        rank = (lambda s: alphabet.index(s)) if alphabet else _default_rank
        return sorted(self.terms.items(), key=lambda wc: (len(wc[0]), [rank(s) for s in wc[0]]))

    def __str__(self):
        from .render import render_ncpoly
        return render_ncpoly(self)

    def __repr__(self):
        return f"NCPoly('{self}')"


def _default_rank(s: JetSymbol):
    return (FAMILIES.index(s.family), s.order)


def _ncpoly_raw(terms) -> NCPoly:
    p = NCPoly.__new__(NCPoly)
    p.terms = terms
    return p


def _as_ncpoly(x):
    if isinstance(x, NCPoly):
        return x
    try:
        return NCPoly.const(QScalar.coerce(x))
    except TypeError:
        return NotImplemented


def nc_mul(p: NCPoly, r: NCPoly) -> NCPoly:
    """Bilinear extension of word concatenation."""
    t: Dict[Word, QScalar] = {}
    for w1, c1 in p.terms.items():
        for w2, c2 in r.terms.items():
            w = w1 + w2
            v = t.get(w, ZERO) + c1 * c2
            if v.is_zero():
                t.pop(w, None)
            else:
                t[w] = v
    return _ncpoly_raw(t)


# -- rewriting ---------------------------------------------------------------

class NormalizationLimit(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class RewriteSystem:
    """
    Oriented length-2 rules ``(s, t) -> rhs`` over a totally ordered alphabet.

    ``post`` is an optional extra pass on rule-irreducible words; it returns
    a replacement NCPoly or None when the word is already final.
    """

    name: str
    rules: Dict[Tuple[JetSymbol, JetSymbol], NCPoly]
    alphabet: Tuple[JetSymbol, ...]
    post: Optional[Callable[[Word], Optional[NCPoly]]] = field(default=None, compare=False)

    def __post_init__(self):
        rank = {s: i for i, s in enumerate(self.alphabet)}
        object.__setattr__(self, "_rank", rank)
        for lhs, rhs in self.rules.items():
            for s in lhs + tuple(s for w in rhs.terms for s in w):
                if s not in rank:
                    raise ValueError(f"{self.name}: symbol {s} not in alphabet")
            for w in rhs.terms:
                if not self.word_less(w, lhs):
                    raise ValueError(f"{self.name}: rule {render_word(lhs)} does not decrease")

    def word_key(self, w: Word):
        """Graded lexicographic key induced by the alphabet order."""
        return (len(w), tuple(self._rank[s] for s in w))

    def word_less(self, u: Word, v: Word) -> bool:
        return self.word_key(u) < self.word_key(v)

    def redexes(self, w: Word):
        return [i for i in range(len(w) - 1) if (w[i], w[i + 1]) in self.rules]

    def __contains__(self, s: JetSymbol):
        return s in self._rank

    def __len__(self):
        return len(self.rules)


def normalize(p: NCPoly, rs: RewriteSystem, rng: Optional[random.Random] = None,
              max_steps: Optional[int] = None, stats: Optional[dict] = None) -> NCPoly:
    """
    Rewrite every term of ``p`` to normal form.

    The default strategy reduces the leftmost redex; passing ``rng`` picks a
    random redex instead (used to test strategy independence).
    """
    for s in p.symbols():
        if s not in rs:
            raise ValueError(f"symbol {s} is not in the alphabet of {rs.name}")
    memo: Dict[Word, Dict[Word, QScalar]] = {}
    counter = [0]

    def nf(w: Word) -> Dict[Word, QScalar]:
        hit = memo.get(w)
        if hit is not None:
            return hit
        pos = rs.redexes(w)
        if pos:
            i = pos[0] if rng is None else rng.choice(pos)
            counter[0] += 1
            if max_steps is not None and counter[0] > max_steps:
                raise NormalizationLimit(f"more than {max_steps} rewrite steps")
            repl = [(w[:i] + rw + w[i + 2:], rc) for rw, rc in rs.rules[(w[i], w[i + 1])].terms.items()]
        else:
            extra = rs.post(w) if rs.post is not None else None
            if extra is None:
                memo[w] = {w: ONE}
                return memo[w]
            counter[0] += 1
            repl = list(extra.terms.items())
        out: Dict[Word, QScalar] = {}
        for u, c in repl:
            for v, d in nf(u).items():
                val = out.get(v, ZERO) + c * d
                if val.is_zero():
                    out.pop(v, None)
                else:
                    out[v] = val
        memo[w] = out
        return out

    total: Dict[Word, QScalar] = {}
    for w, c in p.terms.items():
        for v, d in nf(w).items():
            val = total.get(v, ZERO) + c * d
            if val.is_zero():
                total.pop(v, None)
            else:
                total[v] = val
    if stats is not None:
        stats["steps"] = counter[0]
    return _ncpoly_raw(total)


def critical_pairs(rs: RewriteSystem):
    """
    All overlaps ``s t u`` where both ``s t`` and ``t u`` are left-hand sides,
    with the two one-step-then-normalize results.
    """
    out = []
    for (s, t), rhs1 in rs.rules.items():
        for (t2, u), rhs2 in rs.rules.items():
            if t2 != t:
                continue
            w = (s, t, u)
            left = normalize(nc_mul(rhs1, NCPoly.symbol(u)), rs)
            right = normalize(nc_mul(NCPoly.symbol(s), rhs2), rs)
            out.append((w, left, right))
    return out


# -- the two built-in systems ------------------------------------------------

def jet_alphabet(n: int) -> Tuple[JetSymbol, ...]:
    return tuple(X(i) for i in range(n + 1)) + tuple(Y(i) for i in range(n + 1))


@lru_cache(maxsize=None)
def jet_relations(n: int) -> RewriteSystem:
    """
    The relations f, g_ij, h_ij, hbar_ij of A^(n), oriented towards the
    x-first monomial order X_0 < ... < X_n < Y_0 < ... < Y_n.
    """
    if n < 0:
        raise ValueError("jet order must be nonnegative")
    rules = {}
    for i in range(n + 1):
        for j in range(n + 1):
            rules[(Y(i), X(j))] = NCPoly.word((X(j), Y(i)), Q)
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            rules[(X(j), X(i))] = NCPoly.word((X(i), X(j)))
            rules[(Y(j), Y(i))] = NCPoly.word((Y(i), Y(j)))
    return RewriteSystem(f"jet({n})", rules, jet_alphabet(n))


def relation_g(i: int, j: int) -> NCPoly:
    """g_ij = y^(i) x^(j) - q x^(j) y^(i)."""
    return NCPoly({(Y(i), X(j)): ONE, (X(j), Y(i)): -Q})


def relation_h(i: int, j: int) -> NCPoly:
    """h_ij = x^(i) x^(j) - x^(j) x^(i)."""
    return NCPoly({(X(i), X(j)): ONE}) - NCPoly({(X(j), X(i)): ONE})


def relation_hbar(i: int, j: int) -> NCPoly:
    return NCPoly({(Y(i), Y(j)): ONE}) - NCPoly({(Y(j), Y(i)): ONE})


def jet_relation_elements(n: int):
    """Every defining relation of A^(n) as a named free-algebra element."""
    out = {}
    for i in range(n + 1):
        for j in range(n + 1):
            out[("g", i, j)] = relation_g(i, j)
            if i != j:
                out[("h", i, j)] = relation_h(i, j)
                out[("hbar", i, j)] = relation_hbar(i, j)
    return out


GLQ2_ALPHABET = (GA, GB, GC, GD, DINV)


def _det_collapse(w: Word) -> Optional[NCPoly]:
    # On a sorted word a^i b^j c^k d^l Dinv^m with i, l, m >= 1 use
    # a b^j c^k d = q^-(j+k) b^j c^k (D + q^-1 bc) and D * Dinv = 1.
    cnt = {s: 0 for s in GLQ2_ALPHABET}
    for s in w:
        cnt[s] += 1
    i, j, k, l, m = (cnt[s] for s in GLQ2_ALPHABET)
    if not (i and l and m):
        return None
    if w != (GA,) * i + (GB,) * j + (GC,) * k + (GD,) * l + (DINV,) * m:
        return None
    scale = q_power(-(j + k))
    first = (GA,) * (i - 1) + (GB,) * j + (GC,) * k + (GD,) * (l - 1) + (DINV,) * (m - 1)
    second = (GA,) * (i - 1) + (GB,) * (j + 1) + (GC,) * (k + 1) + (GD,) * (l - 1) + (DINV,) * m
    return NCPoly({first: scale, second: scale * q_power(-1)})


@lru_cache(maxsize=None)
def glq2_relations() -> RewriteSystem:
    """
    GL_q(2) relations with a < b < c < d < Dinv, Dinv central, and the
    determinant collapse ``D * Dinv = 1`` as a post pass.
    """
    qinv = q_power(-1)
    rules = {
        (GB, GA): NCPoly.word((GA, GB), Q),
        (GC, GA): NCPoly.word((GA, GC), Q),
        (GD, GC): NCPoly.word((GC, GD), Q),
        (GD, GB): NCPoly.word((GB, GD), Q),
        (GC, GB): NCPoly.word((GB, GC)),
        (GD, GA): NCPoly({(GA, GD): ONE, (GB, GC): Q - qinv}),
    }
    for s in (GA, GB, GC, GD):
        rules[(DINV, s)] = NCPoly.word((s, DINV))
    return RewriteSystem("glq2", rules, GLQ2_ALPHABET, post=_det_collapse)


def commuting_relations(alphabet) -> RewriteSystem:
    """Plain commutativity on ``alphabet``; used as a control system."""
    rules = {}
    for i, s in enumerate(alphabet):
        for t in alphabet[i + 1:]:
            rules[(t, s)] = NCPoly.word((s, t))
    return RewriteSystem("commutative", rules, tuple(alphabet))


# -- the derivation ----------------------------------------------------------

def nc_delta(p: NCPoly, n: int) -> NCPoly:
    """
    The derivation B^(n-1) -> B^(n): x^(i) -> x^(i+1), y^(i) -> y^(i+1),
    extended by the Leibniz rule.
    """
    terms: Dict[Word, QScalar] = {}
    for w, c in p.terms.items():
        for pos, s in enumerate(w):
            if s.family not in ("X", "Y"):
                raise ValueError(f"delta is only defined on jet letters, got {s}")
            if s.order >= n:
                raise ValueError(f"delta into order {n} needs letters of order <= {n - 1}, got {s}")
            u = w[:pos] + (JetSymbol(s.family, s.order + 1),) + w[pos + 1:]
            v = terms.get(u, ZERO) + c
            if v.is_zero():
                terms.pop(u, None)
            else:
                terms[u] = v
    return _ncpoly_raw(terms)


def random_ncpoly(rng: random.Random, n: int, max_degree: int = 5, max_terms: int = 3,
                  coeffs=None) -> NCPoly:
    """Seeded random element of B^(n) with small integer-and-q coefficients."""
    letters = jet_alphabet(n)
    coeffs = coeffs or [ONE, -ONE, Q, -Q, q_power(-1), Q + 1, Q - 1, QScalar(2)]
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        w = tuple(rng.choice(letters) for _ in range(rng.randint(0, max_degree)))
        terms[w] = terms.get(w, ZERO) + rng.choice(coeffs)
    return NCPoly(terms)
