"""
Ideals of A^(n) generated by bi-homogeneous elements.

Size reduction (y g - q^v g y and g x - q^m x g), extraction of a
bi-homogeneous member with a replayable trace, commutative Groebner bases
over Q(q) with cofactor tracking, membership, delta-stability and the two
quotient maps.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Tuple

from .jetalg import (BiDegree, BiGradedPoly, delta_jet, mul_jet, random_bigraded,
                     support)
from .qcoeff import ONE, ZERO, QScalar, q_power

DEFAULT_BUDGET = 10_000
BUDGET_ENV = "QJET_BUCHBERGER_BUDGET"


class BuchbergerBudgetExceeded(RuntimeError):
    """Raised when the S-polynomial reduction budget runs out."""


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class IdealPresentation:
    order: int
    generators: Tuple[BiGradedPoly, ...]

    def __init__(self, order: int, generators=()):
        gens = tuple(generators)
        for g in gens:
            if g.order != order:
                raise ValueError(f"generator of order {g.order} in an order-{order} presentation")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "generators", gens)

    def is_bihomogeneous(self) -> bool:
        return all(g.size() == 1 for g in self.generators)

    def require_bihomogeneous(self):
        for g in self.generators:
            if g.size() != 1:
                raise ValueError(f"generator {g} is not bi-homogeneous")

    def lift(self, m: int) -> "IdealPresentation":
        return IdealPresentation(m, (g.lift(m) for g in self.generators))

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


# -- size reduction ------------------------------------------------------------

def reduce_y(g: BiGradedPoly, nu: int, s: int = 0) -> BiGradedPoly:
    """y^(s) g - q^nu g y^(s); kills every component of x-degree nu."""
    ys = BiGradedPoly.var(g.order, "y", s)
    return mul_jet(ys, g) - mul_jet(g, ys).scale(q_power(nu))


def reduce_x(g: BiGradedPoly, mu: int, s: int = 0) -> BiGradedPoly:
    """g x^(s) - q^mu x^(s) g; kills every component of y-degree mu."""
    xs = BiGradedPoly.var(g.order, "x", s)
    return mul_jet(g, xs) - mul_jet(xs, g).scale(q_power(mu))


class ReductionStep(NamedTuple):
    axis: str  # "Y-left" or "X-right"
    exponent: int
    symbol: int = 0


@dataclass(frozen=True)
class ReductionTrace:
    steps: Tuple[ReductionStep, ...]
    start: BiGradedPoly
    result: BiGradedPoly

    def replay(self) -> BiGradedPoly:
        g = self.start
        for st in self.steps:
            if st.axis == "Y-left":
                g = reduce_y(g, st.exponent, st.symbol)
            elif st.axis == "X-right":
                g = reduce_x(g, st.exponent, st.symbol)
            else:
                raise ValueError(f"unknown reduction axis {st.axis!r}")
        return g

    def is_valid(self) -> bool:
        return self.replay() == self.result

    def to_json(self) -> dict:
        from .render import jet_to_json
        return {
            "steps": [{"axis": s.axis, "exponent": s.exponent, "symbol": s.symbol} for s in self.steps],
            "start": jet_to_json(self.start),
            "result": jet_to_json(self.result),
        }


def extract_bihomogeneous(g: BiGradedPoly, target) -> Tuple[BiGradedPoly, ReductionTrace]:
    """
    Reduce g to a nonzero bi-homogeneous element built from its
    ``target`` component: first one y-step per unwanted x-degree, then one
    x-step per unwanted y-degree.
    """
    target = BiDegree(*target)
    if target not in support(g):
        raise ValueError(f"target {tuple(target)} is not in the support of g")
    steps: List[ReductionStep] = []
    cur = g
    for nu in sorted({d.i for d in support(cur)} - {target.i}, reverse=True):
        cur = reduce_y(cur, nu)
        steps.append(ReductionStep("Y-left", nu, 0))
    want_j = target.j + len(steps)
    for mu in sorted({d.j for d in support(cur)} - {want_j}, reverse=True):
        cur = reduce_x(cur, mu)
        steps.append(ReductionStep("X-right", mu, 0))
    assert cur.size() == 1, "extraction left more than one bi-degree"
    return cur, ReductionTrace(tuple(steps), g, cur)


# -- commutative Groebner bases over Q(q) --------------------------------------
#
# Internally a polynomial of A_c^(n) is a dict from flat exponent tuples
# (ex + ey) to QScalar.  Order: graded lex with x^(0) > ... > x^(n) > y^(0) > ... > y^(n).

def _flat(p: BiGradedPoly) -> Dict[tuple, QScalar]:
    return {ex + ey: c for (ex, ey), c in p.terms.items()}


def _unflat(n: int, p: Dict[tuple, QScalar]) -> BiGradedPoly:
    return BiGradedPoly._raw(n, {(e[:n + 1], e[n + 1:]): c for e, c in p.items()})


def _grlex(e):
    return (sum(e), e)


def _lead(p):
    return max(p, key=_grlex)


def _axpy(acc: dict, coef: QScalar, mono: tuple, p: dict):
    """acc += coef * mono * p (in place)."""
    for e, c in p.items():
        k = tuple(a + b for a, b in zip(e, mono))
        v = acc.get(k, ZERO) + coef * c
        if v.is_zero():
            acc.pop(k, None)
        else:
            acc[k] = v


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


class _GB(NamedTuple):
    order: int
    polys: Tuple[dict, ...]
    leads: Tuple[tuple, ...]
    reps: Tuple[Tuple[dict, ...], ...]  # reps[i][k]: cofactor of generator k
    spoly_count: int


def _reduce(f: dict, gb_polys, gb_leads):
    """Full reduction; returns (remainder, quotients per basis element)."""
    f = dict(f)
    rem: dict = {}
    quots = [dict() for _ in gb_polys]
    while f:
        m = _lead(f)
        c = f[m]
        for idx, lm in enumerate(gb_leads):
            if _divides(lm, m):
                g = gb_polys[idx]
                coef = c / g[lm]
                mono = tuple(a - b for a, b in zip(m, lm))
                _axpy(f, -coef, mono, g)
                v = quots[idx].get(mono, ZERO) + coef
                if v.is_zero():
                    quots[idx].pop(mono, None)
                else:
                    quots[idx][mono] = v
                break
        else:
            rem[m] = c
            del f[m]
    return rem, quots


def _combine_reps(ngens: int, base_rep, quots, reps):
    """base_rep - sum_i quots[i] * reps[i], cofactor-wise."""
    out = [dict(r) for r in base_rep]
    for q, rep in zip(quots, reps):
        if not q:
            continue
        for k in range(ngens):
            if not rep[k]:
                continue
            for mono, c in q.items():
                _axpy(out[k], -c, mono, rep[k])
    return out


@lru_cache(maxsize=256)
def _groebner(T: IdealPresentation, budget: int, max_degree: Optional[int]) -> _GB:
    T.require_bihomogeneous()
    n, ngens = T.order, len(T.generators)
    nv = 2 * (n + 1)
    one = (0,) * nv
    polys: List[dict] = []
    leads: List[tuple] = []
    reps: List[Tuple[dict, ...]] = []
    for k, g in enumerate(T.generators):
        if g.is_zero():
            continue
        p = _flat(g)
        polys.append(p)
        leads.append(_lead(p))
        reps.append(tuple({one: ONE} if i == k else {} for i in range(ngens)))
    pairs = [(i, j) for j in range(len(polys)) for i in range(j)]
    count = 0
    while pairs:
        pairs.sort(key=lambda ij: _grlex(tuple(max(a, b) for a, b in zip(leads[ij[0]], leads[ij[1]]))))
        i, j = pairs.pop(0)
        li, lj = leads[i], leads[j]
        lcm = tuple(max(a, b) for a, b in zip(li, lj))
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # coprime leading monomials
        if max_degree is not None and sum(lcm) > max_degree:
            continue
        count += 1
        if count > budget:
            raise BuchbergerBudgetExceeded(f"Groebner basis needs more than {budget} S-polynomial reductions")
        mi = tuple(a - b for a, b in zip(lcm, li))
        mj = tuple(a - b for a, b in zip(lcm, lj))
        ci, cj = polys[i][li].inverse(), polys[j][lj].inverse()
        s: dict = {}
        _axpy(s, ci, mi, polys[i])
        _axpy(s, -cj, mj, polys[j])
        srep = [dict() for _ in range(ngens)]
        for k in range(ngens):
            _axpy(srep[k], ci, mi, reps[i][k])
            _axpy(srep[k], -cj, mj, reps[j][k])
        rem, quots = _reduce(s, polys, leads)
        if rem:
            rrep = _combine_reps(ngens, srep, quots, reps)
            polys.append(rem)
            leads.append(_lead(rem))
            reps.append(tuple(rrep))
            new = len(polys) - 1
            pairs.extend((i2, new) for i2 in range(new))
    return _GB(n, tuple(polys), tuple(leads), tuple(reps), count)


def buchberger(T: IdealPresentation, budget: Optional[int] = None,
               max_degree: Optional[int] = None) -> IdealPresentation:
    """
    Groebner basis (graded lex) of the commutative ideal of A_c^(n)
    generated by the bi-homogeneous generators of T.  With ``max_degree`` the
    computation is truncated to total degree <= max_degree, which decides
    membership of elements up to that degree.
    """
    gb = _groebner(T, budget if budget is not None else default_budget(), max_degree)
    return IdealPresentation(T.order, (_unflat(T.order, p) for p in gb.polys))


@dataclass
class Membership:
    member: bool
    certificate: List[Tuple[BiGradedPoly, int]] = field(default_factory=list)
    remainder: Optional[BiGradedPoly] = None

    def __bool__(self):
        return self.member

    def replay(self, T: IdealPresentation) -> BiGradedPoly:
        """sum of cofactor * generator with the twisted product."""
        out = BiGradedPoly.zero(T.order)
        for cof, k in self.certificate:
            out = out + mul_jet(cof, T.generators[k])
        return out

    def certificate_json(self) -> list:
        from .render import render_jet
        return [[render_jet(c), k] for c, k in self.certificate]


def _twisted_cofactor(n: int, cof: dict, gen: BiGradedPoly) -> BiGradedPoly:
    # m *_c t = q^(-j k) m . t for a monomial m of y-degree j and t of x-degree k
    k = gen.bidegree().i
    t = {}
    for e, c in cof.items():
        j = sum(e[n + 1:])
        t[(e[:n + 1], e[n + 1:])] = c * q_power(-j * k) if j and k else c
    return BiGradedPoly._raw(n, t)


def membership(f: BiGradedPoly, T: IdealPresentation, budget: Optional[int] = None) -> Membership:
    """
    Two-sided membership in <T>.  Bi-homogeneous generators commute with
    monomials up to powers of q, so this is commutative membership of each
    bi-homogeneous component of f.  The certificate lists left cofactors:
    f = sum mul_jet(cofactor, T[k]).
    """
    if f.order != T.order:
        raise ValueError(f"jet order mismatch: {f.order} vs {T.order}")
    T.require_bihomogeneous()
    n, ngens = T.order, len(T.generators)
    if f.is_zero():
        return Membership(True, [], f)
    gb = _groebner(T, budget if budget is not None else default_budget(), f.total_degree())
    total_rep = [dict() for _ in range(ngens)]
    remainder = BiGradedPoly.zero(n)
    for comp in f.components().values():
        fp = _flat(comp)
        rem, quots = _reduce(fp, gb.polys, gb.leads)
        if rem:
            remainder = remainder + _unflat(n, rem)
            continue
        zero_rep = [dict() for _ in range(ngens)]
        rep = _combine_reps(ngens, zero_rep, quots, gb.reps)
        for k in range(ngens):
            # rep is -(f's cofactors) because it is built as 0 - quotients
            _axpy(total_rep[k], -ONE, (0,) * (2 * (n + 1)), rep[k])
    if remainder:
        return Membership(False, [], remainder)
    cert = [(_twisted_cofactor(n, total_rep[k], T.generators[k]), k)
            for k in range(ngens) if total_rep[k]]
    return Membership(True, cert, BiGradedPoly.zero(n))


# -- delta-stability ---------------------------------------------------------

def prolongations(T: IdealPresentation) -> List[BiGradedPoly]:
    """delta t for every generator t that uses a symbol of the top order n."""
    return [delta_jet(t) for t in T.generators if t.max_symbol_order() == T.order]


def delta_closure_presentation(T: IdealPresentation) -> IdealPresentation:
    """T lifted to order n+1 together with its first prolongations."""
    lifted = T.lift(T.order + 1)
    return IdealPresentation(T.order + 1, lifted.generators + tuple(prolongations(T)))


def delta_stability_details(T: IdealPresentation) -> List[Tuple[BiGradedPoly, bool]]:
    T.require_bihomogeneous()
    J = delta_closure_presentation(T)
    return [(delta_jet(t), membership(delta_jet(t), J).member) for t in T.generators]


def is_delta_stable(T: IdealPresentation) -> bool:
    """
    Finite form of delta T in T: delta of each generator must lie in the
    order-(n+1) ideal generated by T and its first prolongations.  Only
    generators free of order-n symbols can fail, since delta of the others
    is itself a prolongation.
    """
    return all(ok for _, ok in delta_stability_details(T))


def prolongation_chain(f: BiGradedPoly, n: int) -> IdealPresentation:
    """{f, delta f, delta^2 f, ...} at order n, stopping before order n is exceeded."""
    base = f.max_symbol_order()
    if base > n:
        raise ValueError(f"{f} needs jet order {base} > {n}")
    g = f.lift(max(base, 0))
    gens = []
    for _ in range(n - max(base, 0) + 1):
        gens.append(g.lift(n))
        g = delta_jet(g)
    return IdealPresentation(n, gens)


# -- quotients ---------------------------------------------------------------

def quotient_by_x(T) -> List[BiGradedPoly]:
    """Set every x^(i) to 0 in each generator; drop the ones that vanish."""
    out = []
    for g in T:
        h = BiGradedPoly._raw(g.order, {k: c for k, c in g.terms.items() if not any(k[0])})
        if h:
            out.append(h)
    return out


def quotient_by_y(T) -> List[BiGradedPoly]:
    out = []
    for g in T:
        h = BiGradedPoly._raw(g.order, {k: c for k, c in g.terms.items() if not any(k[1])})
        if h:
            out.append(h)
    return out


# -- randomized primality falsification --------------------------------------

def primality_falsification(f: BiGradedPoly, trials: int, seed: int,
                            pairs=(), max_degree: int = 4, max_terms: int = 3):
    """
    Search for g, h outside <f> with g h inside <f>.  ``pairs`` are checked
    before the ``trials`` random samples.
    """
    if f.size() != 1:
        raise ValueError("primality_falsification needs a bi-homogeneous f")
    T = IdealPresentation(f.order, (f,))
    rng = random.Random(seed)
    hits = []

    def check(g, h):
        if membership(g, T).member or membership(h, T).member:
            return
        if membership(mul_jet(g, h), T).member:
            hits.append((g, h))

    for g, h in pairs:
        check(g, h)
    for _ in range(trials):
        g = random_bigraded(rng, f.order, max_terms=max_terms, max_degree=max_degree)
        h = random_bigraded(rng, f.order, max_terms=max_terms, max_degree=max_degree)
        check(g, h)
    return hits
