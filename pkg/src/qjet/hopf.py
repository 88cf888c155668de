"""
F[GL_q(2)] at desk scale: quantum determinant, comultiplication, counit,
antipode, the Hopf axioms on generators, and the coaction on the quantum
plane.

Elements of F are NCPoly in glq2 normal form; tensors are dicts from
tuples of normal-form words to QScalar.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .freealg import (DINV, GA, GB, GC, GD, NCPoly, Word, X, Y, commuting_relations,
                      glq2_relations, jet_relations, nc_mul, normalize, render_word)
from .qcoeff import ONE, ZERO, Q, QScalar, q_power

DINV_BUDGET = 2
GENERATORS = {"a": GA, "b": GB, "c": GC, "d": GD}


class DinvBudgetExceeded(ValueError):
    pass


def felement(p: NCPoly) -> NCPoly:
    """Bring a free-algebra element on a, b, c, d, Dinv to glq2 normal form."""
    return normalize(p, glq2_relations())


def gen(name: str) -> NCPoly:
    return NCPoly.symbol(GENERATORS[name] if name in GENERATORS else DINV)


def fmul(u: NCPoly, v: NCPoly) -> NCPoly:
    return felement(nc_mul(u, v))


def det_q() -> NCPoly:
    """D = ad - q^-1 bc."""
    return NCPoly({(GA, GD): ONE, (GB, GC): -q_power(-1)})


def dinv_degree(p: NCPoly) -> int:
    return max((w.count(DINV) for w in p.terms), default=0)


class Tensor:
    """Sum of k-fold tensors of normal-form words."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms=None):
        self.arity = arity
        self.terms: Dict[Tuple[Word, ...], QScalar] = {}
        for legs, c in (terms or {}).items():
            self._bump(tuple(legs), QScalar.coerce(c))

    def _bump(self, legs, c):
        v = self.terms.get(legs, ZERO) + c
        if v.is_zero():
            self.terms.pop(legs, None)
        else:
            self.terms[legs] = v

    @classmethod
    def pure(cls, *factors: NCPoly) -> "Tensor":
        """f1 (x) f2 (x) ... expanded over the terms of each factor."""
        acc = {(): ONE}
        for f in factors:
            nxt: Dict[tuple, QScalar] = {}
            for legs, c in acc.items():
                for w, d in f.terms.items():
                    k = legs + (w,)
                    nxt[k] = nxt.get(k, ZERO) + c * d
            acc = nxt
        return cls(len(factors), acc)

    def __add__(self, other: "Tensor") -> "Tensor":
        out = Tensor(self.arity, self.terms)
        for legs, c in other.terms.items():
            out._bump(legs, c)
        return out

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + other.scale(-ONE)

    def scale(self, c) -> "Tensor":
        c = QScalar.coerce(c)
        return Tensor(self.arity, {k: v * c for k, v in self.terms.items()})

    def mul(self, other: "Tensor", systems) -> "Tensor":
        """Legwise product, each leg normalized in its own rewrite system."""
        out = Tensor(self.arity)
        for l1, c1 in self.terms.items():
            for l2, c2 in other.terms.items():
                legs = [normalize(NCPoly.word(u + v), rs) for u, v, rs in zip(l1, l2, systems)]
                for k, c in Tensor.pure(*legs).terms.items():
                    out._bump(k, c1 * c2 * c)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Tensor) and self.arity == other.arity and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: [(len(w), render_word(w)) for w in kv[0]])
        return " + ".join(f"({c})*" + " (x) ".join(render_word(w) for w in legs) for legs, c in items)

    __repr__ = __str__


def _glq2_systems(k):
    return [glq2_relations()] * k


_DELTA_LETTER = {
    GA: ((GA, GA), (GB, GC)),
    GB: ((GA, GB), (GB, GD)),
    GC: ((GC, GA), (GD, GC)),
    GD: ((GC, GB), (GD, GD)),
    DINV: ((DINV, DINV),),
}


def _comul_word(w: Word) -> Tensor:
    out = Tensor(2, {((), ()): ONE})
    for s in w:
        t = Tensor(2, {((u,), (v,)): ONE for u, v in _DELTA_LETTER[s]})
        out = out.mul(t, _glq2_systems(2))
    return out


def comul(p: NCPoly) -> Tensor:
    """Algebra map with Delta(a b; c d) = matrix product, Delta(Dinv) = Dinv (x) Dinv."""
    out = Tensor(2)
    for w, c in felement(p).terms.items():
        out = out + _comul_word(w).scale(c)
    return out


_EPS = {GA: ONE, GB: ZERO, GC: ZERO, GD: ONE, DINV: ONE}


def counit(p: NCPoly) -> QScalar:
    out = ZERO
    for w, c in p.terms.items():
        v = c
        for s in w:
            v = v * _EPS[s]
        out = out + v
    return out


def _antipode_letter(s) -> NCPoly:
    if s == GA:
        return NCPoly.word((DINV, GD))
    if s == GB:
        return NCPoly.word((DINV, GB), -Q)
    if s == GC:
        return NCPoly.word((DINV, GC), -q_power(-1))
    if s == GD:
        return NCPoly.word((DINV, GA))
    return det_q()


def antipode(p: NCPoly, budget: int = DINV_BUDGET) -> NCPoly:
    """Algebra anti-map: S(a) = Dinv d, S(b) = -q Dinv b, S(c) = -q^-1 Dinv c, S(d) = Dinv a, S(Dinv) = D."""
    out = NCPoly()
    for w, c in felement(p).terms.items():
        acc = NCPoly.const(c)
        for s in reversed(w):
            acc = fmul(acc, _antipode_letter(s))
        out = out + acc
    if dinv_degree(out) > budget:
        raise DinvBudgetExceeded(f"antipode result has Dinv-degree {dinv_degree(out)} > {budget}")
    return out


def _apply_leg(t: Tensor, leg: int, fn, arity_out: int) -> Tensor:
    """Replace leg ``leg`` by fn(word), which returns a Tensor or a scalar."""
    out = Tensor(arity_out)
    for legs, c in t.terms.items():
        image = fn(legs[leg])
        if isinstance(image, Tensor):
            for sub, d in image.terms.items():
                out._bump(legs[:leg] + sub + legs[leg + 1:], c * d)
        else:
            if not image.is_zero():
                out._bump(legs[:leg] + legs[leg + 1:], c * image)
    return out


def _multiply_legs(t: Tensor, left_fn=None, right_fn=None) -> NCPoly:
    out = NCPoly()
    for (u, v), c in t.terms.items():
        lu = left_fn(NCPoly.word(u)) if left_fn else NCPoly.word(u)
        rv = right_fn(NCPoly.word(v)) if right_fn else NCPoly.word(v)
        out = out + fmul(lu, rv).scale(c)
    return out


def as_tensor1(p: NCPoly) -> Tensor:
    return Tensor(1, {(w,): c for w, c in felement(p).terms.items()})


def coassociativity(p: NCPoly):
    """((Delta (x) id) Delta p, (id (x) Delta) Delta p)."""
    dp = comul(p)
    left = _apply_leg(dp, 0, _comul_word, 3)
    right = _apply_leg(dp, 1, _comul_word, 3)
    return left, right


def counit_laws(p: NCPoly):
    dp = comul(p)
    left = _apply_leg(dp, 0, lambda w: counit(NCPoly.word(w)), 1)
    right = _apply_leg(dp, 1, lambda w: counit(NCPoly.word(w)), 1)
    return left, right, as_tensor1(p)


def antipode_laws(p: NCPoly):
    dp = comul(p)
    left = _multiply_legs(dp, left_fn=antipode)
    right = _multiply_legs(dp, right_fn=antipode)
    return left, right, NCPoly.const(counit(felement(p)))


@dataclass
class AxiomCheck:
    axiom: str
    element: str
    passed: bool


def verify_hopf_axioms() -> List[AxiomCheck]:
    elements = [("a", gen("a")), ("b", gen("b")), ("c", gen("c")), ("d", gen("d")), ("D", det_q())]
    report = []
    for name, g in elements:
        l3, r3 = coassociativity(g)
        report.append(AxiomCheck("coassociativity", name, l3 == r3))
        lc, rc, g1 = counit_laws(g)
        report.append(AxiomCheck("counit", name, lc == g1 and rc == g1))
        la, ra, e = antipode_laws(g)
        report.append(AxiomCheck("antipode", name, la == e and ra == e))
    D = det_q()
    for name, g in elements[:4]:
        report.append(AxiomCheck("D central", name, felement(nc_mul(D, g) - nc_mul(g, D)).is_zero()))
    report.append(AxiomCheck("grouplike", "D", comul(D) == Tensor.pure(felement(D), felement(D))
                             and counit(felement(D)) == ONE))
    return report


def relation_residues() -> Dict[str, NCPoly]:
    """Left minus right side of each defining relation, normalized."""
    a, b, c, d = (gen(s) for s in "abcd")
    qi = q_power(-1)
    pairs = {
        "ab = q^-1 ba": (a * b, (b * a).scale(qi)),
        "ac = q^-1 ca": (a * c, (c * a).scale(qi)),
        "cd = q^-1 dc": (c * d, (d * c).scale(qi)),
        "bd = q^-1 db": (b * d, (d * b).scale(qi)),
        "bc = cb": (b * c, c * b),
        "ad - da = (q^-1 - q) bc": (a * d - d * a, (b * c).scale(qi - Q)),
    }
    return {k: felement(lhs - rhs) for k, (lhs, rhs) in pairs.items()}


# -- coaction on the quantum plane -------------------------------------------

def _coaction_residue(matrix, f_system) -> Tensor:
    plane = jet_relations(0)
    systems = [f_system, plane]
    x0, y0 = NCPoly.symbol(X(0)), NCPoly.symbol(Y(0))
    (a, b), (c, d) = matrix
    xp = Tensor.pure(NCPoly.symbol(a), x0) + Tensor.pure(NCPoly.symbol(b), y0)
    yp = Tensor.pure(NCPoly.symbol(c), x0) + Tensor.pure(NCPoly.symbol(d), y0)
    return yp.mul(xp, systems) - xp.mul(yp, systems).scale(Q)


def verify_coaction(control: bool = False) -> Dict[str, Tensor]:
    """
    Residues of y'x' - q x'y' for (x', y') = M (x, y) with M the generator
    matrix and its transpose.  ``control`` replaces the GL_q(2) relations
    by plain commutativity, which must leave a nonzero residue.
    """
    f_system = commuting_relations((GA, GB, GC, GD)) if control else glq2_relations()
    return {
        "primary": _coaction_residue(((GA, GB), (GC, GD)), f_system),
        "transposed": _coaction_residue(((GA, GC), (GB, GD)), f_system),
    }


def random_felement(rng: random.Random, max_degree: int = 3, max_terms: int = 3) -> NCPoly:
    letters = (GA, GB, GC, GD)
    coeffs = (ONE, -ONE, Q, q_power(-1), Q + 1, QScalar(2))
    t = {}
    for _ in range(rng.randint(1, max_terms)):
        w = tuple(rng.choice(letters) for _ in range(rng.randint(0, max_degree)))
        t[w] = t.get(w, ZERO) + rng.choice(coeffs)
    return felement(NCPoly(t))
