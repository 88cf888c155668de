"""Verification suites behind ``qjet verify``; each returns a SuiteReport."""
from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass, field
from typing import List

from . import freealg, hopf, ideals, jetalg
from .freealg import nc_delta, nc_mul, normalize
from .jetalg import BiGradedPoly, from_free, mul_jet, pow_jet, x, y
from .qcoeff import (Q, IntPoly, QScalar, cyclotomic, divides, gauss_binomial,
                     gauss_binomial_pascal)


@dataclass
class Check:
    label: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    name: str
    checks: List[Check] = field(default_factory=list)

    def add(self, label, passed, detail=""):
        self.checks.append(Check(label, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary(self) -> str:
        ok = sum(c.passed for c in self.checks)
        return f"{self.name}: {ok}/{len(self.checks)} pass"

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checks": [{"label": c.label, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def binomial_expansion(m: int, n: int = 0) -> BiGradedPoly:
    """sum_k (m choose k)_q x^k y^(m-k) at jet order n."""
    out = BiGradedPoly.zero(n)
    for k in range(m + 1):
        out = out + BiGradedPoly.monomial(n, (k,) + (0,) * n, (m - k,) + (0,) * n,
                                          QScalar(gauss_binomial(m, k)))
    return out


def qbinom(max_m: int = 10) -> SuiteReport:
    rep = SuiteReport("qbinom")
    s = x() + y()
    for m in range(1, max_m + 1):
        rep.add(f"(x+y)^{m}", pow_jet(s, m) == binomial_expansion(m))
    return rep


def _gb(n, k) -> IntPoly:
    return gauss_binomial(n, k) if 0 <= k <= n else IntPoly()


def chu(max_m: int = 6) -> SuiteReport:
    rep = SuiteReport("chu")
    for n in range(1, max_m + 1):
        for k in range(1, n + 1):
            lhs = gauss_binomial(n, k)
            ok = (lhs == _gb(n - 1, k - 1) + _gb(n - 1, k).shift(k)
                  and lhs == _gb(n - 1, k) + _gb(n - 1, k - 1).shift(n - k)
                  and lhs == gauss_binomial_pascal(n, k))
            rep.add(f"pascal n={n} k={k}", ok)
    for m in range(max_m + 1):
        for n in range(max_m + 1):
            for p in range(max_m + 1):
                rhs = IntPoly()
                for k in range(p + 1):
                    rhs = rhs + (_gb(m, k) * _gb(n, p - k)).shift((m - k) * (p - k))
                rep.add(f"chu-vandermonde m={m} n={n} p={p}", _gb(m + n, p) == rhs)
    return rep


def rootofunity(primes=(2, 3, 5, 7)) -> SuiteReport:
    rep = SuiteReport("rootofunity")
    for p in primes:
        phi = cyclotomic(p)
        for k in range(1, p):
            rep.add(f"Phi_{p} | ({p} choose {k})_q", divides(phi, gauss_binomial(p, k)))
    return rep


def qexp(max_n: int = 6) -> SuiteReport:
    rep = SuiteReport("qexp")
    for N in range(max_n + 1):
        lhs = jetalg.q_exp_truncated("x+y", N)
        rhs = jetalg.truncate_total_degree(
            mul_jet(jetalg.q_exp_truncated("x", N), jetalg.q_exp_truncated("y", N)), N)
        rep.add(f"e_q(x+y) = e_q(x) e_q(y) mod degree > {N}", lhs == rhs)
    return rep


def confluence(n: int = 2) -> SuiteReport:
    rep = SuiteReport("confluence")
    systems = [freealg.jet_relations(k) for k in range(n + 1)] + [freealg.glq2_relations()]
    for rs in systems:
        pairs = freealg.critical_pairs(rs)
        bad = [freealg.render_word(w) for w, left, right in pairs if left != right]
        rep.add(f"{rs.name}: {len(pairs)} critical pairs", not bad, ", ".join(bad))
    return rep


def oracle(trials: int = 200, seed: int = 0, max_order: int = 2, max_degree: int = 5) -> SuiteReport:
    rep = SuiteReport("oracle")
    rng = random.Random(seed)
    bad = 0
    for _ in range(trials):
        n = rng.randint(0, max_order)
        p = freealg.random_ncpoly(rng, n, max_degree)
        r = freealg.random_ncpoly(rng, n, max_degree)
        if from_free(nc_mul(p, r), n) != mul_jet(from_free(p, n), from_free(r, n)):
            bad += 1
    rep.add(f"mul_jet = normalize(nc_mul) on {trials} pairs", bad == 0, f"{bad} mismatches")
    return rep


def deltacompat(max_n: int = 3) -> SuiteReport:
    rep = SuiteReport("deltacompat")
    for n in range(max_n + 1):
        rs = freealg.jet_relations(n + 1)
        rels = freealg.jet_relation_elements(n)
        bad = [k for k, r in rels.items() if not normalize(nc_delta(r, n + 1), rs).is_zero()]
        rep.add(f"delta of the {len(rels)} relations of A^({n})", not bad, str(bad))
    f = freealg.relation_g(0, 0)
    g1 = freealg.relation_g(1, 0)
    g2 = freealg.relation_g(0, 1)
    rep.add("delta f = g1 + g2", nc_delta(f, 1) == g1 + g2)
    return rep


def sizereduce(trials: int = 100, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("sizereduce")
    rng = random.Random(seed)
    bad = 0
    for _ in range(trials):
        n = rng.randint(0, 2)
        g = jetalg.random_bigraded(rng, n, max_terms=5, max_degree=4)
        sup = g.support()
        for nu in {d.i for d in sup}:
            h = ideals.reduce_y(g, nu, rng.randint(0, n))
            if h.support() != {jetalg.BiDegree(d.i, d.j + 1) for d in sup if d.i != nu} or not h.size() < g.size():
                bad += 1
        for mu in {d.j for d in sup}:
            h = ideals.reduce_x(g, mu, rng.randint(0, n))
            if h.support() != {jetalg.BiDegree(d.i + 1, d.j) for d in sup if d.j != mu} or not h.size() < g.size():
                bad += 1
    rep.add(f"predicted supports and strict size decrease on {trials} samples", bad == 0, f"{bad} failures")
    for alpha in (QScalar(1), QScalar(Fraction(3, 2)), Q + 2):
        g = x() - BiGradedPoly.const(0, alpha)
        lhs = mul_jet(y(), g) - mul_jet(g, y()).scale(Q)
        rep.add(f"y(x-a) - q(x-a)y = (q-1)a y for a = {alpha}", lhs == y().scale((Q - 1) * alpha)
                and lhs == ideals.reduce_y(g, 1))
    return rep


def extraction(trials: int = 100, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("extraction")
    rng = random.Random(seed)
    bad = 0
    count = 0
    for _ in range(trials):
        n = rng.randint(0, 2)
        g = jetalg.random_bigraded(rng, n, max_terms=5, max_degree=4)
        for target in g.support():
            count += 1
            res, trace = ideals.extract_bihomogeneous(g, target)
            if res.size() != 1 or not trace.is_valid():
                bad += 1
    rep.add(f"size-1 results with valid traces ({count} extractions)", bad == 0, f"{bad} failures")
    return rep


def primality(f: BiGradedPoly, trials: int = 200, seed: int = 0) -> SuiteReport:
    """Random pairs plus every pair of jet variables, so factorizations into symbols are always tried."""
    rep = SuiteReport("primality")
    n = f.order
    syms = [BiGradedPoly.var(n, fam, i) for fam in "xy" for i in range(n + 1)]
    pairs = [(g, h) for g in syms for h in syms]
    hits = ideals.primality_falsification(f, trials, seed, pairs=pairs)
    rep.add(f"no violations of primality of <{f}> in {trials} trials", not hits,
            "; ".join(f"({g}, {h})" for g, h in hits[:5]))
    return rep


def deltastable(max_n: int = 3) -> SuiteReport:
    rep = SuiteReport("deltastable")
    w = x(1) * y(1, 1) - x(1, 1) * y(1)
    for n in range(1, max_n + 1):
        rep.add(f"prolongation chain of {w} at order {n}", ideals.is_delta_stable(ideals.prolongation_chain(w, n)))
    withheld = ideals.IdealPresentation(2, [w.lift(2)])
    rep.add("chain with delta w withheld is not stable", not ideals.is_delta_stable(withheld))
    return rep


def hopf_suite() -> SuiteReport:
    rep = SuiteReport("hopf")
    for c in hopf.verify_hopf_axioms():
        rep.add(f"{c.axiom} on {c.element}", c.passed)
    for name, res in hopf.relation_residues().items():
        rep.add(f"relation {name}", res.is_zero())
    return rep


def coaction() -> SuiteReport:
    rep = SuiteReport("coaction")
    for name, res in hopf.verify_coaction().items():
        rep.add(f"{name} coaction residue is 0", res.is_zero(), str(res))
    for name, res in hopf.verify_coaction(control=True).items():
        rep.add(f"{name} control with commuting entries is nonzero", not res.is_zero())
    return rep


SUITES = ("qbinom", "chu", "rootofunity", "qexp", "confluence", "oracle", "deltacompat",
          "sizereduce", "extraction", "primality", "deltastable", "hopf", "coaction")
