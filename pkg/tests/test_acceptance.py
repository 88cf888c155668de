"""One test per acceptance criterion, at the stated tolerance and time limit."""
import random
import time
from contextlib import contextmanager

import pytest

from qjet import verify
from qjet.cli import main
from qjet.freealg import (DINV, GA, GB, GC, GD, NCPoly, critical_pairs, glq2_relations,
                          jet_relation_elements, jet_relations, nc_delta, nc_mul, normalize,
                          random_ncpoly, relation_g)
from qjet.hopf import det_q, felement, gen, relation_residues, verify_coaction, verify_hopf_axioms
from qjet.ideals import (IdealPresentation, extract_bihomogeneous, is_delta_stable,
                         primality_falsification, prolongation_chain, reduce_x, reduce_y)
from qjet.jetalg import (BiDegree, BiGradedPoly, from_free, mul_jet, pow_jet, q_exp_truncated,
                         random_bigraded, truncate_total_degree, x, y)
from qjet.parse import parse_jet
from qjet.qcoeff import Q, IntPoly, QScalar, cyclotomic, divides, gauss_binomial, gauss_binomial_pascal
from qjet.render import render_jet


@contextmanager
def time_limit(seconds):
    t0 = time.perf_counter()
    yield
    elapsed = time.perf_counter() - t0
    assert elapsed < seconds, f"took {elapsed:.2f}s, limit {seconds}s"


def _gb(n, k):
    return gauss_binomial(n, k) if 0 <= k <= n else IntPoly()


@pytest.mark.criterion(1, "q-binomial theorem, 1 <= m <= 10, < 5 s")
def test_c01_q_binomial_theorem():
    with time_limit(5):
        s = x() + y()
        for m in range(1, 11):
            expected = BiGradedPoly(0, {((k,), (m - k,)): QScalar(gauss_binomial(m, k)) for k in range(m + 1)})
            assert pow_jet(s, m) == expected


@pytest.mark.criterion(2, "q-Pascal and q-Chu-Vandermonde, m, n, p <= 6, < 5 s")
def test_c02_pascal_chu_vandermonde():
    with time_limit(5):
        for n in range(1, 7):
            for k in range(1, n + 1):
                assert gauss_binomial(n, k) == _gb(n - 1, k - 1) + _gb(n - 1, k).shift(k)
                assert gauss_binomial(n, k) == _gb(n - 1, k) + _gb(n - 1, k - 1).shift(n - k)
                assert gauss_binomial(n, k) == gauss_binomial_pascal(n, k)
        for m in range(7):
            for n in range(7):
                for p in range(7):
                    rhs = IntPoly()
                    for k in range(p + 1):
                        rhs = rhs + (_gb(m, k) * _gb(n, p - k)).shift((m - k) * (p - k))
                    assert _gb(m + n, p) == rhs, (m, n, p)


@pytest.mark.criterion(3, "root-of-unity collapse: Phi_p | (p choose k)_q")
def test_c03_root_of_unity():
    for p in (2, 3, 5, 7):
        for k in range(1, p):
            assert divides(cyclotomic(p), gauss_binomial(p, k))


@pytest.mark.criterion(4, "q-exponential multiplicativity, N <= 6")
def test_c04_q_exponential():
    for N in range(7):
        prod = mul_jet(q_exp_truncated("x", N), q_exp_truncated("y", N))
        assert q_exp_truncated("x+y", N) == truncate_total_degree(prod, N)


@pytest.mark.criterion(5, "normal forms: idempotent, linear, strategy-stable, confluent")
def test_c05_normal_forms():
    rng = random.Random(5)
    alpha, beta = Q - 2, Q ** -1
    for n in range(3):
        rs = jet_relations(n)
        for _ in range(50):
            p, r = random_ncpoly(rng, n), random_ncpoly(rng, n)
            np_ = normalize(p, rs)
            assert normalize(np_, rs) == np_
            assert normalize(p.scale(alpha) + r.scale(beta), rs) == np_.scale(alpha) + normalize(r, rs).scale(beta)
            assert normalize(p, rs, rng=random.Random(rng.random())) == np_
    rs = glq2_relations()
    for _ in range(50):
        w = tuple(rng.choice((GA, GB, GC, GD, DINV)) for _ in range(rng.randint(0, 5)))
        p = NCPoly.word(w)
        assert normalize(p, rs, rng=random.Random(rng.random())) == normalize(p, rs)
    failures = 0
    for rs in [jet_relations(0), jet_relations(1), jet_relations(2), glq2_relations()]:
        failures += sum(left != right for _, left, right in critical_pairs(rs))
    assert failures == 0


@pytest.mark.criterion(6, "oracle equivalence, 200 seeded pairs, < 60 s")
def test_c06_oracle_equivalence():
    with time_limit(60):
        rng = random.Random(6)
        for _ in range(200):
            n = rng.randint(0, 2)
            p, r = random_ncpoly(rng, n, 5), random_ncpoly(rng, n, 5)
            assert from_free(nc_mul(p, r), n) == mul_jet(from_free(p, n), from_free(r, n))


@pytest.mark.criterion(7, "delta-compatibility of the relations, n <= 3; delta f = g1 + g2")
def test_c07_delta_compatibility():
    for n in range(4):
        rs = jet_relations(n + 1)
        for key, r in jet_relation_elements(n).items():
            assert normalize(nc_delta(r, n + 1), rs).is_zero(), key
    assert nc_delta(relation_g(0, 0), 1) == relation_g(1, 0) + relation_g(0, 1)


@pytest.mark.criterion(8, "size reduction: predicted supports and strict decrease on 100 samples; worked instance")
def test_c08_size_reduction():
    rng = random.Random(8)
    for _ in range(100):
        n = rng.randint(0, 2)
        g = random_bigraded(rng, n, 5, 4)
        sup = g.support()
        for nu in {d.i for d in sup}:
            h = reduce_y(g, nu)
            assert h.support() == {BiDegree(d.i, d.j + 1) for d in sup if d.i != nu}
            assert h.size() < g.size()
        for mu in {d.j for d in sup}:
            h = reduce_x(g, mu)
            assert h.support() == {BiDegree(d.i + 1, d.j) for d in sup if d.j != mu}
            assert h.size() < g.size()
    for alpha in (QScalar(1), QScalar(5, 3), Q + 1):
        g = x() - BiGradedPoly.const(0, alpha)
        worked = mul_jet(y(), g) - mul_jet(g, y()).scale(Q)
        assert worked == y().scale((Q - 1) * alpha)


@pytest.mark.criterion(9, "extraction: size-1 results with replayable traces on 100 samples")
def test_c09_extraction():
    rng = random.Random(9)
    for _ in range(100):
        n = rng.randint(0, 2)
        g = random_bigraded(rng, n, 5, 4)
        for target in g.support():
            res, trace = extract_bihomogeneous(g, target)
            assert res and res.size() == 1
            assert trace.replay() == res


@pytest.mark.criterion(10, "primality falsification: no hits for xy'-x'y and x; control x*y hits (x, y)")
def test_c10_primality():
    assert primality_falsification(parse_jet("x*y' - x'*y", 1), 200, 10) == []
    assert primality_falsification(parse_jet("x", 0), 200, 10) == []
    hits = primality_falsification(x() * y(), 0, 10, pairs=[(x(), y())])
    assert hits == [(x(), y())]


@pytest.mark.criterion(11, "delta-stability of the prolongation chain, n <= 3; withheld fixture fails")
def test_c11_delta_stable():
    w = parse_jet("x*y' - x'*y", 1)
    for n in range(1, 4):
        assert is_delta_stable(prolongation_chain(w, n))
    assert not is_delta_stable(IdealPresentation(2, [w.lift(2)]))


@pytest.mark.criterion(12, "Hopf axioms, D central, coaction residues 0, control nonzero, < 10 s")
def test_c12_hopf():
    with time_limit(10):
        report = verify_hopf_axioms()
        assert report and all(r.passed for r in report)
        for elem in ("a", "b", "c", "d", "D"):
            for axiom in ("coassociativity", "counit", "antipode"):
                assert any(r.axiom == axiom and r.element == elem for r in report)
        D = det_q()
        for g in "abcd":
            assert felement(nc_mul(D, gen(g)) - nc_mul(gen(g), D)).is_zero()
        assert all(r.is_zero() for r in relation_residues().values())
        assert all(r.is_zero() for r in verify_coaction().values())
        assert all(not r.is_zero() for r in verify_coaction(control=True).values())


VERIFY_COMMANDS = [
    ["verify", "qbinom", "--max", "10"],
    ["verify", "chu", "--max", "6"],
    ["verify", "rootofunity", "--primes", "2,3,5,7"],
    ["verify", "qexp", "--max", "6"],
    ["verify", "confluence", "-n", "2"],
    ["verify", "hopf"],
    ["verify", "coaction"],
    ["verify", "extraction", "--trials", "100", "--seed", "1"],
    ["verify", "primality", "-e", "x*y' - x'*y", "-n", "1", "--trials", "200", "--seed", "1"],
    ["verify", "primality", "-e", "x", "-n", "0", "--trials", "200", "--seed", "1"],
    ["verify", "oracle"],
    ["verify", "deltacompat"],
    ["verify", "sizereduce"],
    ["verify", "deltastable"],
]


@pytest.mark.criterion(13, "CLI: 500 seeded round-trips; every verify subcommand exits 0")
def test_c13_cli(capsys):
    rng = random.Random(13)
    for _ in range(500):
        n = rng.randint(0, 2)
        g = random_bigraded(rng, n, 5, 4)
        assert parse_jet(render_jet(g), n) == g
    suites = {argv[1] for argv in VERIFY_COMMANDS}
    assert suites == set(verify.SUITES)
    for argv in VERIFY_COMMANDS:
        assert main(argv) == 0, argv
    capsys.readouterr()
