import json
import random

import pytest

from qjet.cli import main, read_ideal
from qjet.freealg import relation_g
from qjet.jetalg import BiGradedPoly, random_bigraded
from qjet.parse import ParseError, Neg, Power, Product, Sum, Var, parse, parse_free, parse_jet
from qjet.qcoeff import Q, QScalar
from qjet.render import jet_from_json, jet_to_json, render_jet


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out.strip(), err.strip()


def test_parse_tree_shapes():
    assert parse("x") == Var("x", 0)
    assert parse("x''", 2) == Var("x", 2)
    assert parse("x^(2)", 2) == Var("x", 2)
    assert isinstance(parse("y x"), Product)
    assert isinstance(parse("x^3"), Power)
    assert isinstance(parse("x - y"), Sum)
    assert isinstance(parse("x*(-y)"), Product) and isinstance(parse("x*(-y)").factors[1][1], Sum)
    assert isinstance(parse("x*-y").factors[1][1], Neg)


def test_parse_examples():
    assert parse_free("y*x - q*x*y") == relation_g(0, 0)
    assert parse_free("y'x - q x y'", 1) == relation_g(1, 0)
    assert parse_free("yx") == parse_free("y*x") != parse_free("x*y")


@pytest.mark.parametrize("text, n", [("x^(3)", 2), ("y'", 0), ("a", 0), ("x +", 0), ("(x", 0), ("x $ y", 0)])
def test_parse_errors(text, n):
    with pytest.raises(ParseError) as e:
        parse(text, n)
    assert e.value.position >= 0


def test_parse_error_messages():
    with pytest.raises(ParseError, match="jet order overflow"):
        parse("x^(3)", 2)
    with pytest.raises(ParseError, match="unknown symbol"):
        parse("Dinv", 0)
    with pytest.raises(ParseError, match="unknown symbol"):
        parse("x", 0, "glq2")


def test_non_scalar_division_rejected():
    with pytest.raises(ValueError):
        parse_free("x/y")
    with pytest.raises(ValueError):
        parse_free("x^-1")


def test_round_trip_seeded():
    rng = random.Random(13)
    for _ in range(500):
        n = rng.randint(0, 2)
        g = random_bigraded(rng, n, 5, 4, coeffs=(QScalar(1), -Q, QScalar(3, 2), Q ** -2 + 1, 1 / (Q + 1)))
        assert parse_jet(render_jet(g), n) == g
        assert jet_from_json(json.loads(json.dumps(jet_to_json(g)))) == g


def test_render_conventions():
    assert render_jet(parse_jet("x^(3)*y''", 3)) == "x^(3)*y''"
    assert render_jet(parse_jet("y + x^2 + 1", 0)) == "x^2 + y + 1"
    assert render_jet(BiGradedPoly.zero(1)) == "0"


def test_json_schema():
    data = jet_to_json(parse_jet("3/2*x*y' - q^-1", 1))
    assert set(data) == {"order", "terms"}
    for t in data["terms"]:
        assert set(t) == {"coeff", "ex", "ey"}
        assert set(t["coeff"]) == {"num", "den"}
        assert all(isinstance(v, str) for v in t["coeff"]["num"] + t["coeff"]["den"])


def test_normalize_command(capsys):
    assert run(capsys, "normalize", "-n", "0", "-e", "y*x")[:2] == (0, "q*x*y")
    rc, out, _ = run(capsys, "normalize", "--mode", "glq2", "-e", "d*a")
    assert rc == 0 and out == "a*d + (q-q^-1)*b*c"
    rc, out, _ = run(capsys, "normalize", "-n", "0", "-e", "y*x", "--json")
    assert json.loads(out) == jet_to_json(parse_jet("q*x*y"))


def test_mul_command(capsys):
    rc, out, _ = run(capsys, "mul", "-n", "0", "-e", "x+y", "-e", "x+y")
    assert (rc, out) == (0, "x^2 + (q+1)*x*y + y^2")
    rc, out, _ = run(capsys, "mul", "-n", "2", "-e", "y''*y + x'", "-e", "x*x''-y'", "--oracle")
    assert rc == 0


def test_delta_support_size_reduce(capsys):
    assert run(capsys, "delta", "-n", "1", "-e", "x*y' - x'*y")[1] == "x*y'' - x''*y"
    assert run(capsys, "delta", "-n", "0", "-e", "x", "--times", "3")[1] == "x^(3)"
    assert run(capsys, "support", "-n", "0", "-e", "x^2+y")[1] == "(0,1) (2,0)"
    assert run(capsys, "size", "-n", "0", "-e", "x^2+y")[1] == "2"
    rc, out, _ = run(capsys, "reduce", "-n", "0", "-e", "x^2+y", "--axis", "y", "--exp", "2")
    assert parse_jet(out) == parse_jet("(1-q^2)*y^2")
    rc, out, _ = run(capsys, "reduce", "-n", "0", "-e", "x^2+y", "--axis", "x", "--exp", "1")
    assert parse_jet(out) == parse_jet("(1-q)*x^3")


def test_extract_command(capsys, tmp_path):
    trace = tmp_path / "t.json"
    rc, out, _ = run(capsys, "extract", "-n", "0", "-e", "x^2 + x*y + y", "--target", "2,0", "--trace", str(trace))
    assert rc == 0
    data = json.loads(trace.read_text())
    assert [s["exponent"] for s in data["steps"]] == [1, 0]
    assert jet_from_json(data["result"]).support() == {(2, 2)}


def test_member_and_deltastable_commands(capsys, tmp_path):
    f = tmp_path / "ideal.txt"
    f.write_text("# the Wronskian ideal\norder: 1\nx*y' - x'*y  # generator\n\n")
    T = read_ideal(str(f))
    assert T.order == 1 and len(T) == 1
    rc, out, _ = run(capsys, "member", "-e", "x*x*y' - x*x'*y", "--ideal", str(f), "--json")
    data = json.loads(out)
    assert rc == 0 and data["member"] and data["certificate"] == [["x", 0]]
    rc, out, _ = run(capsys, "member", "-e", "x*y", "--ideal", str(f))
    assert out.startswith("not a member")
    rc, out, _ = run(capsys, "deltastable", "--ideal", str(f))
    assert rc == 0 and out.endswith("delta-stable")
    g = tmp_path / "bad.txt"
    g.write_text("order: 1\nx^(2)\n")
    assert run(capsys, "member", "-e", "x", "--ideal", str(g))[0] == 2


def test_parse_error_exit_code(capsys):
    rc, _, err = run(capsys, "normalize", "-n", "2", "-e", "x^(3)")
    assert rc == 2 and "jet order overflow" in err


def test_verify_commands(capsys):
    rc, out, _ = run(capsys, "verify", "qbinom", "--max", "10")
    assert rc == 0 and out.splitlines()[-1] == "qbinom: 10/10 pass"
    rc, out, _ = run(capsys, "verify", "hopf", "--json")
    assert rc == 0 and json.loads(out)["passed"]


def test_verify_failure_exit_code(capsys):
    rc, out, err = run(capsys, "verify", "primality", "-n", "0", "-e", "x*y", "--trials", "5")
    assert rc == 1
    assert "(x, y)" in out


def test_seed_reproducible(capsys):
    a = run(capsys, "verify", "extraction", "--trials", "10", "--seed", "3", "--json")
    b = run(capsys, "verify", "extraction", "--trials", "10", "--seed", "3", "--json")
    assert a == b
