"""qjet command line."""
from __future__ import annotations

import argparse
import json
import sys

from . import freealg, ideals, verify
from .freealg import glq2_relations, normalize
from .jetalg import delta_jet, from_free, mul_jet
from .parse import ParseError, parse_free, parse_jet
from .render import jet_to_json, render_jet, render_ncpoly


class CommandFailed(Exception):
    pass


def read_ideal(path: str) -> ideals.IdealPresentation:
    """`order: n` on the first non-comment line, then one generator per line."""
    order = None
    gens = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if order is None:
                key, _, val = line.partition(":")
                if key.strip() != "order" or not val.strip().isdigit():
                    raise ValueError(f"{path}:{lineno}: expected 'order: n'")
                order = int(val)
                continue
            try:
                gens.append(parse_jet(line, order))
            except ParseError as e:
                raise ParseError(f"{path}:{lineno}: {e}", e.position) from None
    if order is None:
        raise ValueError(f"{path}: missing 'order: n' line")
    return ideals.IdealPresentation(order, gens)


def _emit(args, text, data):
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text)


def cmd_normalize(args):
    if args.mode == "glq2":
        p = normalize(parse_free(args.expr[0], 0, "glq2"), glq2_relations())
        s = render_ncpoly(p)
        _emit(args, s, {"mode": "glq2", "text": s})
        return
    p = parse_jet(args.expr[0], args.n)
    _emit(args, render_jet(p), jet_to_json(p))


def cmd_mul(args):
    if len(args.expr) != 2:
        raise ValueError("mul needs exactly two -e expressions")
    a, b = (parse_jet(e, args.n) for e in args.expr)
    p = mul_jet(a, b)
    if args.oracle:
        free = freealg.nc_mul(parse_free(args.expr[0], args.n), parse_free(args.expr[1], args.n))
        if from_free(free, args.n) != p:
            raise CommandFailed("oracle mismatch: mul_jet disagrees with normalize(nc_mul)")
    _emit(args, render_jet(p), jet_to_json(p))


def cmd_delta(args):
    p = parse_jet(args.expr[0], args.n)
    for _ in range(args.times):
        p = delta_jet(p)
    _emit(args, render_jet(p), jet_to_json(p))


def cmd_support(args):
    p = parse_jet(args.expr[0], args.n)
    sup = sorted(p.support())
    if args.command == "size":
        _emit(args, str(len(sup)), {"size": len(sup)})
    else:
        _emit(args, " ".join(f"({d.i},{d.j})" for d in sup), {"support": [list(d) for d in sup]})


def cmd_reduce(args):
    g = parse_jet(args.expr[0], args.n)
    fn = ideals.reduce_y if args.axis == "y" else ideals.reduce_x
    p = fn(g, args.exp, args.sym)
    _emit(args, render_jet(p), jet_to_json(p))


def _pair(text):
    try:
        i, j = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i,j but got {text!r}")
    return i, j


def cmd_extract(args):
    g = parse_jet(args.expr[0], args.n)
    res, trace = ideals.extract_bihomogeneous(g, args.target)
    if not trace.is_valid():
        raise CommandFailed("reduction trace does not replay")
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            json.dump(trace.to_json(), fh, indent=2)
    steps = ", ".join(f"{s.axis}({s.exponent})" for s in trace.steps) or "none"
    _emit(args, f"{render_jet(res)}\nsteps: {steps}",
          {"result": jet_to_json(res), "trace": trace.to_json()})


def cmd_member(args):
    T = read_ideal(args.ideal)
    f = parse_jet(args.expr[0], args.n if args.n is not None else T.order)
    m = ideals.membership(f, T)
    if m.member:
        text = "member\n" + "\n".join(f"  [{k}] {c}" for c, k in m.certificate_json())
    else:
        text = f"not a member\nremainder: {render_jet(m.remainder)}"
    _emit(args, text, {"member": m.member, "certificate": m.certificate_json(),
                       "remainder": None if m.member else jet_to_json(m.remainder)})


def cmd_deltastable(args):
    T = read_ideal(args.ideal)
    details = ideals.delta_stability_details(T)
    ok = all(v for _, v in details)
    lines = [f"{'ok' if v else 'MISSING'}  delta({render_jet(t)}) = {render_jet(d)}"
             for (d, v), t in zip(details, T.generators)]
    lines.append("delta-stable" if ok else "not delta-stable")
    _emit(args, "\n".join(lines), {"delta_stable": ok, "checks": [
        {"generator": render_jet(t), "delta": render_jet(d), "member": v}
        for (d, v), t in zip(details, T.generators)]})


def run_suite(args):
    s = args.suite
    if s == "qbinom":
        return verify.qbinom(args.max)
    if s == "chu":
        return verify.chu(args.max)
    if s == "rootofunity":
        return verify.rootofunity(tuple(int(p) for p in args.primes.split(",")))
    if s == "qexp":
        return verify.qexp(args.max)
    if s == "confluence":
        return verify.confluence(args.n)
    if s == "oracle":
        return verify.oracle(args.trials, args.seed)
    if s == "deltacompat":
        return verify.deltacompat(args.max)
    if s == "sizereduce":
        return verify.sizereduce(args.trials, args.seed)
    if s == "extraction":
        return verify.extraction(args.trials, args.seed)
    if s == "primality":
        return verify.primality(parse_jet(args.expr, args.n), args.trials, args.seed)
    if s == "deltastable":
        return verify.deltastable(args.max)
    if s == "hopf":
        return verify.hopf_suite()
    return verify.coaction()


def cmd_verify(args):
    rep = run_suite(args)
    if args.json:
        print(json.dumps(rep.to_json(), indent=2))
    else:
        width = max((len(c.label) for c in rep.checks), default=0)
        for c in rep.checks:
            extra = f"  {c.detail}" if c.detail and not c.passed else ""
            print(f"{c.label:<{width}}  {'PASS' if c.passed else 'FAIL'}{extra}")
        print(rep.summary())
    if not rep.passed:
        raise CommandFailed(rep.summary())


_VERIFY_DEFAULTS = {
    "qbinom": {"max": 10}, "chu": {"max": 6}, "qexp": {"max": 6}, "deltacompat": {"max": 3},
    "deltastable": {"max": 3}, "extraction": {"trials": 100}, "sizereduce": {"trials": 100},
    "oracle": {"trials": 200}, "primality": {"trials": 200, "n": 1}, "confluence": {"n": 2},
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qjet", description="Exact computation in quantum-plane jet algebras and GL_q(2).")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_expr(name, fn, help, n_default=0, **kw):
        p = sub.add_parser(name, parents=[common], help=help, **kw)
        p.add_argument("-n", type=int, default=n_default, help="jet order of the session")
        p.add_argument("-e", "--expr", action="append", required=True, help="expression")
        p.set_defaults(func=fn)
        return p

    p = with_expr("normalize", cmd_normalize, "normal form")
    p.add_argument("--mode", choices=("jet", "glq2"), default="jet")
    p = with_expr("mul", cmd_mul, "twisted product of two expressions")
    p.add_argument("--oracle", action="store_true", help="cross-check against the free-algebra rewriter")
    p = with_expr("delta", cmd_delta, "apply the derivation")
    p.add_argument("--times", type=int, default=1)
    with_expr("support", cmd_support, "bi-degree support")
    with_expr("size", cmd_support, "number of bi-degrees")
    p = with_expr("reduce", cmd_reduce, "one size-reduction step")
    p.add_argument("--axis", choices=("y", "x"), required=True)
    p.add_argument("--exp", type=int, required=True)
    p.add_argument("--sym", type=int, default=0, help="jet order of the multiplying symbol")
    p = with_expr("extract", cmd_extract, "extract a bi-homogeneous member")
    p.add_argument("--target", type=_pair, required=True, help="bi-degree i,j")
    p.add_argument("--trace", help="write the reduction trace to this JSON file")
    p = with_expr("member", cmd_member, "ideal membership", n_default=None)
    p.add_argument("--ideal", required=True)
    p = sub.add_parser("deltastable", parents=[common], help="delta-stability of an ideal")
    p.add_argument("--ideal", required=True)
    p.set_defaults(func=cmd_deltastable)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=verify.SUITES)
    p.add_argument("--max", type=int)
    p.add_argument("--primes", default="2,3,5,7")
    p.add_argument("-n", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-e", "--expr", default="x*y' - x'*y")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "verify":
        for k, v in _VERIFY_DEFAULTS.get(args.suite, {}).items():
            if getattr(args, k) is None:
                setattr(args, k, v)
    try:
        args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except CommandFailed as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError, OSError, ideals.BuchbergerBudgetExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
