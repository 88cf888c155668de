"""Text rendering for scalars, free-algebra elements and A^(n) elements."""
from __future__ import annotations

import json

from .freealg import NCPoly, render_word
from .qcoeff import QScalar, render_scalar, scalar_is_atomic


def _jet_symbol(family: str, i: int) -> str:
    if i <= 2:
        return family + "'" * i
    return f"{family}^({i})"


def render_monomial(ex, ey) -> str:
    parts = []
    for family, exps in (("x", ex), ("y", ey)):
        for i, e in enumerate(exps):
            if e:
                s = _jet_symbol(family, i)
                parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


def _join_terms(pairs) -> str:
    """pairs of (coefficient, monomial text); empty monomial text means 1."""
    if not pairs:
        return "0"
    out = []
    for idx, (c, mono) in enumerate(pairs):
        neg = c.is_negative()
        if neg:
            c = -c
        if not mono:
            s = render_scalar(c)
            body = s if scalar_is_atomic(c) or c.laurent_terms() is None else f"({s})"
        elif c.is_one():
            body = mono
        elif scalar_is_atomic(c):
            body = f"{render_scalar(c)}*{mono}"
        else:
            s = render_scalar(c)
            # a printed fraction num/(den) already binds tighter than '*'
            body = f"{s}*{mono}" if c.laurent_terms() is None else f"({s})*{mono}"
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def render_jet(p) -> str:
    return _join_terms([(c, render_monomial(ex, ey)) for (ex, ey), c in p.sorted_terms()])


def render_ncpoly(p: NCPoly, alphabet=None) -> str:
    return _join_terms([(c, render_word(w) if w else "") for w, c in p.sorted_terms(alphabet)])


def scalar_to_json(c: QScalar) -> dict:
    return {"num": [str(a) for a in c.num.coeffs], "den": [str(a) for a in c.den.coeffs]}


def jet_to_json(p) -> dict:
    return {
        "order": p.order,
        "terms": [
            {"coeff": scalar_to_json(c), "ex": list(ex), "ey": list(ey)}
            for (ex, ey), c in p.sorted_terms()
        ],
    }


def jet_from_json(data):
    from .jetalg import BiGradedPoly
    from .qcoeff import IntPoly

    if isinstance(data, str):
        data = json.loads(data)
    terms = {}
    for t in data["terms"]:
        num = IntPoly(int(a) for a in t["coeff"]["num"])
        den = IntPoly(int(a) for a in t["coeff"]["den"])
        terms[(tuple(t["ex"]), tuple(t["ey"]))] = QScalar(num, den)
    return BiGradedPoly(data["order"], terms)
