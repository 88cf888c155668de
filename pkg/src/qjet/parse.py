"""
Expression front-end.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := unary (['*'|'/'] unary)*        juxtaposition multiplies
    unary  := ('+'|'-') unary | power
    power  := atom ('^' ['-'] uint)*
    atom   := uint | 'q' | var | '(' expr ')'
    var    := ('x'|'y') ("'"* | '^(' uint ')')        jet mode
            | 'a' | 'b' | 'c' | 'd' | 'Dinv'          glq2 mode

Products keep the written (noncommutative) order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple, Union

from .freealg import DINV, GA, GB, GC, GD, NCPoly, X, Y, glq2_relations, normalize
from .qcoeff import ONE, Q, QScalar

MODES = ("jet", "glq2")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class QSym:
    pass


@dataclass(frozen=True)
class Var:
    family: str  # x, y, a, b, c, d, Dinv
    order: int = 0


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Power:
    base: "Expr"
    exp: int


@dataclass(frozen=True)
class Product:
    factors: Tuple[Tuple[str, "Expr"], ...]  # ('*' | '/', factor)


@dataclass(frozen=True)
class Sum:
    items: Tuple[Tuple[int, "Expr"], ...]  # (sign, term)


Expr = Union[Num, QSym, Var, Neg, Power, Product, Sum]

_GL_LETTERS = {"a", "b", "c", "d", "Dinv"}


def tokenize(text: str) -> List[Tuple[str, object, int]]:
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("num", int(text[i:j]), i))
            i = j
        elif text.startswith("Dinv", i):
            toks.append(("id", "Dinv", i))
            i += 4
        elif ch.isalpha():
            toks.append(("id", ch, i))
            i += 1
        elif ch in "+-*/^()'":
            toks.append(("op", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, n: int, mode: str):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        self.toks = tokenize(text)
        self.pos = 0
        self.n = n
        self.mode = mode

    def peek(self):
        return self.toks[self.pos]

    def at(self, kind, value=None):
        t = self.toks[self.pos]
        return t[0] == kind and (value is None or t[1] == value)

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind, value=None):
        if not self.at(kind, value):
            t = self.peek()
            want = value if value is not None else kind
            got = "end of input" if t[0] == "end" else repr(t[1])
            raise ParseError(f"expected {want!r}, got {got}", t[2])
        return self.take()

    def parse(self) -> Expr:
        e = self.expr()
        if not self.at("end"):
            t = self.peek()
            raise ParseError(f"unexpected {t[1]!r}", t[2])
        return e

    def expr(self) -> Expr:
        items = []
        sign = 1
        if self.at("op", "+") or self.at("op", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        items.append((sign, self.term()))
        while self.at("op", "+") or self.at("op", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            items.append((sign, self.term()))
        if len(items) == 1 and items[0][0] == 1:
            return items[0][1]
        return Sum(tuple(items))

    def _starts_atom(self) -> bool:
        t = self.peek()
        return t[0] in ("num", "id") or (t[0] == "op" and t[1] == "(")

    def term(self) -> Expr:
        factors = [("*", self.unary())]
        while True:
            if self.at("op", "*") or self.at("op", "/"):
                op = self.take()[1]
                factors.append((op, self.unary()))
            elif self._starts_atom():
                factors.append(("*", self.unary()))
            else:
                break
        if len(factors) == 1:
            return factors[0][1]
        return Product(tuple(factors))

    def unary(self) -> Expr:
        if self.at("op", "-"):
            self.take()
            return Neg(self.unary())
        if self.at("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        while self.at("op", "^"):
            self.take()
            neg = False
            if self.at("op", "-"):
                self.take()
                neg = True
            t = self.expect("num")
            base = Power(base, -t[1] if neg else t[1])
        return base

    def atom(self) -> Expr:
        t = self.peek()
        if t[0] == "num":
            self.take()
            return Num(t[1])
        if t[0] == "op" and t[1] == "(":
            self.take()
            e = self.expr()
            self.expect("op", ")")
            return e
        if t[0] == "id":
            self.take()
            name = t[1]
            if name == "q":
                return QSym()
            if self.mode == "jet" and name in ("x", "y"):
                order = 0
                if self.at("op", "'"):
                    while self.at("op", "'"):
                        self.take()
                        order += 1
                elif self.at("op", "^") and self.toks[self.pos + 1][0] == "op" and self.toks[self.pos + 1][1] == "(":
                    self.take()
                    self.take()
                    order = self.expect("num")[1]
                    self.expect("op", ")")
                if order > self.n:
                    raise ParseError(f"jet order overflow: {name} of order {order} in a session of order {self.n}", t[2])
                return Var(name, order)
            if self.mode == "glq2" and name in _GL_LETTERS:
                return Var(name, 0)
            raise ParseError(f"unknown symbol {name!r} in {self.mode} mode", t[2])
        if t[0] == "end":
            raise ParseError("unexpected end of input", t[2])
        raise ParseError(f"unexpected {t[1]!r}", t[2])


def parse(text: str, n: int = 0, mode: str = "jet") -> Expr:
    return _Parser(text, n, mode).parse()


_SYMBOLS = {"x": X, "y": Y}
_GL_SYMBOLS = {"a": GA, "b": GB, "c": GC, "d": GD, "Dinv": DINV}


def _const_value(p: NCPoly, what: str) -> QScalar:
    if any(w for w in p.terms):
        raise ValueError(f"{what} must be a scalar")
    return p.terms.get((), QScalar(0))


def evaluate(e: Expr) -> NCPoly:
    """Free-algebra value of a parse tree (no normalization)."""
    if isinstance(e, Num):
        return NCPoly.const(e.value)
    if isinstance(e, QSym):
        return NCPoly.const(Q)
    if isinstance(e, Var):
        if e.family in _SYMBOLS:
            return NCPoly.symbol(_SYMBOLS[e.family](e.order))
        return NCPoly.symbol(_GL_SYMBOLS[e.family])
    if isinstance(e, Neg):
        return -evaluate(e.arg)
    if isinstance(e, Power):
        base = evaluate(e.base)
        if e.exp < 0:
            return NCPoly.const(_const_value(base, "base of a negative power") ** e.exp)
        return base ** e.exp
    if isinstance(e, Product):
        acc = NCPoly.const(ONE)
        for op, f in e.factors:
            v = evaluate(f)
            if op == "/":
                c = _const_value(v, "divisor")
                if c.is_zero():
                    raise ZeroDivisionError("division by zero")
                acc = acc.scale(c.inverse())
            else:
                acc = acc * v
        return acc
    if isinstance(e, Sum):
        acc = NCPoly()
        for sign, t in e.items:
            v = evaluate(t)
            acc = acc + v if sign > 0 else acc - v
        return acc
    raise TypeError(f"not an expression node: {e!r}")


def parse_free(text: str, n: int = 0, mode: str = "jet") -> NCPoly:
    return evaluate(parse(text, n, mode))


def parse_jet(text: str, n: int = 0):
    """Parse into A^(n) (normal form, exponent data)."""
    from .jetalg import from_free
    return from_free(parse_free(text, n, "jet"), n)


def parse_glq2(text: str) -> NCPoly:
    return normalize(parse_free(text, 0, "glq2"), glq2_relations())


def parse_scalar(text: str) -> QScalar:
    return _const_value(parse_free(text, 0, "jet"), "expression")
