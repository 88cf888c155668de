"""
Exact arithmetic in Z[q] and Q(q), and the Gauss polynomial toolkit.

``IntPoly`` is a dense integer polynomial in q (index = power of q).
``QScalar`` is an element of Q(q) kept as a canonical reduced fraction of
two ``IntPoly`` so that structural equality is mathematical equality.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


class IntPoly:
    """
    Integer polynomial in q, coefficients stored low power first.

    >>> IntPoly((1, 1)) * IntPoly((1, 1, 1))
    IntPoly('q^3+2*q^2+2*q+1')
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(int(a) for a in c)
        self._hash = None

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        if k < 0:
            raise ValueError("negative exponent in IntPoly")
        return cls((0,) * k + (c,))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def low_order(self) -> int:
        """Exponent of the lowest nonzero term (0 for the zero polynomial)."""
        for i, a in enumerate(self.coeffs):
            if a:
                return i
        return 0

    def is_monomial(self) -> bool:
        return sum(1 for a in self.coeffs if a) == 1

    def content(self) -> int:
        g = 0
        for a in self.coeffs:
            g = gcd(g, a)
        return g

    def primitive(self) -> "IntPoly":
        """Primitive part with a positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.coeffs[-1] < 0:
            c = -c
        if c == 1:
            return self
        return IntPoly(a // c for a in self.coeffs)

    def shift(self, k: int) -> "IntPoly":
        """Multiply by q^k (k may be negative if the low terms vanish)."""
        if k >= 0:
            return IntPoly((0,) * k + self.coeffs) if self.coeffs else self
        if any(self.coeffs[:-k]):
            raise ValueError("shift would leave Z[q]")
        return IntPoly(self.coeffs[-k:])

    def scale(self, c: int) -> "IntPoly":
        return IntPoly(a * c for a in self.coeffs)

    def __add__(self, other):
        other = _as_intpoly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-a for a in self.coeffs)

    def __sub__(self, other):
        other = _as_intpoly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_intpoly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of IntPoly")
        result, base = ONE_POLY, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("IntPoly", self.coeffs))
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, v):
        return evaluate_at(self, v)

    def __str__(self):
        return _render_laurent({i: Fraction(a) for i, a in enumerate(self.coeffs)})

    def __repr__(self):
        return f"IntPoly('{self}')"


def _as_intpoly(x):
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly((x,))
    return NotImplemented


ZERO_POLY = IntPoly()
ONE_POLY = IntPoly((1,))
Q_POLY = IntPoly((0, 1))


def prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, computed in Z[q]."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero polynomial")
    db, lb, bc = b.degree(), b.lead(), b.coeffs
    r = list(a.coeffs)
    if len(r) - 1 < db:
        return a
    for shift in range(len(r) - 1 - db, -1, -1):
        lr = r[shift + db]
        r = [x * lb for x in r]
        if lr:
            for i, y in enumerate(bc):
                r[shift + i] -= lr * y
    return IntPoly(r[:db])


def exact_div(a: IntPoly, b: IntPoly) -> IntPoly:
    """Quotient a / b in Z[q]; raises ArithmeticError if it is not exact."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero():
        return a
    r = list(a.coeffs)
    db, lb = b.degree(), b.lead()
    if len(r) - 1 < db:
        raise ArithmeticError("inexact polynomial division")
    quot = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c, rem = divmod(r[k + db], lb)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        quot[k] = c
        if c:
            for i, y in enumerate(b.coeffs):
                r[k + i] -= c * y
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return IntPoly(quot)


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """
    Greatest common divisor over Q, returned primitive with positive lead.

    Uses the primitive pseudo-remainder sequence after pulling out the
    common power of q.
    """
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    k = min(a.low_order(), b.low_order())
    a, b = a.shift(-a.low_order()), b.shift(-b.low_order())
    if a.degree() == 0 or b.degree() == 0:
        return IntPoly.monomial(k)
    a, b = a.primitive(), b.primitive()
    if a.degree() < b.degree():
        a, b = b, a
    while not b.is_zero():
        r = prem(a, b)
        a, b = b, r.primitive()
    return a.primitive().shift(k)


def divides(d: IntPoly, p: IntPoly) -> bool:
    """True iff d divides p in Q[q]."""
    if d.is_zero():
        raise ZeroDivisionError("divisibility test by zero polynomial")
    if p.is_zero() or d.degree() == 0:
        return True
    return prem(p, d).is_zero()


def evaluate_at(p: IntPoly, v) -> Fraction:
    v = Fraction(v)
    acc = Fraction(0)
    for a in reversed(p.coeffs):
        acc = acc * v + a
    return acc


class QScalar:
    """
    Element of Q(q) as num/den in Z[q].

    Canonical form: num and den coprime over Q, gcd of their integer contents
    is 1 and den has a positive leading coefficient.  Zero is 0/1.

    >>> str((Q ** 2 - 1) / (Q + 1))
    'q-1'
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        if isinstance(num, QScalar) and den == 1:
            self.num, self.den, self._hash = num.num, num.den, None
            return
        d = den if isinstance(den, IntPoly) else IntPoly((int(den),))
        if isinstance(num, Fraction):
            n, d = IntPoly((num.numerator,)), d.scale(num.denominator)
        else:
            n = num if isinstance(num, IntPoly) else IntPoly((int(num),))
        self.num, self.den = _canonical(n, d)
        self._hash = None

    @classmethod
    def _raw(cls, num: IntPoly, den: IntPoly) -> "QScalar":
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    @classmethod
    def coerce(cls, x) -> "QScalar":
        if isinstance(x, QScalar):
            return x
        if isinstance(x, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(x, (int, Fraction, IntPoly)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to QScalar")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.coeffs == (1,) and self.den.coeffs == (1,)

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        try:
            other = QScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return QScalar._from(self.num + other.num, self.den)
        return QScalar._from(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QScalar._raw(-self.num, self.den)

    def __sub__(self, other):
        try:
            other = QScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = QScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.coeffs == (1,) and other.den.coeffs == (1,):
            return QScalar._raw(self.num * other.num, ONE_POLY)
        return QScalar._from(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "QScalar":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return QScalar._from(self.den, self.num)

    def __truediv__(self, other):
        try:
            other = QScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QScalar.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return QScalar._raw(self.num ** e, self.den ** e)

    def __eq__(self, other):
        if not isinstance(other, QScalar):
            try:
                other = QScalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("QScalar", self.num.coeffs, self.den.coeffs))
        return self._hash

    @staticmethod
    def _from(num: IntPoly, den: IntPoly) -> "QScalar":
        n, d = _canonical(num, den)
        return QScalar._raw(n, d)

    def is_negative(self) -> bool:
        """Sign convention used when printing: sign of the leading numerator coefficient."""
        return self.num.lead() < 0

    def evaluate(self, v) -> Fraction:
        return evaluate_at(self.num, v) / evaluate_at(self.den, v)

    def laurent_terms(self):
        """
        If the denominator is c*q^k return {exponent: Fraction coefficient},
        else None.
        """
        if not self.den.is_monomial():
            return None
        k, c = self.den.degree(), self.den.lead()
        return {i - k: Fraction(a, c) for i, a in enumerate(self.num.coeffs) if a}

    def __str__(self):
        return render_scalar(self)

    def __repr__(self):
        return f"QScalar('{self}')"


def _canonical(num: IntPoly, den: IntPoly):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator in Q(q)")
    if num.is_zero():
        return ZERO_POLY, ONE_POLY
    if den.degree() > 0:
        g = poly_gcd(num, den)
        if g.degree() > 0:
            num, den = exact_div(num, g), exact_div(den, g)
    c = gcd(num.content(), den.content())
    if den.lead() < 0:
        c = -c
    if c != 1:
        num, den = IntPoly(a // c for a in num.coeffs), IntPoly(a // c for a in den.coeffs)
    return num, den


ZERO = QScalar._raw(ZERO_POLY, ONE_POLY)
ONE = QScalar._raw(ONE_POLY, ONE_POLY)
Q = QScalar._raw(Q_POLY, ONE_POLY)


@lru_cache(maxsize=512)
def q_power(e: int) -> QScalar:
    """q^e for any integer e."""
    if e >= 0:
        return QScalar._raw(IntPoly.monomial(e), ONE_POLY)
    return QScalar._raw(ONE_POLY, IntPoly.monomial(-e))


# -- rendering ---------------------------------------------------------------

def _render_coeff_power(c: Fraction, e: int) -> str:
    """One Laurent term without its sign, e.g. 3/2*q^-2."""
    c = abs(c)
    if e == 0:
        return str(c)
    mono = "q" if e == 1 else f"q^{e}"
    if c == 1:
        return mono
    return f"{c}*{mono}"


def _render_laurent(terms: dict) -> str:
    items = sorted(((e, c) for e, c in terms.items() if c), reverse=True)
    if not items:
        return "0"
    out = []
    for idx, (e, c) in enumerate(items):
        body = _render_coeff_power(c, e)
        if idx == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("-" if c < 0 else "+") + body)
    return "".join(out)


def render_scalar(s: QScalar) -> str:
    """
    Compact text form, parseable by the expression front-end.

    Laurent polynomials print as sums of q-powers (``q-q^-1``); anything
    else prints as ``(num)/(den)``.
    """
    lt = s.laurent_terms()
    if lt is not None:
        return _render_laurent(lt)
    num = _render_laurent({i: Fraction(a) for i, a in enumerate(s.num.coeffs)})
    den = _render_laurent({i: Fraction(a) for i, a in enumerate(s.den.coeffs)})
    if len(s.num.coeffs) - s.num.coeffs.count(0) > 1:
        num = f"({num})"
    return f"{num}/({den})"


def scalar_is_atomic(s: QScalar) -> bool:
    """True when the printed form needs no parentheses as a factor."""
    lt = s.laurent_terms()
    return lt is not None and len(lt) <= 1


# -- q-combinatorics ---------------------------------------------------------

def q_integer(n: int) -> IntPoly:
    """(n)_q = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise ValueError("q_integer needs n >= 0")
    return IntPoly((1,) * n)


@lru_cache(maxsize=None)
def q_factorial(n: int) -> IntPoly:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    if n == 0:
        return ONE_POLY
    return q_factorial(n - 1) * q_integer(n)


@lru_cache(maxsize=None)
def gauss_binomial(n: int, k: int) -> IntPoly:
    """Gauss polynomial (n choose k)_q by exact division of q-factorials."""
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"gauss_binomial needs 0 <= k <= n, got n={n}, k={k}")
    return exact_div(q_factorial(n), q_factorial(k) * q_factorial(n - k))


@lru_cache(maxsize=None)
def gauss_binomial_pascal(n: int, k: int) -> IntPoly:
    """Independent route: the q-Pascal recursion seeded at (m choose 0) = 1."""
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"gauss_binomial_pascal needs 0 <= k <= n, got n={n}, k={k}")
    if k == 0 or k == n:
        return ONE_POLY
    return gauss_binomial_pascal(n - 1, k - 1) + gauss_binomial_pascal(n - 1, k).shift(k)


def cyclotomic(p: int) -> IntPoly:
    """The cyclotomic polynomial Phi_p, for any p >= 2."""
    if p < 2:
        raise ValueError("cyclotomic needs p >= 2")
    result = IntPoly.monomial(p) - 1
    for d in range(1, p):
        if p % d == 0:
            result = exact_div(result, cyclotomic(d) if d > 1 else IntPoly((-1, 1)))
    return result
