"""Exact scalars: Laurent polynomials in q, rational functions in q, q-numbers.

Rationals are plain :class:`fractions.Fraction`.  Laurent polynomials and
rational functions are immutable value types supporting the usual operators,
so the linear algebra elsewhere can stay generic over the scalar field.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "LaurentPoly",
    "RatFunc",
    "Q",
    "QQ",
    "QQ_q",
    "q_integer",
    "q_factorial",
    "q_binomial",
    "substitute_neg_q",
    "evaluate",
    "qbinom_sign_probe",
    "case_split_sign",
]


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Finitely supported map exponent -> rational coefficient."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in dict(coeffs).items():
                if v:
                    c[int(e)] = _norm_coeff(v)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c):
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def const(cls, v):
        return cls({0: v}) if v else cls()

    @classmethod
    def monomial(cls, e, v=1):
        return cls({e: v})

    @property
    def coeffs(self):
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def valuation(self):
        return min(self._c) if self._c else None

    def degree(self):
        return max(self._c) if self._c else None

    def is_constant(self):
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def constant_value(self):
        return self._c.get(0, 0)

    def __getitem__(self, e):
        return self._c.get(e, 0)

    # arithmetic
    @staticmethod
    def _coerce(x):
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly.const(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = _norm_coeff(s)
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials are invertible Laurent polynomials")
            (e, v), = self._c.items()
            return LaurentPoly({-e: Fraction(1) / v}) ** -n
        out = LaurentPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k):
        """Multiply by q**k."""
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def scale(self, s):
        if not s:
            return LaurentPoly()
        return LaurentPoly._raw({e: _norm_coeff(v * s) for e, v in self._c.items()})

    def divmod(self, other):
        """Euclidean division after clearing q-powers; exact iff remainder is 0."""
        if not other:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if not self:
            return LaurentPoly(), LaurentPoly()
        va, vb = self.valuation(), other.valuation()
        a = _to_dense(self.shift(-va))
        b = _to_dense(other.shift(-vb))
        quo, rem = _poly_divmod(a, b)
        return _from_dense(quo).shift(va - vb), _from_dense(rem).shift(va)

    def exact_div(self, other):
        quo, rem = self.divmod(other)
        if rem:
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return quo

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({0: other} if other else {})
        if isinstance(other, RatFunc):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __call__(self, q0):
        return evaluate(self, q0)

    # text and json
    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            mag = abs(v)
            sign = "-" if v < 0 else "+"
            if e == 0:
                body = str(mag)
            else:
                qpart = "q" if e == 1 else f"q^{e}"
                body = qpart if mag == 1 else f"{mag}*{qpart}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly({self})"

    _TERM = re.compile(r"^(?:(\d+(?:/\d+)?)\*?)?(q(?:\^(-?\d+))?)?$")

    @classmethod
    def parse(cls, text):
        """Inverse of ``str``: accepts e.g. ``"q^3 + 2*q - 1/2 + q^-1"``."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls()
        if s[0] not in "+-":
            s = "+" + s
        c = {}
        for chunk in re.split(r"(?<!\^)(?=[+-])", s):
            if not chunk:
                continue
            sign, body = chunk[0], chunk[1:]
            m = cls._TERM.match(body)
            if not m or not (m.group(1) or m.group(2)):
                raise ValueError(f"cannot parse Laurent term {body!r} in {text!r}")
            v = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            if m.group(2):
                e = int(m.group(3)) if m.group(3) is not None else 1
            else:
                e = 0
            if sign == "-":
                v = -v
            c[e] = c.get(e, 0) + v
        return cls(c)

    def to_json(self):
        return {str(e): (v if isinstance(v, int) else str(v)) for e, v in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data):
        return cls({int(e): Fraction(v) if isinstance(v, str) else v for e, v in data.items()})


# dense polynomial helpers (lowest degree first, Fraction coefficients)

def _to_dense(p):
    if not p:
        return []
    d = p.degree()
    return [Fraction(p[e]) for e in range(0, d + 1)]


def _from_dense(a, shift=0):
    return LaurentPoly({i + shift: v for i, v in enumerate(a) if v})


def _trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _poly_divmod(a, b):
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError
    if len(a) < len(b):
        return [], a
    lb = b[-1]
    quo = [Fraction(0)] * (len(a) - len(b) + 1)
    rem = list(a)
    for k in range(len(a) - len(b), -1, -1):
        coef = rem[k + len(b) - 1] / lb
        quo[k] = coef
        if coef:
            for i, bv in enumerate(b):
                rem[k + i] -= coef * bv
    return quo, _trim(rem[: len(b) - 1])


def _poly_gcd(a, b):
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return [Fraction(1)]
    lc = a[-1]
    return [v / lc for v in a]


class RatFunc:
    """Element of Q(q) as num/den with a canonical normalisation.

    The denominator is a polynomial with nonzero constant term and leading
    coefficient 1, coprime to the numerator; powers of q live in the numerator.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _normalized=False):
        num = LaurentPoly._coerce(num)
        den = LaurentPoly.const(1) if den is None else LaurentPoly._coerce(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RatFunc expects Laurent polynomials or rationals")
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        self._hash = None
        if _normalized:
            self.num, self.den = num, den
            return
        if not num:
            self.num, self.den = LaurentPoly(), LaurentPoly.const(1)
            return
        if den.is_constant():
            self.num, self.den = num.scale(Fraction(1) / Fraction(den.constant_value())), LaurentPoly.const(1)
            return
        vn, vd = num.valuation(), den.valuation()
        a = _to_dense(num.shift(-vn))
        b = _to_dense(den.shift(-vd))
        g = _poly_gcd(a, b)
        if len(g) > 1:
            a, _ = _poly_divmod(a, g)
            b, _ = _poly_divmod(b, g)
        lc = b[-1]
        a = [v / lc for v in a]
        b = [v / lc for v in b]
        self.num = _from_dense(a, vn - vd)
        self.den = _from_dense(b)

    @staticmethod
    def coerce(x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, LaurentPoly):
            return RatFunc(x, None, _normalized=True)
        if isinstance(x, (int, Fraction)):
            return RatFunc(LaurentPoly.const(x), None, _normalized=True)
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    def _is_poly(self):
        return self.den._c == {0: 1}

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self._is_poly() and other._is_poly():
            return RatFunc(self.num + other.num, None, _normalized=True)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.num or not other.num:
            return RatFunc(LaurentPoly(), None, _normalized=True)
        if self._is_poly() and other._is_poly():
            return RatFunc(self.num * other.num, None, _normalized=True)
        if other.num.is_constant() and other._is_poly():
            return RatFunc(self.num.scale(other.num.constant_value()), self.den, _normalized=True)
        if self.num.is_constant() and self._is_poly():
            return RatFunc(other.num.scale(self.num.constant_value()), other.den, _normalized=True)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __eq__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def substitute_neg_q(self):
        return RatFunc(substitute_neg_q(self.num), substitute_neg_q(self.den))

    def evaluate(self, q0):
        d = evaluate(self.den, q0)
        if not d:
            raise ZeroDivisionError(f"denominator vanishes at q={q0}")
        return _norm_coeff(Fraction(evaluate(self.num, q0)) / d)

    def __str__(self):
        if self._is_poly():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}


class Q:
    """A scalar ring tag: ``QQ`` (rationals) or ``QQ_q`` (rational functions in q)."""

    def __init__(self, name):
        self.name = name

    def coerce(self, x):
        if self.name == "QQ":
            if isinstance(x, int):
                return x
            if isinstance(x, Fraction):
                return _norm_coeff(x)
            if isinstance(x, Rational):
                return _norm_coeff(Fraction(x))
            if isinstance(x, (LaurentPoly, RatFunc)):
                raise TypeError(f"{x} is not a rational number")
            raise TypeError(f"cannot coerce {type(x).__name__} to QQ")
        return RatFunc.coerce(x)

    @property
    def one(self):
        return self.coerce(1)

    @property
    def zero(self):
        return self.coerce(0)

    def __eq__(self, other):
        return isinstance(other, Q) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name


QQ = Q("QQ")
QQ_q = Q("QQ(q)")


def scalar_to_json(x):
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, RatFunc):
        return str(x) if x._is_poly() else x.to_json()
    return str(x)


# q-combinatorics

Q_MINUS_QINV = LaurentPoly({1: 1, -1: -1})


@lru_cache(maxsize=None)
def q_integer(n):
    """Balanced quantum integer (q^n - q^-n)/(q - q^-1)."""
    if n < 0:
        raise ValueError(f"q_integer needs n >= 0, got {n}")
    if n == 0:
        return LaurentPoly()
    return LaurentPoly({n: 1, -n: -1}).exact_div(Q_MINUS_QINV)


@lru_cache(maxsize=None)
def q_factorial(n):
    if n < 0:
        raise ValueError(f"q_factorial needs n >= 0, got {n}")
    out = LaurentPoly.const(1)
    for j in range(1, n + 1):
        out = out * q_integer(j)
    return out


@lru_cache(maxsize=None)
def q_binomial(n, k):
    if not 0 <= k <= n:
        raise ValueError(f"q_binomial needs 0 <= k <= n, got n={n}, k={k}")
    return q_factorial(n).exact_div(q_factorial(k) * q_factorial(n - k))


def substitute_neg_q(p):
    """q -> -q."""
    if isinstance(p, RatFunc):
        return p.substitute_neg_q()
    return LaurentPoly._raw({e: (-v if e % 2 else v) for e, v in p._c.items()})


def evaluate(p, q0):
    if isinstance(p, RatFunc):
        return p.evaluate(q0)
    q0 = Fraction(q0)
    if q0 == 0:
        raise ZeroDivisionError("cannot evaluate a Laurent polynomial at q=0")
    return _norm_coeff(sum((Fraction(v) * q0**e for e, v in p._c.items()), Fraction(0)))


def qbinom_sign_probe(n, k):
    """Sign s with {n choose k}_{-q} = s * {n choose k}_q, read off coefficientwise."""
    b = q_binomial(n, k)
    if not b:
        raise ValueError("zero q-binomial has no sign")
    nb = substitute_neg_q(b)
    if nb == b:
        return 1
    if nb == -b:
        return -1
    raise ArithmeticError(f"{{{n},{k}}}_(-q) is not a signed multiple of {{{n},{k}}}_q")


def case_split_sign(n, k):
    """Alternative case-split rule: -1 if n,k even or n odd, else +1 (kept for comparison)."""
    if n % 2 == 1 or (n % 2 == 0 and k % 2 == 0):
        return -1
    return 1
