"""Exact arithmetic in the real quadratic fields Q(sqrt d), d in {1, 2, 3, 5}.

A value is stored as ``(p + q*sqrt(d)) / n`` with integers ``p, q`` and ``n > 0``
in lowest terms.  Rationals (``q == 0``) mix freely with any radicand; two
irrational values with different radicands cannot be combined.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .errors import IncompatibleRadicands

RADICANDS = (1, 2, 3, 5)

_gcd = math.gcd


def _join(d1: int, q1: int, d2: int, q2: int) -> int:
    if q1 == 0:
        return d2 if q2 else 1
    if q2 == 0 or d1 == d2:
        return d1
    raise IncompatibleRadicands(f"cannot combine sqrt({d1}) and sqrt({d2}) values")


class Scalar:
    """An element ``a + b*sqrt(d)`` of a real quadratic field."""

    __slots__ = ("p", "q", "n", "d", "_hash")

    def __init__(self, p: int = 0, q: int = 0, n: int = 1, d: int = 1, *, _raw: bool = False):
        if not _raw:
            if d not in RADICANDS:
                raise ValueError(f"radicand must be one of {RADICANDS}, got {d}")
            if n == 0:
                raise ZeroDivisionError("zero denominator")
            if d == 1:
                p, q = p + q, 0
            if n < 0:
                p, q, n = -p, -q, -n
            g = _gcd(_gcd(p, q), n)
            if g > 1:
                p //= g
                q //= g
                n //= g
            if q == 0:
                d = 1
        self.p = p
        self.q = q
        self.n = n
        self.d = d
        self._hash = None

    # construction -----------------------------------------------------------

    @classmethod
    def _make(cls, p: int, q: int, n: int, d: int) -> Scalar:
        # n > 0 assumed
        g = _gcd(_gcd(p, q), n)
        if g > 1:
            p //= g
            q //= g
            n //= g
        s = object.__new__(cls)
        s.p = p
        s.q = q
        s.n = n
        s.d = d if q else 1
        s._hash = None
        return s

    @classmethod
    def of(cls, value: Scalar | int | Fraction) -> Scalar:
        if isinstance(value, Scalar):
            return value
        if isinstance(value, int):
            return cls._make(value, 0, 1, 1)
        if isinstance(value, Rational):
            return cls._make(value.numerator, 0, value.denominator, 1)
        raise TypeError(f"cannot convert {type(value).__name__} to Scalar")

    @classmethod
    def from_parts(cls, a, b=0, d: int = 1) -> Scalar:
        """Build ``a + b*sqrt(d)`` from rational coefficients."""
        a = Fraction(a)
        b = Fraction(b)
        if d == 1:
            a, b = a + b, Fraction(0)
        n = a.denominator * b.denominator // _gcd(a.denominator, b.denominator)
        return cls(a.numerator * (n // a.denominator), b.numerator * (n // b.denominator), n, d)

    @classmethod
    def sqrt(cls, d: int) -> Scalar:
        return cls(0, 1, 1, d)

    # views -------------------------------------------------------------------

    @property
    def a(self) -> Fraction:
        return Fraction(self.p, self.n)

    @property
    def b(self) -> Fraction:
        return Fraction(self.q, self.n)

    def is_rational(self) -> bool:
        return self.q == 0

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def __float__(self) -> float:
        if self.q == 0:
            return self.p / self.n
        return (self.p + self.q * math.sqrt(self.d)) / self.n

    def __bool__(self) -> bool:
        return self.p != 0 or self.q != 0

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        rad = f"√{self.d}"
        bs = rad if b == 1 else (f"-{rad}" if b == -1 else f"{b}*{rad}")
        if a == 0:
            return bs
        return f"{a}{'' if bs.startswith('-') else '+'}{bs}"

    # arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                return Scalar._make(self.p + other * self.n, self.q, self.n, self.d)
            other = _coerce(other)
            if other is NotImplemented:
                return other
        d = _join(self.d, self.q, other.d, other.q)
        n1, n2 = self.n, other.n
        if n1 == n2:
            return Scalar._make(self.p + other.p, self.q + other.q, n1, d)
        return Scalar._make(self.p * n2 + other.p * n1, self.q * n2 + other.q * n1, n1 * n2, d)

    __radd__ = __add__

    def __neg__(self):
        s = object.__new__(Scalar)
        s.p, s.q, s.n, s.d, s._hash = -self.p, -self.q, self.n, self.d, None
        return s

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                return Scalar._make(self.p - other * self.n, self.q, self.n, self.d)
            other = _coerce(other)
            if other is NotImplemented:
                return other
        d = _join(self.d, self.q, other.d, other.q)
        n1, n2 = self.n, other.n
        if n1 == n2:
            return Scalar._make(self.p - other.p, self.q - other.q, n1, d)
        return Scalar._make(self.p * n2 - other.p * n1, self.q * n2 - other.q * n1, n1 * n2, d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                return Scalar._make(self.p * other, self.q * other, self.n, self.d)
            other = _coerce(other)
            if other is NotImplemented:
                return other
        q1, q2 = self.q, other.q
        if q1 == 0:
            if q2 == 0:
                return Scalar._make(self.p * other.p, 0, self.n * other.n, 1)
            return Scalar._make(self.p * other.p, self.p * q2, self.n * other.n, other.d)
        if q2 == 0:
            return Scalar._make(self.p * other.p, q1 * other.p, self.n * other.n, self.d)
        d = _join(self.d, q1, other.d, q2)
        p1, p2 = self.p, other.p
        return Scalar._make(p1 * p2 + d * q1 * q2, p1 * q2 + q1 * p2, self.n * other.n, d)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        p, q, n = self.p, self.q, self.n
        if q == 0:
            if p == 0:
                raise ZeroDivisionError("Scalar division by zero")
            return Scalar._make(n if p > 0 else -n, 0, abs(p), 1)
        # n / (p + q r) = n (p - q r) / (p^2 - d q^2)
        den = p * p - self.d * q * q
        if den < 0:
            return Scalar._make(-n * p, n * q, -den, self.d)
        return Scalar._make(n * p, -n * q, den, self.d)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                if other == 0:
                    raise ZeroDivisionError("Scalar division by zero")
                if other < 0:
                    return Scalar._make(-self.p, -self.q, -other * self.n, self.d)
                return Scalar._make(self.p, self.q, other * self.n, self.d)
            other = _coerce(other)
            if other is NotImplemented:
                return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.of(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> Scalar:
        return Scalar._make(self.p, -self.q, self.n, self.d)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - d b^2``."""
        return Fraction(self.p * self.p - self.d * self.q * self.q, self.n * self.n)

    # ordering ----------------------------------------------------------------

    def sign(self) -> int:
        p, q = self.p, self.q
        if q == 0:
            return (p > 0) - (p < 0)
        if p >= 0 and q >= 0:
            return 1
        if p <= 0 and q <= 0:
            return -1
        # opposite signs: compare p^2 with d q^2
        if p * p > self.d * q * q:
            return 1 if p > 0 else -1
        return 1 if q > 0 else -1

    def cmp(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return (
                self.p == other.p
                and self.q == other.q
                and self.n == other.n
                and (self.q == 0 or self.d == other.d)
            )
        if isinstance(other, int):
            return self.q == 0 and self.n == 1 and self.p == other
        if isinstance(other, Rational):
            return self.q == 0 and self.p == other.numerator and self.n == other.denominator
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            if self.q == 0:
                h = hash(Fraction(self.p, self.n)) if self.n != 1 else hash(self.p)
            else:
                h = hash((self.p, self.q, self.n, self.d))
            self._hash = h
        return h

    # serialization -----------------------------------------------------------

    def to_json(self) -> dict:
        a, b = self.a, self.b
        return {"d": self.d, "a": [a.numerator, a.denominator], "b": [b.numerator, b.denominator]}

    @classmethod
    def from_json(cls, obj) -> Scalar:
        if isinstance(obj, (int, str)):
            return cls.of(Fraction(obj))
        a = Fraction(obj["a"][0], obj["a"][1])
        b = Fraction(obj["b"][0], obj["b"][1])
        if b and obj["d"] == 1:
            raise ValueError("d = 1 requires b = 0")
        return cls.from_parts(a, b, obj["d"])

    @classmethod
    def parse(cls, text: str) -> Scalar:
        """Parse ``"3"``, ``"1/2"``, ``"sqrt2"``, ``"1/2+1/2*sqrt5"`` and similar."""
        t = text.replace(" ", "").replace("√", "sqrt")
        if not t:
            raise ValueError("empty scalar")
        total = ZERO
        pos = 0
        terms = []
        for i in range(1, len(t) + 1):
            if i == len(t) or (t[i] in "+-" and t[i - 1] not in "+-*/"):
                terms.append(t[pos:i])
                pos = i
        for term in terms:
            sign = 1
            while term and term[0] in "+-":
                if term[0] == "-":
                    sign = -sign
                term = term[1:]
            if "sqrt" in term:
                coef, _, rad = term.partition("sqrt")
                coef = coef.rstrip("*")
                c = Fraction(coef) if coef else Fraction(1)
                if "/" in rad:
                    rad, _, den = rad.partition("/")
                    c /= Fraction(den)
                total = total + cls.from_parts(0, sign * c, int(rad))
            else:
                total = total + cls.of(sign * Fraction(term))
        return total


def _coerce(value):
    if isinstance(value, Rational):
        return Scalar._make(value.numerator, 0, value.denominator, 1)
    return NotImplemented


ZERO = Scalar(0)
ONE = Scalar(1)
HALF = Scalar(1, 0, 2)
SQRT2 = Scalar.sqrt(2)
SQRT3 = Scalar.sqrt(3)
SQRT5 = Scalar.sqrt(5)
GOLDEN = Scalar(1, 1, 2, 5)


def scalar(value) -> Scalar:
    """Coerce ints, Fractions, strings and JSON dicts to a :class:`Scalar`."""
    if isinstance(value, Scalar):
        return value
    if isinstance(value, str):
        return Scalar.parse(value)
    if isinstance(value, dict):
        return Scalar.from_json(value)
    return Scalar.of(value)


def compare(a: Scalar, b: Scalar) -> int:
    return (a - b).sign()
