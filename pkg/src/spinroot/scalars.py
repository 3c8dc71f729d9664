"""Exact arithmetic in the real quadratic tower Q(sqrt2, sqrt5).

Every exact coordinate appearing in the root-system catalog (halves, the
golden ratio tau = (1+sqrt5)/2, 1/sqrt2 factors and their products) lies in
this field, viewed as a 4-dimensional vector space over Q with basis
{1, sqrt2, sqrt5, sqrt10}.  Elements are stored as four integer numerators
over one positive common denominator, fully reduced, so equality and hashing
are structural.

The float backend is plain Python ``float``; mixing the two backends in
arithmetic is an error, never a silent coercion (QuadTower returns
NotImplemented for float operands).  The only exact-to-float bridge is the
explicit ``to_float`` / ``float()`` embedding.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd
from typing import Optional, Union

Rational = Fraction

#: Default absolute tolerance for float-backend equality on unit-scale values.
DEFAULT_EQ_TOL = 1e-9

_EQ_TOL = DEFAULT_EQ_TOL


def eq_tol() -> float:
    """The float-equality tolerance currently in force."""
    return _EQ_TOL


def set_eq_tol(value: float) -> None:
    """Override the float-equality tolerance for this run."""
    global _EQ_TOL
    if not value > 0:
        raise ValueError("tolerance must be positive")
    _EQ_TOL = float(value)

_SQRT2 = math.sqrt(2.0)
_SQRT5 = math.sqrt(5.0)
_SQRT10 = math.sqrt(10.0)


class BackendMismatchError(TypeError):
    """Raised when exact and float values meet in one operation."""


def _ratio(x) -> tuple[int, int]:
    if isinstance(x, int):
        return x, 1
    if isinstance(x, Fraction):
        return x.numerator, x.denominator
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class QuadTower:
    """Element a + b*sqrt2 + c*sqrt5 + d*sqrt10 with rational a, b, c, d."""

    __slots__ = ("_na", "_nb", "_nc", "_nd", "_q")

    def __init__(self, a=0, b=0, c=0, d=0):
        na, qa = _ratio(a)
        nb, qb = _ratio(b)
        nc, qc = _ratio(c)
        nd, qd = _ratio(d)
        q = qa * qb * qc * qd
        obj = QuadTower._raw(
            na * (q // qa), nb * (q // qb), nc * (q // qc), nd * (q // qd), q
        )
        self._na, self._nb, self._nc, self._nd, self._q = (
            obj._na, obj._nb, obj._nc, obj._nd, obj._q,
        )

    @classmethod
    def _raw(cls, na: int, nb: int, nc: int, nd: int, q: int) -> "QuadTower":
        if q < 0:
            na, nb, nc, nd, q = -na, -nb, -nc, -nd, -q
        g = gcd(na, nb, nc, nd, q)
        if g > 1:
            na //= g
            nb //= g
            nc //= g
            nd //= g
            q //= g
        self = object.__new__(cls)
        self._na = na
        self._nb = nb
        self._nc = nc
        self._nd = nd
        self._q = q
        return self

    @classmethod
    def from_rational(cls, x) -> "QuadTower":
        n, q = _ratio(x)
        return cls._raw(n, 0, 0, 0, q)

    # rational coordinates on the basis {1, sqrt2, sqrt5, sqrt10}
    @property
    def a(self) -> Fraction:
        return Fraction(self._na, self._q)

    @property
    def b(self) -> Fraction:
        return Fraction(self._nb, self._q)

    @property
    def c(self) -> Fraction:
        return Fraction(self._nc, self._q)

    @property
    def d(self) -> Fraction:
        return Fraction(self._nd, self._q)

    def is_zero(self) -> bool:
        return self._na == 0 and self._nb == 0 and self._nc == 0 and self._nd == 0

    def is_rational(self) -> bool:
        return self._nb == 0 and self._nc == 0 and self._nd == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return Fraction(self._na, self._q)

    def __bool__(self) -> bool:
        return not self.is_zero()

    @staticmethod
    def _coerce(x):
        if isinstance(x, QuadTower):
            return x
        if isinstance(x, int):
            return QuadTower._raw(x, 0, 0, 0, 1)
        if isinstance(x, Fraction):
            return QuadTower._raw(x.numerator, 0, 0, 0, x.denominator)
        return None

    def __add__(self, other):
        o = QuadTower._coerce(other)
        if o is None:
            return NotImplemented
        q1, q2 = self._q, o._q
        return QuadTower._raw(
            self._na * q2 + o._na * q1,
            self._nb * q2 + o._nb * q1,
            self._nc * q2 + o._nc * q1,
            self._nd * q2 + o._nd * q1,
            q1 * q2,
        )

    __radd__ = __add__

    def __neg__(self):
        return QuadTower._raw(-self._na, -self._nb, -self._nc, -self._nd, self._q)

    def __sub__(self, other):
        o = QuadTower._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = QuadTower._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = QuadTower._coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, c1, d1 = self._na, self._nb, self._nc, self._nd
        a2, b2, c2, d2 = o._na, o._nb, o._nc, o._nd
        return QuadTower._raw(
            a1 * a2 + 2 * b1 * b2 + 5 * c1 * c2 + 10 * d1 * d2,
            a1 * b2 + b1 * a2 + 5 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
            self._q * o._q,
        )

    __rmul__ = __mul__

    def conj_sqrt2(self) -> "QuadTower":
        """Field automorphism sqrt2 -> -sqrt2 (sqrt5 fixed)."""
        return QuadTower._raw(self._na, -self._nb, self._nc, -self._nd, self._q)

    def galois_conjugate(self) -> "QuadTower":
        """Field automorphism sqrt5 -> -sqrt5 (sqrt2 fixed); sends tau to sigma."""
        return QuadTower._raw(self._na, self._nb, -self._nc, -self._nd, self._q)

    def inverse(self) -> "QuadTower":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(sqrt2, sqrt5)")
        c2 = self.conj_sqrt2()
        c5 = self.galois_conjugate()
        c25 = c2.galois_conjugate()
        num = c2 * c5 * c25
        nrm = self * num
        # the full Galois norm is rational by construction
        if nrm._nb or nrm._nc or nrm._nd:
            raise ArithmeticError("norm not rational (internal error)")
        return QuadTower._raw(
            num._na * nrm._q, num._nb * nrm._q, num._nc * nrm._q, num._nd * nrm._q,
            num._q * nrm._na,
        )

    def __truediv__(self, other):
        o = QuadTower._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = QuadTower._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = QT_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = QuadTower._coerce(other)
        if o is None:
            return NotImplemented
        return (
            self._na == o._na
            and self._nb == o._nb
            and self._nc == o._nc
            and self._nd == o._nd
            and self._q == o._q
        )

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self._na, self._q))
        return hash((self._na, self._nb, self._nc, self._nd, self._q))

    def __float__(self) -> float:
        return (
            self._na + self._nb * _SQRT2 + self._nc * _SQRT5 + self._nd * _SQRT10
        ) / self._q

    def __repr__(self) -> str:
        return f"QuadTower({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"

    def __str__(self) -> str:
        parts = []
        for frac, unit in ((self.a, ""), (self.b, "r2"), (self.c, "r5"), (self.d, "r10")):
            if frac == 0:
                continue
            s = str(frac)
            if unit:
                s = f"{s}*{unit}"
            if parts and not s.startswith("-"):
                parts.append("+" + s)
            else:
                parts.append(s)
        return "".join(parts) if parts else "0"


QT_ZERO = QuadTower(0)
QT_ONE = QuadTower(1)
QT_HALF = QuadTower(Fraction(1, 2))
SQRT2 = QuadTower(0, 1)
SQRT5 = QuadTower(0, 0, 1)
SQRT10 = QuadTower(0, 0, 0, 1)
INV_SQRT2 = QuadTower(0, Fraction(1, 2))
#: golden ratio tau = (1+sqrt5)/2, the positive solution of x^2 = x + 1
TAU = QuadTower(Fraction(1, 2), 0, Fraction(1, 2))
#: its conjugate sigma = (1-sqrt5)/2
SIGMA = QuadTower(Fraction(1, 2), 0, Fraction(-1, 2))

Scalar = Union[QuadTower, float]


def is_exact(x: Scalar) -> bool:
    return isinstance(x, QuadTower)


def backend_of(x: Scalar) -> str:
    return "exact" if isinstance(x, QuadTower) else "float"


def galois_conjugate(x: QuadTower) -> QuadTower:
    if not isinstance(x, QuadTower):
        raise BackendMismatchError("galois_conjugate is defined on the exact backend only")
    return x.galois_conjugate()


def to_float(x: Scalar) -> float:
    return float(x)


def eq_scalar(x: Scalar, y: Scalar, tol: Optional[float] = None) -> bool:
    """Backend-aware equality: exact values compare exactly, floats within tol."""
    ex, ey = is_exact(x), is_exact(y)
    if ex != ey:
        raise BackendMismatchError("cannot compare exact and float scalars")
    if ex:
        return x == y
    return abs(x - y) <= (eq_tol() if tol is None else tol)


def scalar_str(x: Scalar) -> str:
    """Serialization form: exact as 'p/q+p/q*r2+...', float as 17-digit decimal."""
    if is_exact(x):
        return str(x)
    return format(float(x), ".17g")


def scalar_to_json(x: Scalar):
    """JSON value for a scalar: exact values as strings, floats as numbers."""
    if is_exact(x):
        return str(x)
    return float(x)
