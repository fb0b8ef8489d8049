"""Scalar types: exact rationals, real quadratic extensions, exact complex.

Matrix and isometry code accepts plain ints, ``fractions.Fraction``,
floats, complex, and the exact field elements defined here.  Exact types
support ring (and field) operations without rounding; floating values are
compared with a relative tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

REL_TOL = 1e-9  # default comparison tolerance for floating scalars


def is_exact(value) -> bool:
    """True for scalar types with exact (unrounded) arithmetic."""
    return isinstance(value, (int, Rational, QuadExt, ExactComplex))


def as_complex(value) -> complex:
    """Embed any supported scalar into the complex floats."""
    if isinstance(value, complex):
        return value
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, Rational):
        return complex(Fraction(value))
    if isinstance(value, QuadExt):
        return complex(float(value))
    if isinstance(value, ExactComplex):
        return complex(float(value.re), float(value.im))
    raise TypeError(f"unsupported scalar type {type(value).__name__}")


def close(u, v, tol: float = REL_TOL) -> bool:
    """Tolerance comparison of two scalars after complex embedding."""
    a, b = as_complex(u), as_complex(v)
    return abs(a - b) <= tol * (1.0 + max(abs(a), abs(b)))


@dataclass(frozen=True)
class QuadExt:
    """Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).

    ``d`` must be a positive non-square integer; arithmetic is exact.
    """

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.d <= 1 or math.isqrt(self.d) ** 2 == self.d:
            raise InvalidQuadExt(f"discriminant {self.d} must be a non-square > 1")

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise InvalidQuadExt("mixed discriminants")
            return other
        if isinstance(other, (int, Rational)):
            return QuadExt(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(self.a * o.a + self.d * self.b * o.b,
                       self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        n = self.a * self.a - self.d * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("zero element of quadratic field")
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadExt):
            return self.d == other.d and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"({self.a}+{self.b}*sqrt{self.d})"


class InvalidQuadExt(ValueError):
    pass


def quad(a, b=0, d: int = 3) -> QuadExt:
    return QuadExt(Fraction(a), Fraction(b), d)


@dataclass(frozen=True)
class ExactComplex:
    """Complex number with real and imaginary parts in a common Q(sqrt(d))."""

    re: QuadExt
    im: QuadExt

    @staticmethod
    def of(re, im=0, d: int = 3) -> "ExactComplex":
        return ExactComplex(quad(re, 0, d) if not isinstance(re, QuadExt) else re,
                            quad(im, 0, d) if not isinstance(im, QuadExt) else im)

    def __add__(self, other: "ExactComplex"):
        return ExactComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ExactComplex"):
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __mul__(self, other: "ExactComplex"):
        return ExactComplex(self.re * other.re - self.im * other.im,
                            self.re * other.im + self.im * other.re)

    def conj(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def norm2(self) -> QuadExt:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "ExactComplex":
        n = self.norm2().inverse()
        return ExactComplex(self.re * n, -(self.im * n))

    def __truediv__(self, other: "ExactComplex"):
        return self * other.inverse()

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def __eq__(self, other):
        if not isinstance(other, ExactComplex):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"EC({self.re}, {self.im})"


def ec_one(d: int = 3) -> ExactComplex:
    return ExactComplex.of(1, 0, d)


def ec_zero(d: int = 3) -> ExactComplex:
    return ExactComplex.of(0, 0, d)
