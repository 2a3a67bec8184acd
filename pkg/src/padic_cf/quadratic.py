"""Exact elements ``(a + b*sqrt(D)) / c`` of Q(sqrt D) embedded in Q_p."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .padic import (
    INF,
    balanced_digits_mod,
    check_prime,
    split_p,
    sqrt_exponent,
    sqrt_mod_power,
    symmetric_mod,
    v_int,
)


class FloorKind(enum.Enum):
    S = "s"
    T = "t"


@dataclass(frozen=True, slots=True)
class PartialQuotient:
    """An element ``num / p**pexp`` of Z[1/p] in lowest terms."""

    num: int
    pexp: int
    p: int

    def __post_init__(self):
        if self.pexp < 0:
            raise ValueError("pexp must be non-negative")
        if self.pexp > 0 and self.num % self.p == 0:
            raise ValueError("num/p^pexp is not in lowest terms")

    @classmethod
    def make(cls, num: int, pexp: int, p: int) -> PartialQuotient:
        while pexp > 0 and num % p == 0:
            num //= p
            pexp -= 1
        if num == 0:
            pexp = 0
        return cls(num, pexp, p)

    @classmethod
    def from_fraction(cls, q: Fraction, p: int) -> PartialQuotient:
        e, rest = split_p(q.denominator, p)
        if rest != 1:
            raise ValueError(f"{q} is not in Z[1/{p}]")
        return cls.make(q.numerator, e, p)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.p**self.pexp)

    @property
    def valuation(self):
        if self.num == 0:
            return INF
        return v_int(self.num, self.p) - self.pexp

    def __str__(self) -> str:
        if self.pexp == 0:
            return str(self.num)
        return f"{self.num}/{self.p ** self.pexp}"


@dataclass(frozen=True, slots=True)
class DigitWindow:
    """Balanced digits ``digits[i]`` at exponent ``start_exp + i``."""

    start_exp: int
    digits: tuple[int, ...]


@lru_cache(maxsize=None)
def _check_context(D: int, p: int) -> int:
    check_prime(p)
    if D == 0:
        raise ValueError("D must be nonzero")
    if D > 0 and math.isqrt(D) ** 2 == D:
        raise ValueError(f"D={D} is a perfect square")
    return sqrt_exponent(D, p)


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


class QuadElem:
    """Canonical ``(a + b*sqrt(D)) / c`` with ``gcd(a, b, c) = 1`` and ``c > 0``.

    ``sqrt(D)`` denotes the root in Z_p whose first nonzero balanced digit is
    positive. Two elements are equal iff their components are equal, which
    makes them usable as exact keys for cycle detection.
    """

    __slots__ = ("a", "b", "c", "D", "p")

    def __init__(self, a: int, b: int, c: int, D: int, p: int):
        if c == 0:
            raise ValueError("c must be nonzero")
        if b != 0:
            _check_context(D, p)
        else:
            check_prime(p)
        g = math.gcd(a, b, c)
        if c < 0:
            g = -g
        self.a = a // g
        self.b = b // g
        self.c = c // g
        self.D = D
        self.p = p

    @classmethod
    def _canon(cls, a: int, b: int, c: int, D: int, p: int) -> QuadElem:
        # trusted path: context already validated
        g = math.gcd(a, b, c)
        if c < 0:
            g = -g
        obj = object.__new__(cls)
        obj.a = a // g
        obj.b = b // g
        obj.c = c // g
        obj.D = D
        obj.p = p
        return obj

    @classmethod
    def sqrt(cls, D: int, p: int) -> QuadElem:
        return cls(0, 1, 1, D, p)

    @classmethod
    def rational(cls, num: int, den: int, p: int, D: int = 0) -> QuadElem:
        return cls(num, 0, den, D, p)

    # -- basic protocol -------------------------------------------------

    def key(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadElem):
            return NotImplemented
        return (
            self.a == other.a
            and self.b == other.b
            and self.c == other.c
            and self.p == other.p
            and (self.b == 0 or self.D == other.D)
        )

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.D if self.b else 0, self.p))

    def __repr__(self) -> str:
        return f"QuadElem({self.a}, {self.b}, {self.c}, D={self.D}, p={self.p})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(Fraction(self.a, self.c))
        num = f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}*sqrt({self.D})"
        return num if self.c == 1 else f"({num})/{self.c}"

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b:
            raise ValueError("element is irrational")
        return Fraction(self.a, self.c)

    def norm_numerator(self) -> int:
        """``a**2 - b**2 * D``, the norm of the numerator."""
        return self.a * self.a - self.b * self.b * self.D

    # -- field operations -----------------------------------------------

    def conjugate(self) -> QuadElem:
        if self.b == 0:
            return self
        return QuadElem._canon(self.a, -self.b, self.c, self.D, self.p)

    def invert(self) -> QuadElem:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return QuadElem._canon(
            self.c * self.a, -self.c * self.b, self.norm_numerator(), self.D, self.p
        )

    def sub_rational(self, q: Fraction) -> QuadElem:
        n, d = q.numerator, q.denominator
        return QuadElem._canon(self.a * d - n * self.c, self.b * d, self.c * d, self.D, self.p)

    def sub_pq(self, q: PartialQuotient) -> QuadElem:
        if q.num == 0:
            return self
        pe = self.p**q.pexp
        return QuadElem._canon(self.a * pe - q.num * self.c, self.b * pe, self.c * pe, self.D, self.p)

    def __sub__(self, other):
        if isinstance(other, PartialQuotient):
            return self.sub_pq(other)
        if isinstance(other, (int, Fraction)):
            return self.sub_rational(Fraction(other))
        if isinstance(other, QuadElem):
            self._same_field(other)
            return QuadElem._canon(
                self.a * other.c - other.a * self.c,
                self.b * other.c - other.b * self.c,
                self.c * other.c,
                self.D if self.b else other.D,
                self.p,
            )
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return QuadElem._canon(self.a * q.numerator, self.b * q.numerator, self.c * q.denominator, self.D, self.p)
        if isinstance(other, QuadElem):
            self._same_field(other)
            D = self.D if self.b else other.D
            return QuadElem._canon(
                self.a * other.a + self.b * other.b * D,
                self.a * other.b + self.b * other.a,
                self.c * other.c,
                D,
                self.p,
            )
        return NotImplemented

    def _same_field(self, other: QuadElem) -> None:
        if self.p != other.p or (self.b and other.b and self.D != other.D):
            raise ValueError("elements live in different fields")

    # -- p-adic structure -----------------------------------------------

    def _root(self, k: int) -> int:
        return sqrt_mod_power(self.D, self.p, k)

    def _numerator_mod(self, k: int) -> int:
        """``a + b*sqrt(D)`` reduced modulo ``p**k``, as an integer."""
        if self.b == 0:
            return self.a
        return self.a + self.b * self._root(k)

    def valuation(self):
        if self.is_zero():
            return INF
        p = self.p
        if self.b == 0:
            return v_int(self.a, p) - v_int(self.c, p)
        # v(a + b r) <= v(a^2 - b^2 D) because v(a - b r) >= 0, so this precision suffices
        k = v_int(self.norm_numerator(), p) + 1
        return v_int(self._numerator_mod(k) % p**k, p) - v_int(self.c, p)

    def _shifted_residue(self, extra: int) -> tuple[int, int]:
        """Return ``(R, e)`` with ``e = v_p(c)`` and ``R`` the symmetric residue of
        ``x * p**e`` modulo ``p**(e + extra)``."""
        p = self.p
        e = 0
        c0 = self.c
        while c0 % p == 0:
            c0 //= p
            e += 1
        k = e + extra
        if k <= 0:
            return 0, e
        m = p**k
        return symmetric_mod(self._numerator_mod(k) * pow(c0, -1, m), m), e

    def digits(self, up_to_exp: int) -> DigitWindow:
        if self.is_zero():
            raise ValueError("zero has no leading digit")
        v = self.valuation()
        if up_to_exp < v:
            return DigitWindow(v, ())
        R, e = self._shifted_residue(up_to_exp + 1)
        ds = balanced_digits_mod(R, self.p, up_to_exp + 1 + e)
        return DigitWindow(v, tuple(ds[v + e :]))

    def floor_parts(self) -> tuple[PartialQuotient, PartialQuotient, int]:
        """Return ``(s(x), t(x), a_0(x))`` in one pass."""
        p = self.p
        if self.is_zero():
            zero = PartialQuotient(0, 0, p)
            return zero, zero, 0
        R, e = self._shifted_residue(1)
        if e == 0:
            return PartialQuotient(R, 0, p), PartialQuotient(0, 0, p), R
        pe = p**e
        Rt = symmetric_mod(R, pe)
        a0 = (R - Rt) // pe
        return PartialQuotient.make(R, e, p), PartialQuotient.make(Rt, e, p), a0

    def floor(self, kind: FloorKind | str) -> PartialQuotient:
        s, t, _ = self.floor_parts()
        return s if FloorKind(kind) is FloorKind.S else t

    def euclidean_sign(self) -> int:
        """Sign of the real number ``(a + b*sqrt(D))/c`` under the positive real root (D > 0)."""
        if self.b == 0:
            return _sign(self.a)
        if self.D < 0:
            raise ValueError("no real embedding for negative D")
        sa, sb = _sign(self.a), _sign(self.b)
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 D
        return sa if self.a * self.a > self.b * self.b * self.D else sb


def normalize(a: int, b: int, c: int, D: int, p: int) -> QuadElem:
    return QuadElem(a, b, c, D, p)


def conjugate(x: QuadElem) -> QuadElem:
    return x.conjugate()


def valuation(x: QuadElem):
    return x.valuation()


def digits(x: QuadElem, up_to_exp: int) -> DigitWindow:
    return x.digits(up_to_exp)


def floor(x: QuadElem, kind: FloorKind | str) -> PartialQuotient:
    return x.floor(kind)


def sub_pq(x: QuadElem, q: PartialQuotient) -> QuadElem:
    return x.sub_pq(q)


def invert(x: QuadElem) -> QuadElem:
    return x.invert()
