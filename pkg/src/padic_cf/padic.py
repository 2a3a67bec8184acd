"""Balanced-digit p-adic arithmetic on integers and rationals.

Everything here works on plain Python integers. The only state is a memo of
lifted square roots, which is safe to share because every entry is the
unique root fixed by the branch rule.
"""

from __future__ import annotations

import math
from functools import lru_cache

from sympy import isprime
from sympy.ntheory import sqrt_mod

from .errors import NotAResidueError


class _Infinity:
    """Valuation of zero. Compares greater than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("padic_cf.INF")

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __neg__(self):
        raise ValueError("cannot negate the valuation of zero")

    def __add__(self, other):
        return self

    __radd__ = __add__


INF = _Infinity()


def check_prime(p: int) -> int:
    """Return ``p`` if it is an odd prime, else raise ``ValueError``."""
    p = int(p)
    if p < 3 or not isprime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    return p


def v_int(n: int, p: int):
    """p-adic valuation of an integer; ``INF`` for 0."""
    if n == 0:
        return INF
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def split_p(n: int, p: int) -> tuple[int, int]:
    """Write ``n = p**e * u`` with ``p`` not dividing ``u``; return ``(e, u)``."""
    if n == 0:
        raise ValueError("cannot split zero")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e, n


def valuation_rational(num: int, den: int, p: int):
    if den == 0:
        raise ValueError("zero denominator")
    if num == 0:
        return INF
    return v_int(num, p) - v_int(den, p)


def symmetric_mod(x: int, m: int) -> int:
    """Representative of ``x mod m`` in ``(-m/2, m/2]``; for odd ``m`` the range is symmetric."""
    r = x % m
    if 2 * r > m:
        r -= m
    return r


def balanced_digits_mod(x: int, p: int, k: int) -> list[int]:
    """Digits ``d_0..d_{k-1}`` in ``[-(p-1)/2, (p-1)/2]`` with ``sum d_i p^i == x mod p^k``."""
    if k < 1:
        raise ValueError("k must be positive")
    r = symmetric_mod(x, p**k)
    out = []
    for _ in range(k):
        d = symmetric_mod(r, p)
        out.append(d)
        r = (r - d) // p
    return out


def from_digits(digits, p: int) -> int:
    """Inverse of :func:`balanced_digits_mod`: ``sum d_i p^i``."""
    total = 0
    for d in reversed(digits):
        total = total * p + d
    return total


def mod_inverse(x: int, m: int) -> int:
    if m < 2:
        raise ValueError("modulus must be at least 2")
    if math.gcd(x, m) != 1:
        raise ValueError(f"{x} is not invertible modulo {m}")
    return pow(x, -1, m)


def _unit_root_mod_p(D: int, p: int) -> int:
    if D % p == 0:
        raise ValueError(f"p={p} divides D={D}")
    r = sqrt_mod(D % p, p)
    if r is None:
        raise NotAResidueError(f"{D} is not a quadratic residue modulo {p}")
    # branch rule: positive balanced digit
    if r > (p - 1) // 2:
        r = p - r
    return r


@lru_cache(maxsize=4096)
def _lifted(D: int, p: int, k: int) -> int:
    if k == 1:
        return _unit_root_mod_p(D, p)
    half = (k + 1) // 2
    r = _lifted(D, p, half)
    m = p**k
    # Newton step doubles the number of correct digits
    return (r - (r * r - D) * pow(2 * r, -1, m)) % m


def hensel_sqrt(D: int, p: int, k: int) -> int:
    """Square root of ``D`` modulo ``p**k`` whose balanced digit mod ``p`` is positive.

    Raises ``NotAResidueError`` if ``D`` is not a square mod ``p`` and
    ``ValueError`` if ``p`` divides ``D``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    return _lifted(D, p, k)


def sqrt_exponent(D: int, p: int) -> int:
    """Valuation of ``sqrt(D)`` in Q_p; raises if the root does not exist there."""
    if D == 0:
        raise ValueError("D must be nonzero")
    e, u = split_p(D, p)
    if e % 2:
        raise NotAResidueError(f"v_{p}({D}) is odd, so sqrt({D}) is not in Q_{p}")
    _unit_root_mod_p(u, p)
    return e // 2


def sqrt_mod_power(D: int, p: int, k: int) -> int:
    """Integer ``r`` with ``r == sqrt(D) (mod p**k)`` for the chosen branch.

    Unlike :func:`hensel_sqrt` this accepts ``D`` divisible by an even power of ``p``.
    """
    e, u = split_p(D, p)
    if e == 0:
        return _lifted(D, p, k)
    if e % 2:
        raise NotAResidueError(f"v_{p}({D}) is odd, so sqrt({D}) is not in Q_{p}")
    h = e // 2
    if k <= h:
        return 0
    return p**h * _lifted(u, p, k - h)


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1
