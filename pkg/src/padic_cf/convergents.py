"""Convergents ``A_n / B_n`` of p-adic continued fractions and their error valuations.

All arithmetic is exact (``Fraction`` and ``QuadElem``); nothing here
truncates a p-adic series except :func:`truncation_error`, which does so on
purpose as the baseline it measures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantViolation
from .padic import INF, valuation_rational
from .quadratic import PartialQuotient, QuadElem


@dataclass(frozen=True)
class Convergent:
    A: Fraction
    B: Fraction
    n: int

    @property
    def value(self) -> Fraction:
        return self.A / self.B


def convergent_seq(quotients: list[PartialQuotient], upto: int | None = None) -> list[Convergent]:
    """Convergents ``0..upto`` from ``A_n = b_n A_{n-1} + A_{n-2}`` (same for ``B``)."""
    if upto is None:
        upto = len(quotients) - 1
    if upto < 0 or upto >= len(quotients):
        raise IndexError(f"need {upto + 1} partial quotients, have {len(quotients)}")
    a_prev, b_prev = Fraction(1), Fraction(0)
    a_cur, b_cur = quotients[0].value, Fraction(1)
    out = [Convergent(a_cur, b_cur, 0)]
    for n in range(1, upto + 1):
        q = quotients[n].value
        a_prev, a_cur = a_cur, q * a_cur + a_prev
        b_prev, b_cur = b_cur, q * b_cur + b_prev
        out.append(Convergent(a_cur, b_cur, n))
    return out


def _v(q: Fraction, p: int):
    return valuation_rational(q.numerator, q.denominator, p)


def valuation_of_B(quotients: list[PartialQuotient], n: int) -> int:
    """``v_p(B_n)`` via ``v_p(b_1) + ... + v_p(b_n)``, cross-checked against ``B_n`` itself.

    ``b_0`` is excluded: ``B_0 = 1`` whatever ``b_0`` is.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    p = quotients[0].p
    by_sum = sum(q.valuation for q in quotients[1 : n + 1])
    direct = _v(convergent_seq(quotients, n)[-1].B, p)
    if by_sum != direct:
        raise InvariantViolation(f"v_p(B_{n}): sum formula {by_sum} != direct {direct}")
    return direct


def approx_error_valuation(x: QuadElem, quotients: list[PartialQuotient], n: int) -> int:
    """``v_p(x - A_n/B_n)``, asserted equal to ``-v_p(B_n B_{n+1})``."""
    convs = convergent_seq(quotients, n + 1)
    diff = x.sub_rational(convs[n].value)
    direct = diff.valuation()
    p = x.p
    predicted = -(_v(convs[n].B, p) + _v(convs[n + 1].B, p))
    if direct != predicted:
        raise InvariantViolation(
            f"v_p(x - A_{n}/B_{n}) = {direct}, expected -v_p(B_n B_n+1) = {predicted}"
        )
    return direct


def truncation(x: QuadElem, n: int) -> Fraction:
    """``C_n``: the p-adic series of ``x`` cut after the ``p**n`` digit."""
    v = x.valuation()
    if v is INF:
        return Fraction(0)
    w = x.digits(n)
    p = x.p
    total = Fraction(0)
    for i, d in enumerate(w.digits):
        total += Fraction(d) * Fraction(p) ** (w.start_exp + i)
    return total


def truncation_error(x: QuadElem, n: int):
    """``v_p(x - C_n)``; at least ``n + 1`` by construction."""
    v = x.sub_rational(truncation(x, n)).valuation()
    if v < n + 1:
        raise InvariantViolation(f"truncation error valuation {v} < {n + 1}")
    return v


def determinant(convs: list[Convergent], n: int) -> Fraction:
    """``A_n B_{n-1} - A_{n-1} B_n`` (with ``A_{-1} = 1``, ``B_{-1} = 0`` at ``n = 0``)."""
    if n == 0:
        return convs[0].A * 0 - 1 * convs[0].B
    return convs[n].A * convs[n - 1].B - convs[n - 1].A * convs[n].B
