"""The four p-adic continued fraction algorithms and exact period detection."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import ImpossibleStateError
from .quadratic import PartialQuotient, QuadElem

DEFAULT_MAX_STEPS = 1000


class AlgorithmKind(enum.Enum):
    BROWKIN_I = "b1"
    BROWKIN_II = "b2"
    NEW = "new"
    NEW_SWAPPED = "new-swapped"

    @property
    def alternating(self) -> bool:
        return self is not AlgorithmKind.BROWKIN_I

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    AlgorithmKind.BROWKIN_I: "BrowkinI",
    AlgorithmKind.BROWKIN_II: "BrowkinII",
    AlgorithmKind.NEW: "New",
    AlgorithmKind.NEW_SWAPPED: "NewSwapped",
}


class Status(enum.Enum):
    FINITE = "finite"
    PERIODIC = "periodic"
    TRUNCATED = "truncated"


@dataclass
class ExpansionResult:
    """Partial quotients of one run plus its classification.

    ``complete_quotients[n]`` is the ``alpha_n`` that produced ``quotients[n]``.
    For periodic runs ``quotients[preperiod:preperiod + period]`` is the
    repeating block. ``sign_trace[n]`` is the B value at step ``n`` for
    Browkin II (0 at even steps) and is empty for the other algorithms.
    """

    x: QuadElem
    algorithm: AlgorithmKind
    quotients: list[PartialQuotient]
    complete_quotients: list[QuadElem]
    status: Status
    preperiod: int | None = None
    period: int | None = None
    sign_trace: list[int] = field(default_factory=list)

    @property
    def steps(self) -> int:
        return len(self.quotients)

    @property
    def is_periodic(self) -> bool:
        return self.status is Status.PERIODIC

    def quotient(self, n: int) -> PartialQuotient:
        """``b_n``, unrolling the cycle past the computed prefix when periodic."""
        if n < len(self.quotients):
            return self.quotients[n]
        if self.status is Status.PERIODIC:
            h, k = self.preperiod, self.period
            return self.quotients[h + (n - h) % k]
        raise IndexError(f"b_{n} not available ({self.status.value} after {self.steps} steps)")

    def quotients_upto(self, n: int) -> list[PartialQuotient]:
        return [self.quotient(i) for i in range(n + 1)]

    def describe(self) -> str:
        if self.status is Status.PERIODIC:
            return f"periodic h={self.preperiod} k={self.period}"
        if self.status is Status.FINITE:
            return "finite"
        return f"truncated steps={self.steps}"


def choose_quotient(alg: AlgorithmKind, n: int, x: QuadElem) -> tuple[PartialQuotient, int]:
    """Partial quotient for step ``n`` and the B value used (nonzero only for Browkin II)."""
    s, t, a0 = x.floor_parts()
    even = n % 2 == 0
    if alg is AlgorithmKind.BROWKIN_I:
        return s, 0
    if alg is AlgorithmKind.NEW:
        return (s if even else t), 0
    if alg is AlgorithmKind.NEW_SWAPPED:
        return (t if even else s), 0
    if even:
        return s, 0
    if a0 != 0:
        # v_p(x - t(x)) == 0
        return t, 0
    if t.num == 0:
        raise ImpossibleStateError(f"sign(t) needed with t(x)=0 at odd step {n} for x={x!r}")
    sign = 1 if t.num > 0 else -1
    return PartialQuotient.make(t.num - sign * x.p**t.pexp, t.pexp, x.p), sign


def step(alg: AlgorithmKind, n: int, x: QuadElem) -> tuple[PartialQuotient, QuadElem | None]:
    """One step: ``(b_n, alpha_{n+1})`` or ``(b_n, None)`` when ``alpha_n == b_n``."""
    b, _ = choose_quotient(alg, n, x)
    rest = x.sub_pq(b)
    if rest.is_zero():
        return b, None
    return b, rest.invert()


def expand(x: QuadElem, alg: AlgorithmKind | str, max_steps: int = DEFAULT_MAX_STEPS) -> ExpansionResult:
    """Expand ``x`` for at most ``max_steps`` partial quotients.

    Periodicity is decided by exact recurrence of a complete quotient at the
    same step parity (parity ignored for Browkin I), so a reported period is
    a proof, not a guess.
    """
    alg = AlgorithmKind(alg)
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    mod = 2 if alg.alternating else 1
    seen: dict[tuple, int] = {}
    quotients: list[PartialQuotient] = []
    alphas: list[QuadElem] = []
    trace: list[int] = []
    track = alg is AlgorithmKind.BROWKIN_II
    cur = x
    for n in range(max_steps):
        key = (cur.a, cur.b, cur.c, n % mod)
        first = seen.get(key)
        if first is not None:
            h, k = _minimal_cycle(alphas, first, n - first, mod)
            return ExpansionResult(x, alg, quotients, alphas, Status.PERIODIC, h, k, trace)
        seen[key] = n
        b, sign = choose_quotient(alg, n, cur)
        quotients.append(b)
        alphas.append(cur)
        if track:
            trace.append(sign)
        rest = cur.sub_pq(b)
        if rest.is_zero():
            return ExpansionResult(x, alg, quotients, alphas, Status.FINITE, sign_trace=trace)
        cur = rest.invert()
    return ExpansionResult(x, alg, quotients, alphas, Status.TRUNCATED, sign_trace=trace)


def _minimal_cycle(alphas: list[QuadElem], h: int, k: int, mod: int) -> tuple[int, int]:
    # first revisit of a deterministic orbit is already minimal; kept as a guard
    while h > 0 and k % mod == 0 and alphas[h - 1] == alphas[h - 1 + k]:
        h -= 1
    return h, k
