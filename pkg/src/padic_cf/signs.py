"""When does Browkin II fall back on the sign function?

``b_classify`` is the direct answer read off a complete quotient.
``predict_sign_usage`` tries to answer one step ahead from the digits of the
previous (even-step) complete quotient via a Toeplitz determinant; it is
an experiment, and ``predictor_agreement`` measures it against the direct
answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algorithms import AlgorithmKind, ExpansionResult
from .errors import ImpossibleStateError, TerminatedExpansionError
from .padic import symmetric_mod
from .quadratic import QuadElem


def b_classify(x: QuadElem) -> int:
    """0 if the digit ``a_0(x)`` is nonzero, otherwise the Euclidean sign of ``t(x)``."""
    if x.is_zero():
        raise ValueError("B is undefined at zero")
    _, t, a0 = x.floor_parts()
    if a0 != 0:
        return 0
    if t.num == 0:
        raise ImpossibleStateError(f"a_0 = 0 and t = 0 for {x!r}")
    return 1 if t.num > 0 else -1


@dataclass(frozen=True)
class SignMatrix:
    n: int
    entries: tuple[tuple[int, ...], ...]


def sign_matrix(x: QuadElem) -> SignMatrix:
    """Toeplitz matrix of the digits ``c_n..c_2n`` of ``x - s(x)``, ``n = v_p(x - s(x))``.

    Row ``i`` holds ``c_{n+1+i-j}`` in column ``j`` for ``j <= i + 1`` and zero
    beyond, so the first row is ``(c_{n+1}, c_n, 0, ...)`` and the last
    ``(c_2n, ..., c_{n+1})``.
    """
    s, _, _ = x.floor_parts()
    y = x.sub_pq(s)
    if y.is_zero():
        raise TerminatedExpansionError(f"{x} equals its own floor")
    n = y.valuation()
    window = y.digits(2 * n)
    c = dict(zip(range(window.start_exp, 2 * n + 1), window.digits))
    rows = []
    for i in range(n):
        rows.append(tuple(c[n + 1 + i - j] if j <= i + 1 else 0 for j in range(n)))
    return SignMatrix(n, tuple(rows))


def det_bareiss(m) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SignPrediction:
    det_int: int
    det_mod_p: int
    predicted_nonzero_b: bool

    @property
    def predicted_nonzero_b_mod_p(self) -> bool:
        return self.det_mod_p == 0


def predict_sign_usage(x: QuadElem) -> SignPrediction:
    m = sign_matrix(x)
    det = det_bareiss(m.entries)
    return SignPrediction(det, symmetric_mod(det, x.p), det == 0)


@dataclass(frozen=True)
class PredictorCase:
    label: str
    p: int
    k: int
    n: int
    det_int: int
    det_mod_p: int
    predicted_int: bool
    predicted_mod_p: bool
    actual: bool

    @property
    def agree_int(self) -> bool:
        return self.predicted_int == self.actual

    @property
    def agree_mod_p(self) -> bool:
        return self.predicted_mod_p == self.actual

    def reproducer(self) -> str:
        return f"padic-cf predict --p {self.p} --input {self.label} --steps {self.k + 2}"


@dataclass
class AgreementReport:
    cases: list[PredictorCase] = field(default_factory=list)

    def counts(self) -> dict[str, dict[str, int]]:
        out = {}
        for variant in ("int", "mod_p"):
            agree = sum(1 for c in self.cases if getattr(c, f"agree_{variant}"))
            out[variant] = {"agree": agree, "disagree": len(self.cases) - agree}
        return out

    def disagreements(self, variant: str = "int") -> list[PredictorCase]:
        return [c for c in self.cases if not getattr(c, f"agree_{variant}")]


def predictor_agreement(runs) -> AgreementReport:
    """Compare the determinant prediction with ``B(alpha_{k+1}) != 0`` at every even ``k``.

    ``runs`` is an iterable of ``(label, ExpansionResult)`` pairs from Browkin II
    expansions; the label should be a CLI input spec so that each case doubles
    as a reproducer.
    """
    report = AgreementReport()
    for label, run in runs:
        if run.algorithm is not AlgorithmKind.BROWKIN_II:
            raise ValueError("predictor_agreement needs Browkin II runs")
        alphas = run.complete_quotients
        for k in range(0, len(alphas) - 1, 2):
            pred = predict_sign_usage(alphas[k])
            actual = b_classify(alphas[k + 1]) != 0
            report.cases.append(
                PredictorCase(
                    label=label,
                    p=run.x.p,
                    k=k,
                    n=sign_matrix(alphas[k]).n,
                    det_int=pred.det_int,
                    det_mod_p=pred.det_mod_p,
                    predicted_int=pred.predicted_nonzero_b,
                    predicted_mod_p=pred.predicted_nonzero_b_mod_p,
                    actual=actual,
                )
            )
    return report


def trace_consistent(run: ExpansionResult) -> bool:
    """The recorded B values of a Browkin II run agree with ``b_classify`` at odd steps."""
    return all(
        run.sign_trace[n] == b_classify(run.complete_quotients[n])
        for n in range(1, len(run.complete_quotients), 2)
    )
