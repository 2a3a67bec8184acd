"""Batch sweeps over (p, D) that regenerate the periodicity and approximation tables."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import subprocess
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from sympy import primerange

from . import __version__
from .algorithms import AlgorithmKind, Status, expand
from .errors import InvariantViolation
from .padic import check_prime, legendre, v_int
from .quadratic import QuadElem

TABLE_ALGORITHMS = (AlgorithmKind.BROWKIN_I, AlgorithmKind.BROWKIN_II, AlgorithmKind.NEW)
APPROX_STEPS = (10, 100, 1000)


@dataclass
class SweepConfig:
    primes: list[int]
    d_max: int = 1000
    max_steps: int = 1000
    algorithms: tuple[AlgorithmKind, ...] = TABLE_ALGORITHMS
    parallelism: int = 1
    out_dir: Path | None = None

    def __post_init__(self):
        self.primes = [check_prime(p) for p in self.primes]
        self.algorithms = tuple(AlgorithmKind(a) for a in self.algorithms)
        if self.d_max < 2:
            raise ValueError("d_max must be at least 2")
        if self.max_steps < 1:
            raise ValueError("max_steps must be positive")
        if self.parallelism < 1:
            raise ValueError("parallelism must be positive")

    def to_json(self) -> dict:
        return {
            "primes": self.primes,
            "d_max": self.d_max,
            "max_steps": self.max_steps,
            "algorithms": [a.value for a in self.algorithms],
            "parallelism": self.parallelism,
            "out_dir": str(self.out_dir) if self.out_dir is not None else None,
        }


def desk_profile(**overrides) -> SweepConfig:
    kw = dict(primes=[3, 5, 7, 11, 13], d_max=300, max_steps=300)
    kw.update(overrides)
    return SweepConfig(**kw)


def paper_profile(**overrides) -> SweepConfig:
    kw = dict(primes=list(primerange(3, 100)), d_max=1000, max_steps=1000)
    kw.update(overrides)
    return SweepConfig(**kw)


PROFILES = {"desk": desk_profile, "paper": paper_profile}


def eligible_D(p: int, d_max: int) -> list[int]:
    """Non-square ``D`` in ``[1, d_max]`` with ``p`` not dividing ``D`` and ``sqrt(D)`` in Q_p."""
    return [
        D
        for D in range(1, d_max + 1)
        if math.isqrt(D) ** 2 != D and D % p and legendre(D, p) == 1
    ]


# -- per-run records ----------------------------------------------------


@dataclass(frozen=True)
class RunRecord:
    p: int
    D: int
    algorithm: AlgorithmKind
    status: Status
    preperiod: int | None
    period: int | None
    steps: int
    # v_p(B_{N-1}) after N steps, for each N in APPROX_STEPS that is reachable
    val_b: tuple[tuple[int, int], ...] = ()


def _run_one(item: tuple[int, int, str, int]) -> RunRecord:
    p, D, alg, max_steps = item
    res = expand(QuadElem.sqrt(D, p), alg, max_steps)
    val_b = []
    acc = 0
    targets = set(APPROX_STEPS)
    last = max(APPROX_STEPS)
    for n in range(1, last):
        try:
            acc += res.quotient(n).valuation
        except IndexError:
            break
        if n + 1 in targets:
            val_b.append((n + 1, acc))
    return RunRecord(
        p, D, res.algorithm, res.status, res.preperiod, res.period, res.steps, tuple(val_b)
    )


def sweep(cfg: SweepConfig) -> list[RunRecord]:
    """Expand ``sqrt(D)`` for every prime, algorithm and eligible ``D`` in ``cfg``.

    Output order is fixed by ``(p, algorithm, D)`` regardless of parallelism.
    """
    items = [
        (p, D, alg.value, cfg.max_steps)
        for p in cfg.primes
        for alg in cfg.algorithms
        for D in eligible_D(p, cfg.d_max)
    ]
    if cfg.parallelism > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            records = list(pool.map(_run_one, items, chunksize=8))
    else:
        records = [_run_one(it) for it in items]
    check_preperiods(records)
    return records


def check_preperiods(records) -> None:
    """Hard checks on pre-periods of periodic square roots.

    Browkin II: pre-period 1 or even. New with ``p`` not dividing ``D``: exactly 1.
    """
    for r in records:
        if r.status is not Status.PERIODIC:
            continue
        if r.algorithm is AlgorithmKind.BROWKIN_II and r.preperiod != 1 and r.preperiod % 2:
            raise InvariantViolation(f"Browkin II sqrt({r.D}) in Q_{r.p}: odd pre-period {r.preperiod}")
        if r.algorithm is AlgorithmKind.NEW and r.D % r.p and r.preperiod != 1:
            raise InvariantViolation(f"New sqrt({r.D}) in Q_{r.p}: pre-period {r.preperiod} != 1")


# -- aggregation ---------------------------------------------------------


def round_half_up(x: Fraction, places: int) -> Fraction:
    scale = 10**places
    sign = -1 if x < 0 else 1
    return sign * Fraction(math.floor(abs(x) * scale + Fraction(1, 2)), scale)


def fmt_decimal(x: Fraction | None, places: int) -> str:
    if x is None:
        return "none"
    r = round_half_up(x, places)
    sign = "-" if r < 0 else ""
    r = abs(r)
    whole = r.numerator // r.denominator
    frac = (r - whole) * 10**places
    return f"{sign}{whole}.{int(frac):0{places}d}"


def order_statistic_quantile(values: list[int], q: Fraction) -> int | None:
    """``floor(q * n)``-th smallest value (1-based), the convention of the published tables."""
    if not values:
        return None
    xs = sorted(values)
    idx = max(math.floor(q * len(xs)), 1)
    return xs[idx - 1]


@dataclass(frozen=True)
class TableRow:
    p: int
    algorithm: str
    periodicCount: int
    meanPeriod: Fraction | None
    q75: int | None
    q90: int | None
    total: int

    def csv_fields(self) -> list[str]:
        return [
            str(self.p),
            self.algorithm,
            str(self.periodicCount),
            fmt_decimal(self.meanPeriod, 2),
            _opt(self.q75),
            _opt(self.q90),
            str(self.total),
            _opt(self.meanPeriod),
        ]


TABLE_HEADER = ["p", "algorithm", "periodicCount", "meanPeriod", "q75", "q90", "total", "meanPeriodExact"]


def _opt(x) -> str:
    return "none" if x is None else str(x)


def table_rows(records, cfg: SweepConfig) -> list[TableRow]:
    rows = []
    for p in cfg.primes:
        total = len(eligible_D(p, cfg.d_max))
        for alg in cfg.algorithms:
            periods = [
                r.period
                for r in records
                if r.p == p and r.algorithm is alg and r.status is Status.PERIODIC
            ]
            n = len(periods)
            rows.append(
                TableRow(
                    p=p,
                    algorithm=alg.label,
                    periodicCount=n,
                    meanPeriod=Fraction(sum(periods), n) if n else None,
                    q75=order_statistic_quantile(periods, Fraction(3, 4)),
                    q90=order_statistic_quantile(periods, Fraction(9, 10)),
                    total=total,
                )
            )
    return rows


@dataclass(frozen=True)
class PreperiodRow:
    p: int
    periodicCount: int
    meanPreperiod: Fraction | None
    histogram: tuple[tuple[int, int], ...]

    def csv_fields(self) -> list[str]:
        hist = " ".join(f"{h}:{c}" for h, c in self.histogram)
        return [str(self.p), str(self.periodicCount), fmt_decimal(self.meanPreperiod, 2), hist, _opt(self.meanPreperiod)]


PREP_HEADER = ["p", "periodicCount", "meanPreperiod", "histogram", "meanPreperiodExact"]


def preperiod_rows(records, cfg: SweepConfig) -> list[PreperiodRow]:
    check_preperiods(records)
    rows = []
    for p in cfg.primes:
        hs = [
            r.preperiod
            for r in records
            if r.p == p and r.algorithm is AlgorithmKind.BROWKIN_II and r.status is Status.PERIODIC
        ]
        hist: dict[int, int] = {}
        for h in hs:
            hist[h] = hist.get(h, 0) + 1
        rows.append(
            PreperiodRow(
                p,
                len(hs),
                Fraction(sum(hs), len(hs)) if hs else None,
                tuple(sorted(hist.items())),
            )
        )
    return rows


@dataclass(frozen=True)
class ApproxRow:
    """Mean ``v_p(B_{N-1})`` over eligible ``sqrt(D)`` after N = 10, 100, 1000 steps."""

    p: int
    algorithm: str
    meanVal10: Fraction | None
    meanVal100: Fraction | None
    meanVal1000: Fraction | None

    def csv_fields(self) -> list[str]:
        vals = (self.meanVal10, self.meanVal100, self.meanVal1000)
        return [str(self.p), self.algorithm] + [fmt_decimal(v, 1) for v in vals] + [_opt(v) for v in vals]


APPROX_HEADER = [
    "p", "algorithm", "meanVal10", "meanVal100", "meanVal1000",
    "meanVal10Exact", "meanVal100Exact", "meanVal1000Exact",
]


def approx_rows(records, cfg: SweepConfig) -> list[ApproxRow]:
    rows = []
    for p in cfg.primes:
        for alg in cfg.algorithms:
            mine = [r for r in records if r.p == p and r.algorithm is alg]
            means = []
            for N in APPROX_STEPS:
                vals = [dict(r.val_b).get(N) for r in mine]
                if not vals or any(v is None for v in vals):
                    means.append(None)
                else:
                    means.append(Fraction(sum(vals), len(vals)))
            rows.append(ApproxRow(p, alg.label, *means))
    return rows


# -- file output -----------------------------------------------------------


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r.csv_fields() if hasattr(r, "csv_fields") else r)
    return buf.getvalue()


def write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def version_string() -> str:
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty", "--tags"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True,
            text=True,
            timeout=5,
        )
        if out.returncode == 0 and out.stdout.strip():
            return f"{__version__}+{out.stdout.strip()}"
    except (OSError, subprocess.SubprocessError):
        pass
    return __version__


def write_manifest(cfg: SweepConfig, command: str, wall_time: float, files: list[str]) -> Path:
    manifest = {
        "command": command,
        "config": cfg.to_json(),
        "version": version_string(),
        "wall_time_seconds": round(wall_time, 3),
        "files": sorted(files),
    }
    path = Path(cfg.out_dir) / f"{command}_manifest.json"
    write_text(path, json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def _finish(cfg: SweepConfig, command: str, started: float, outputs: dict[str, str]) -> None:
    if cfg.out_dir is None:
        return
    out = Path(cfg.out_dir)
    for name, text in outputs.items():
        write_text(out / name, text)
    write_manifest(cfg, command, time.perf_counter() - started, list(outputs))


def run_table(cfg: SweepConfig, records=None) -> list[TableRow]:
    started = time.perf_counter()
    if records is None:
        records = sweep(cfg)
    rows = table_rows(records, cfg)
    _finish(cfg, "table", started, {"table.csv": csv_text(TABLE_HEADER, rows)})
    return rows


def run_preperiod_stats(cfg: SweepConfig, records=None) -> list[PreperiodRow]:
    started = time.perf_counter()
    if records is None:
        cfg = SweepConfig(**{**_fields(cfg), "algorithms": (AlgorithmKind.BROWKIN_II,)})
        records = sweep(cfg)
    rows = preperiod_rows(records, cfg)
    _finish(cfg, "prep", started, {"preperiods.csv": csv_text(PREP_HEADER, rows)})
    return rows


def run_approx(cfg: SweepConfig, records=None) -> list[ApproxRow]:
    started = time.perf_counter()
    if records is None:
        records = sweep(cfg)
    rows = approx_rows(records, cfg)
    _finish(cfg, "approx", started, {"approx.csv": csv_text(APPROX_HEADER, rows)})
    return rows


def _fields(cfg: SweepConfig) -> dict:
    return {k: getattr(cfg, k) for k in ("primes", "d_max", "max_steps", "algorithms", "parallelism", "out_dir")}


# -- classical comparison ------------------------------------------------------


def real_cf_period(D: int) -> int:
    """Period length of the real continued fraction of ``sqrt(D)``."""
    if D < 2 or math.isqrt(D) ** 2 == D:
        raise ValueError(f"D={D} must be a non-square integer >= 2")
    a0 = math.isqrt(D)
    m, d, a = 0, 1, a0
    k = 0
    while True:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        k += 1
        if a == 2 * a0:
            return k


def max_real_cf_period(d_max: int) -> tuple[int, int]:
    """``(period, D)`` of the longest real period over non-square ``2 <= D <= d_max``."""
    return max(
        (real_cf_period(D), D) for D in range(2, d_max + 1) if math.isqrt(D) ** 2 != D
    )


def jobs_default() -> int:
    env = os.environ.get("PADIC_CF_JOBS")
    return int(env) if env else 1
