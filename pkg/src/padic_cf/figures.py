"""SVG charts for the periodicity sweep, each backed by a CSV of the plotted data."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .algorithms import Status  # noqa: E402
from .experiments import csv_text, write_text  # noqa: E402

_SVG_META = {"Date": None, "Creator": None}


def _save(fig, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata=_SVG_META)
    plt.close(fig)


def _by_algorithm(rows, value):
    series: dict[str, list[tuple[int, float]]] = {}
    for r in rows:
        v = value(r)
        if v is not None:
            series.setdefault(r.algorithm, []).append((r.p, float(v)))
    return series


def _line_chart(series, title, ylabel, path):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for alg, pts in series.items():
        xs, ys = zip(*pts)
        ax.plot(xs, ys, marker="o", label=alg)
    ax.set_xlabel("p")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    if series:
        ax.legend()
    _save(fig, path)


def emit_figures(rows, records, out_dir, scatter_prime: int = 5) -> list[str]:
    """Write three SVG charts and their CSVs into ``out_dir``; return the file names.

    ``rows`` are TableRow objects, ``records`` the per-D RunRecords behind them.
    """
    out = Path(out_dir)
    written = []

    counts = _by_algorithm(rows, lambda r: r.periodicCount)
    _line_chart(counts, "Number of periodic square roots", "periodic", out / "fig_counts.svg")
    write_text(
        out / "fig_counts.csv",
        csv_text(["p", "algorithm", "periodicCount"], [[r.p, r.algorithm, r.periodicCount] for r in rows]),
    )
    written += ["fig_counts.svg", "fig_counts.csv"]

    means = _by_algorithm(rows, lambda r: r.meanPeriod)
    _line_chart(means, "Mean periods of periodic square roots", "mean period", out / "fig_mean_periods.svg")
    write_text(
        out / "fig_mean_periods.csv",
        csv_text(
            ["p", "algorithm", "meanPeriod"],
            [[r.p, r.algorithm, "none" if r.meanPeriod is None else r.meanPeriod] for r in rows],
        ),
    )
    written += ["fig_mean_periods.svg", "fig_mean_periods.csv"]

    pts = [
        (r.algorithm.label, r.D, r.period)
        for r in records
        if r.p == scatter_prime and r.status is Status.PERIODIC
    ]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    labels = []
    for alg, _, _ in pts:
        if alg not in labels:
            labels.append(alg)
    for alg in labels:
        xs = [d for a, d, _ in pts if a == alg]
        ys = [k for a, _, k in pts if a == alg]
        ax.scatter(xs, ys, s=12, label=alg)
    ax.set_xlabel("D")
    ax.set_ylabel("period length")
    ax.set_title(f"Period lengths of periodic square roots, p={scatter_prime}")
    if labels:
        ax.legend()
    _save(fig, out / "fig_periods.svg")
    write_text(out / "fig_periods.csv", csv_text(["algorithm", "D", "period"], [list(t) for t in pts]))
    written += ["fig_periods.svg", "fig_periods.csv"]
    return written
