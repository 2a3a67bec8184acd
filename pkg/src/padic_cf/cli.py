"""Command line front end.

Exit codes: 0 success, 1 invariant violation (a would-be counterexample to a
theorem, or a bug), 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from .algorithms import DEFAULT_MAX_STEPS, AlgorithmKind, ExpansionResult, Status, expand
from .errors import InvariantViolation
from .padic import check_prime
from .quadratic import QuadElem

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_input(spec: str, p: int) -> QuadElem:
    """Parse ``sqrt:<D>``, ``rat:<num>/<den>`` or ``quad:<a>,<b>,<c>,<D>``."""
    kind, _, body = spec.partition(":")
    try:
        if kind == "sqrt":
            return QuadElem.sqrt(int(body), p)
        if kind == "rat":
            q = Fraction(body)
            return QuadElem.rational(q.numerator, q.denominator, p)
        if kind == "quad":
            a, b, c, D = (int(t) for t in body.split(","))
            return QuadElem(a, b, c, D, p)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid input {spec!r}: {exc}") from exc
    raise UsageError(f"unknown input kind in {spec!r}; use sqrt:, rat: or quad:")


def bracket(res: ExpansionResult) -> str:
    qs = [str(q) for q in res.quotients]
    if res.status is Status.PERIODIC:
        h = res.preperiod
        head = qs[:h]
        body = "(" + ", ".join(qs[h:]) + ")"
        return "[" + ", ".join(head + [body]) + "]"
    if res.status is Status.TRUNCATED:
        return "[" + ", ".join(qs) + ", ...]"
    return "[" + ", ".join(qs) + "]"


def expansion_json(res: ExpansionResult, spec: str) -> dict:
    return {
        "p": res.x.p,
        "input": spec,
        "algorithm": res.algorithm.value,
        "status": res.status.value,
        "preperiod": res.preperiod,
        "period": res.period,
        "steps": res.steps,
        "quotients": [str(q) for q in res.quotients],
        "signTrace": res.sign_trace,
    }


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _role(res: ExpansionResult, n: int) -> str:
    if res.status is Status.PERIODIC:
        return "pre" if n < res.preperiod else "period"
    return res.status.value


def cmd_expand(args) -> int:
    p = check_prime(args.p)
    x = parse_input(args.input, p)
    res = expand(x, args.alg, args.max_steps)
    if args.format == "json":
        print(dump_json(expansion_json(res, args.input)))
    elif args.format == "csv":
        from .experiments import csv_text

        rows = [
            [n, str(q), q.num, q.pexp, res.sign_trace[n] if res.sign_trace else "", _role(res, n)]
            for n, q in enumerate(res.quotients)
        ]
        sys.stdout.write(csv_text(["n", "quotient", "num", "pexp", "B", "role"], rows))
    else:
        print(f"{res.describe()} {bracket(res)}")
        if res.sign_trace:
            print("B: " + " ".join(str(b) for b in res.sign_trace))
    return EXIT_OK


PREDICT_HEADER = ["input", "k", "n", "detInt", "detModP", "predictedInt", "predictedModP", "actual", "agreeInt", "agreeModP"]


def _predict_rows(report):
    return [
        [c.label, c.k, c.n, c.det_int, c.det_mod_p, int(c.predicted_int), int(c.predicted_mod_p),
         int(c.actual), int(c.agree_int), int(c.agree_mod_p)]
        for c in report.cases
    ]


def cmd_predict(args) -> int:
    from .experiments import csv_text, eligible_D, write_text
    from .signs import predictor_agreement

    if args.alg != AlgorithmKind.BROWKIN_II.value:
        raise UsageError("the sign predictor only applies to Browkin II (--alg b2)")
    p = check_prime(args.p)
    if (args.input is None) == (args.d_max is None):
        raise UsageError("give exactly one of --input or --d-max")
    if args.input is not None:
        labels = [args.input]
    else:
        labels = [f"sqrt:{D}" for D in eligible_D(p, args.d_max)]
    runs = [(lab, expand(parse_input(lab, p), AlgorithmKind.BROWKIN_II, args.steps)) for lab in labels]
    report = predictor_agreement(runs)
    text = csv_text(PREDICT_HEADER, _predict_rows(report))
    if args.out:
        out = _writable_dir(args.out)
        write_text(out / "predictor.csv", text)
        write_text(out / "predictor_summary.json", dump_json(_predict_summary(report)) + "\n")
    if args.input is not None:
        sys.stdout.write(text)
    for variant, c in report.counts().items():
        print(f"# {variant}: agree={c['agree']} disagree={c['disagree']}")
    for case in report.disagreements("int")[: args.show]:
        print(f"# disagreement: {case.reproducer()}  (k={case.k}, det={case.det_int})")
    return EXIT_OK


def _predict_summary(report) -> dict:
    return {
        "counts": report.counts(),
        "disagreements": {
            v: [{"input": c.label, "p": c.p, "k": c.k, "reproducer": c.reproducer()} for c in report.disagreements(v)]
            for v in ("int", "mod_p")
        },
    }


def _writable_dir(path) -> Path:
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise UsageError(f"cannot create output directory {out}: {exc}") from exc
    if not os.access(out, os.W_OK):
        raise UsageError(f"output directory {out} is not writable")
    return out


def _sweep_config(args, **extra):
    from .experiments import PROFILES

    over = {"parallelism": args.jobs, "out_dir": _writable_dir(args.out)}
    if args.primes:
        over["primes"] = [int(t) for t in args.primes.split(",")]
    if args.d_max is not None:
        over["d_max"] = args.d_max
    if args.max_steps is not None:
        over["max_steps"] = args.max_steps
    over.update(extra)
    try:
        return PROFILES[args.profile](**over)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _print_rows(header, rows) -> None:
    from .experiments import csv_text

    sys.stdout.write(csv_text(header, rows))


def cmd_table(args) -> int:
    from .experiments import TABLE_HEADER, run_table

    rows = run_table(_sweep_config(args))
    _print_rows(TABLE_HEADER, rows)
    return EXIT_OK


def cmd_approx(args) -> int:
    from .experiments import APPROX_HEADER, run_approx

    rows = run_approx(_sweep_config(args))
    _print_rows(APPROX_HEADER, rows)
    return EXIT_OK


def cmd_prep(args) -> int:
    from .experiments import PREP_HEADER, run_preperiod_stats

    rows = run_preperiod_stats(_sweep_config(args, algorithms=(AlgorithmKind.BROWKIN_II,)))
    _print_rows(PREP_HEADER, rows)
    return EXIT_OK


def cmd_figures(args) -> int:
    from .experiments import TABLE_HEADER, sweep, table_rows, write_manifest
    from .figures import emit_figures

    started = time.perf_counter()
    cfg = _sweep_config(args)
    records = sweep(cfg)
    rows = table_rows(records, cfg)
    files = emit_figures(rows, records, cfg.out_dir)
    write_manifest(cfg, "figures", time.perf_counter() - started, files)
    _print_rows(TABLE_HEADER, rows)
    return EXIT_OK


def _jobs_default() -> int:
    env = os.environ.get("PADIC_CF_JOBS")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padic-cf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    algs = [a.value for a in AlgorithmKind]

    ex = sub.add_parser("expand", help="expand one number")
    ex.add_argument("--p", type=int, required=True)
    ex.add_argument("--input", required=True, help="sqrt:<D> | rat:<num>/<den> | quad:<a>,<b>,<c>,<D>")
    ex.add_argument("--alg", choices=algs, default="new")
    ex.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    ex.add_argument("--format", choices=["text", "json", "csv"], default="text")
    ex.set_defaults(func=cmd_expand)

    pr = sub.add_parser("predict", help="check the determinant sign predictor against Browkin II runs")
    pr.add_argument("--p", type=int, required=True)
    pr.add_argument("--input")
    pr.add_argument("--d-max", type=int, help="sweep sqrt(D) for all eligible D <= d-max instead of --input")
    pr.add_argument("--steps", type=int, default=50)
    pr.add_argument("--alg", choices=algs, default="b2")
    pr.add_argument("--out")
    pr.add_argument("--show", type=int, default=10, help="disagreements to print")
    pr.set_defaults(func=cmd_predict)

    for name, func, help_ in [
        ("table", cmd_table, "periodicity table"),
        ("approx", cmd_approx, "mean v_p(B_n) table"),
        ("prep", cmd_prep, "Browkin II pre-period statistics"),
        ("figures", cmd_figures, "SVG figures with backing CSVs"),
    ]:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--profile", choices=["desk", "paper"], default="desk")
        sp.add_argument("--out", default="padic_cf_out")
        sp.add_argument("--jobs", type=int, default=_jobs_default())
        sp.add_argument("--primes", help="comma-separated override, e.g. 5,7")
        sp.add_argument("--d-max", type=int)
        sp.add_argument("--max-steps", type=int)
        sp.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
