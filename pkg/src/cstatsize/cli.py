"""Command-line interface.

Usage:
    cstatsize solve --c 0.7 --phi 0.1 --se 0.02551
    cstatsize solve --c 0.8 --phi 0.018 --ci-width 0.1 --method all --raw
    cstatsize verify --grid
    cstatsize sweep --c-range 0.55:0.95:0.05 --phi-range 0.01:0.5:0.01 --se 0.02551
    cstatsize curves --c 0.6 --phi-list 0.1,0.2,0.3,0.4,0.5 --se-range 0.01:0.05:100
    cstatsize bench --methods all --reps 1000

Exit codes: 0 success, 1 internal error or failed verification, 2 bad usage
or input outside the domain. ``CSTATSIZE_FORMAT`` overrides the default
output format of every subcommand.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import bench as bench_mod
from . import verify as verify_mod
from .core import ConfidenceSpec, DomainError, SolverMethod, ci_width_to_se, validate_inputs
from .oracle import STRATEGIES, CeilingExceededError, n_iterative
from .solvers import DEFAULT_METHOD, solve

FORMAT_ENV = "CSTATSIZE_FORMAT"
IMPLAUSIBLE_N = 1e7


class UsageError(Exception):
    pass


def _real(text: str) -> float:
    # float() is locale-independent: dot decimal separator only
    try:
        return float(text.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _real_list(text: str) -> list[float]:
    return [_real(part) for part in text.split(",") if part.strip()]


def _triple(text: str) -> tuple[str, str, str]:
    parts = text.split(":")
    if len(parts) != 3 or not all(p.strip() for p in parts):
        raise argparse.ArgumentTypeError(f"expected lo:hi:step, got {text!r}")
    for p in parts:
        _real(p)
    return tuple(p.strip() for p in parts)


def _count_range(text: str) -> tuple[float, float, int]:
    lo, hi, count = _triple(text)
    try:
        n = int(count)
    except ValueError:
        raise argparse.ArgumentTypeError(f"count must be an integer, got {count!r}") from None
    return _real(lo), _real(hi), n


def _methods(text: str, closed_only: bool = False) -> list[SolverMethod]:
    if text.strip().lower() == "all":
        return list(SolverMethod.closed_form() if closed_only else SolverMethod)
    methods = []
    for part in text.split(","):
        try:
            methods.append(SolverMethod(part.strip().lower()))
        except ValueError:
            names = ", ".join(m.value for m in SolverMethod)
            raise UsageError(f"method: unknown method {part!r} (choose from {names}, all)") from None
    return methods


def _format(args, allowed: Sequence[str]) -> str:
    if args.format:
        return args.format
    env = os.environ.get(FORMAT_ENV, "").strip().lower()
    return env if env in allowed else allowed[0]


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    if args.se is not None:
        se = args.se
    else:
        se = ci_width_to_se(ConfidenceSpec(args.ci_width, args.level))
    inputs = validate_inputs(args.c, args.phi, se)
    if inputs.c <= 0.5:
        _warn(f"c = {inputs.c} <= 0.5 means the model has no discrimination")

    methods = _methods(args.method)
    results = []
    for m in methods:
        if m is SolverMethod.ITERATIVE:
            results.append(n_iterative(inputs, strategy=args.strategy))
        else:
            results.append(solve(inputs, m))
    if any(r.n_raw > IMPLAUSIBLE_N for r in results):
        _warn(f"required sample size exceeds {IMPLAUSIBLE_N:.0e}; check se_target")

    fmt = _format(args, ("human", "csv", "json"))
    records = [
        {"method": r.method.value, "c": inputs.c, "phi": inputs.phi, "se": inputs.se_target,
         "n_raw": r.n_raw, "n": r.n}
        for r in results
    ]
    if fmt == "json":
        text = verify_mod.dumps(records[0] if len(records) == 1 else records)
    elif fmt == "csv":
        lines = [",".join(verify_mod.CURVE_COLUMNS)]
        for rec in records:
            lines.append(",".join(rec["method"] if k == "method" else verify_mod.fmt_number(rec[k])
                                  for k in verify_mod.CURVE_COLUMNS))
        text = "\n".join(lines) + "\n"
    elif len(results) == 1:
        r = results[0]
        text = f"{r.n}\n" + (f"n_raw = {verify_mod.fmt_number(r.n_raw)}\n" if args.raw else "")
    else:
        lines = [f"{'method':<12} {'n':>10}" + (f"  {'n_raw':<24}" if args.raw else "")]
        for r in results:
            line = f"{r.method.value:<12} {r.n:>10}"
            if args.raw:
                line += f"  {verify_mod.fmt_number(r.n_raw)}"
            lines.append(line)
        text = "\n".join(lines) + "\n"
    _emit(text, None)
    return 0


def cmd_verify(args) -> int:
    fmt = _format(args, ("human", "json"))
    checks = verify_mod.reproduce_table1()
    ok = all(ch.passed for ch in checks)
    grid = None
    if args.grid:
        grid = verify_mod.run_sweep(verify_mod.published_grid(), strategy=args.strategy)
        ok = ok and grid.all_within_one

    if fmt == "json":
        payload = {
            "passed": ok,
            "table1": [
                {"c": ch.inputs.c, "phi": ch.inputs.phi, "se": ch.inputs.se_target,
                 "expected": ch.expected_n,
                 "n": {m.value: n for m, n in ch.n_by_method.items()},
                 "pass": ch.passed}
                for ch in checks
            ],
        }
        if grid is not None:
            payload["grid"] = {
                "points": len(grid.rows),
                "all_within_one": grid.all_within_one,
                "max_pairwise_rel_diff": grid.max_pairwise_rel_diff,
                "failures": [{"c": r.c, "phi": r.phi, "se": r.se,
                              "oracle_abs_diff_max": r.oracle_abs_diff_max}
                             for r in grid.rows if r.oracle_abs_diff_max > 1],
            }
        sys.stdout.write(verify_mod.dumps(payload))
        return 0 if ok else 1

    passed = sum(ch.passed for ch in checks)
    for ch in checks:
        status = "PASS" if ch.passed else "FAIL"
        got = sorted(set(ch.n_by_method.values()))
        print(f"{status}  C={ch.inputs.c:<5} phi={ch.inputs.phi:<6} SE={ch.inputs.se_target:<8} "
              f"expected N={ch.expected_n:<5} got {got}")
        if not ch.passed:
            for m, n in ch.n_by_method.items():
                if n != ch.expected_n:
                    print(f"      {m.value}: {n}")
    print(f"published examples: {passed}/{len(checks)} rows pass")
    if grid is not None:
        bad = [r for r in grid.rows if r.oracle_abs_diff_max > 1]
        print(f"grid: {len(grid.rows)} points, "
              f"{'all' if not bad else len(grid.rows) - len(bad)} within 1 of iterative, "
              f"max pairwise relative difference {grid.max_pairwise_rel_diff:.3g}")
        for r in bad:
            print(f"FAIL  C={r.c} phi={r.phi} SE={r.se} diff={r.oracle_abs_diff_max}")
    return 0 if ok else 1


def _axis(rng, single, name) -> list[float]:
    if rng is not None:
        return verify_mod.grid_values(*rng)
    if single is not None:
        return single
    raise UsageError(f"{name}: give either --{name} or --{name}-range")


def cmd_sweep(args) -> int:
    spec = verify_mod.GridSpec(
        c_values=tuple(_axis(args.c_range, args.c, "c")),
        phi_values=tuple(_axis(args.phi_range, args.phi, "phi")),
        se_values=tuple(_axis(args.se_range, args.se, "se")),
        methods=tuple(_methods(args.methods)),
    )
    report = verify_mod.run_sweep(spec, strategy=args.strategy)
    fmt = _format(args, ("csv", "json"))
    text = report.to_json(args.layout) if fmt == "json" else report.to_csv(args.layout)
    _emit(text, args.out)
    return 0


def cmd_curves(args) -> int:
    points = verify_mod.figure1_curves(
        c=args.c, phi_values=args.phi_list, se_range=args.se_range,
        methods=_methods(args.methods, closed_only=True),
    )
    fmt = _format(args, ("csv", "json"))
    text = verify_mod.curves_to_json(points) if fmt == "json" else verify_mod.curves_to_csv(points)
    _emit(text, args.out)
    return 0


def cmd_bench(args) -> int:
    config = bench_mod.BenchConfig(
        methods=tuple(_methods(args.methods)),
        repetitions=args.reps,
        warmup=args.warmup,
        inputs=validate_inputs(args.c, args.phi, args.se),
        iterative_strategy=args.strategy,
    )
    report = bench_mod.run_bench(config)
    for w in report.warnings:
        _warn(w)
    fmt = _format(args, ("csv", "json"))
    _emit(report.summary_json() if fmt == "json" else report.samples_csv(), args.out)
    if args.summary:
        _emit(report.summary_json(), args.summary)

    for m, t in report.timings.items():
        print(f"{m.value:<12} median {t.median:>12} ns", file=sys.stderr)
    if SolverMethod.ITERATIVE in report.timings:
        for m, ratio in bench_mod.speedup_summary(report, SolverMethod.ITERATIVE).items():
            if m is not SolverMethod.ITERATIVE:
                print(f"{m.value:<12} {ratio:,.0f}x faster than iterative", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cstatsize",
        description="Minimum external-validation sample size for a target SE of the C-statistic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    method_names = ", ".join(m.value for m in SolverMethod)

    p = sub.add_parser("solve", help="sample size for one (C, phi, SE) problem")
    p.add_argument("--c", type=_real, required=True, help="anticipated C-statistic")
    p.add_argument("--phi", type=_real, required=True, help="anticipated outcome event proportion")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--se", type=_real, help="target standard error of C")
    target.add_argument("--ci-width", type=_real, help="target full width of the CI for C")
    p.add_argument("--level", type=_real, default=0.95, help="confidence level for --ci-width")
    p.add_argument("--method", default=DEFAULT_METHOD.value,
                   help=f"one of {method_names}, or all (default: %(default)s)")
    p.add_argument("--raw", action="store_true", help="also print the unrounded root")
    p.add_argument("--strategy", choices=STRATEGIES, default="reference")
    p.add_argument("--format", choices=("human", "csv", "json"))
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="reproduce the published confirmation table")
    p.add_argument("--grid", action="store_true", help="also run the 450-point grid sweep")
    p.add_argument("--strategy", choices=STRATEGIES, default="reference")
    p.add_argument("--format", choices=("human", "json"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="grid sweep over C, phi and SE")
    p.add_argument("--c-range", type=_triple, metavar="LO:HI:STEP")
    p.add_argument("--phi-range", type=_triple, metavar="LO:HI:STEP")
    p.add_argument("--se-range", type=_triple, metavar="LO:HI:STEP")
    p.add_argument("--c", type=_real_list, metavar="V[,V...]")
    p.add_argument("--phi", type=_real_list, metavar="V[,V...]")
    p.add_argument("--se", type=_real_list, metavar="V[,V...]")
    p.add_argument("--methods", default="all")
    p.add_argument("--layout", choices=("wide", "long"), default="wide",
                   help="wide: one row per grid point; long: one row per point and method")
    p.add_argument("--strategy", choices=STRATEGIES, default="reference")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("curves", help="sample size against SE, per method and phi")
    p.add_argument("--c", type=_real, default=0.6)
    p.add_argument("--phi-list", type=_real_list, default=[0.1, 0.2, 0.3, 0.4, 0.5])
    p.add_argument("--se-range", type=_count_range, default=(0.01, 0.05, 100), metavar="LO:HI:COUNT")
    p.add_argument("--methods", default="all", help="closed-form methods (default all seven)")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("bench", help="time single-call latency of each method")
    p.add_argument("--methods", default="all")
    p.add_argument("--reps", type=int, default=1000)
    p.add_argument("--warmup", type=int, default=10)
    p.add_argument("--c", type=_real, default=0.7)
    p.add_argument("--phi", type=_real, default=0.1)
    p.add_argument("--se", type=_real, default=0.02551)
    p.add_argument("--strategy", choices=STRATEGIES, default="reference")
    p.add_argument("--format", choices=("csv", "json"),
                   help="csv: raw samples (method,sample_ns); json: summary")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--summary", help="also write the JSON summary to this file")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CeilingExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
