"""Reproduction drivers: published confirmation table, grid sweep, curve data."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

from .core import DiscriminationInputs, DomainError, SolverMethod, validate_inputs
from .oracle import DEFAULT_CONFIG, IterativeConfig, n_iterative
from .solvers import CLOSED_FORM, round_up

# (c, phi, se, N) for the published illustrative examples,
# SE taken from their supporting information (0.02551, not 0.0255).
TABLE1_ROWS: tuple[tuple[float, float, float, int], ...] = (
    (0.7, 0.1, 0.02551, 1154),
    (0.8, 0.5, 0.02551, 302),
    (0.8, 0.018, 0.02551, 4252),
    (0.75, 0.018, 0.02551, 5125),
    (0.85, 0.018, 0.02551, 3271),
)

CURVE_COLUMNS = ("method", "c", "phi", "se", "n_raw", "n")


def fmt_number(x: float | int) -> str:
    """17 significant digits for floats so values round-trip exactly."""
    if isinstance(x, int):
        return str(x)
    return format(x, ".17g")


def grid_values(lo: float | str, hi: float | str, step: float | str) -> list[float]:
    """Values ``lo + i*step`` for integer ``i`` up to ``hi`` inclusive.

    Arithmetic is done in decimal on the shortest repr of each bound, so
    ``grid_values(0.01, 0.5, 0.01)`` gives exactly the literals 0.01 ... 0.5.
    """
    lo_d, hi_d, step_d = (Decimal(str(v)) for v in (lo, hi, step))
    if not step_d > 0:
        raise DomainError("step", f"must be positive, got {step}")
    if hi_d < lo_d:
        raise DomainError("range", f"upper bound {hi} is below lower bound {lo}")
    count = int((hi_d - lo_d) / step_d) + 1
    return [float(lo_d + i * step_d) for i in range(count)]


def linspace_values(lo: float, hi: float, count: int) -> list[float]:
    if count < 2:
        raise DomainError("count", f"must be at least 2, got {count}")
    if not hi > lo:
        raise DomainError("range", f"need lo < hi, got ({lo}, {hi})")
    width = hi - lo
    return [lo + i * width / (count - 1) for i in range(count - 1)] + [hi]


@dataclass(frozen=True)
class GridSpec:
    c_values: tuple[float, ...]
    phi_values: tuple[float, ...]
    se_values: tuple[float, ...]
    methods: tuple[SolverMethod, ...] = tuple(SolverMethod)

    def __post_init__(self):
        for name in ("c_values", "phi_values", "se_values", "methods"):
            values = tuple(getattr(self, name))
            if not values:
                raise DomainError(name, "must not be empty")
            if len(set(values)) != len(values):
                raise DomainError(name, "contains duplicates")
            object.__setattr__(self, name, values)
        object.__setattr__(self, "methods", tuple(SolverMethod(m) for m in self.methods))
        # reject out-of-domain points before any work is done
        for c in self.c_values:
            validate_inputs(c, self.phi_values[0], self.se_values[0])
        for phi in self.phi_values:
            validate_inputs(self.c_values[0], phi, self.se_values[0])
        for se in self.se_values:
            validate_inputs(self.c_values[0], self.phi_values[0], se)

    def points(self) -> Iterable[DiscriminationInputs]:
        for c in self.c_values:
            for phi in self.phi_values:
                for se in self.se_values:
                    yield DiscriminationInputs(c, phi, se)


def published_grid(methods: Sequence[SolverMethod] = tuple(SolverMethod)) -> GridSpec:
    """The 9 x 50 grid: C 0.55..0.95 by 0.05, phi 0.01..0.50 by 0.01, SE 0.02551."""
    return GridSpec(
        c_values=tuple(grid_values("0.55", "0.95", "0.05")),
        phi_values=tuple(grid_values("0.01", "0.50", "0.01")),
        se_values=(0.02551,),
        methods=tuple(methods),
    )


@dataclass(frozen=True)
class SweepRow:
    c: float
    phi: float
    se: float
    n_by_method: dict[SolverMethod, int]
    n_raw_by_method: dict[SolverMethod, float]
    n_raw_max_rel_diff: float
    oracle_abs_diff_max: int | None


@dataclass(frozen=True)
class SweepReport:
    spec: GridSpec
    rows: list[SweepRow]
    all_within_one: bool
    max_pairwise_rel_diff: float

    def to_csv(self, layout: str = "wide") -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        methods = self.spec.methods
        if layout == "long":
            writer.writerow(CURVE_COLUMNS)
            for row in self.rows:
                for m in methods:
                    writer.writerow([m.value, fmt_number(row.c), fmt_number(row.phi),
                                     fmt_number(row.se), fmt_number(row.n_raw_by_method[m]),
                                     row.n_by_method[m]])
        elif layout == "wide":
            writer.writerow(["c", "phi", "se", *(f"n_{m.value}" for m in methods),
                             "n_raw_max_rel_diff", "oracle_abs_diff_max"])
            for row in self.rows:
                diff = "" if row.oracle_abs_diff_max is None else row.oracle_abs_diff_max
                writer.writerow([fmt_number(row.c), fmt_number(row.phi), fmt_number(row.se),
                                 *(row.n_by_method[m] for m in methods),
                                 fmt_number(row.n_raw_max_rel_diff), diff])
        else:
            raise ValueError(f"unknown layout {layout!r}")
        return buf.getvalue()

    def to_json(self, layout: str = "wide") -> str:
        if layout == "long":
            records = [
                {"method": m.value, "c": row.c, "phi": row.phi, "se": row.se,
                 "n_raw": row.n_raw_by_method[m], "n": row.n_by_method[m]}
                for row in self.rows for m in self.spec.methods
            ]
        elif layout == "wide":
            records = [
                {"c": row.c, "phi": row.phi, "se": row.se,
                 "n": {m.value: row.n_by_method[m] for m in self.spec.methods},
                 "n_raw_max_rel_diff": row.n_raw_max_rel_diff,
                 "oracle_abs_diff_max": row.oracle_abs_diff_max}
                for row in self.rows
            ]
        else:
            raise ValueError(f"unknown layout {layout!r}")
        return dumps(records)


def _max_rel_diff(values: Sequence[float]) -> float:
    worst = 0.0
    for a, b in combinations(values, 2):
        worst = max(worst, abs(a - b) / max(abs(a), abs(b)))
    return worst


def _evaluate(point: DiscriminationInputs, methods: Sequence[SolverMethod],
              config: IterativeConfig, strategy: str) -> SweepRow:
    n_by_method: dict[SolverMethod, int] = {}
    n_raw_by_method: dict[SolverMethod, float] = {}
    for m in methods:
        if m is SolverMethod.ITERATIVE:
            result = n_iterative(point, config, strategy)
            n_raw, n = result.n_raw, result.n
        else:
            n_raw = CLOSED_FORM[m](point)
            n = round_up(n_raw)
        n_by_method[m] = n
        n_raw_by_method[m] = n_raw

    closed = [n_raw_by_method[m] for m in methods if m.is_closed_form]
    oracle_diff = None
    if SolverMethod.ITERATIVE in n_by_method:
        n_iter = n_by_method[SolverMethod.ITERATIVE]
        oracle_diff = max((abs(n_by_method[m] - n_iter) for m in methods if m.is_closed_form), default=0)
    return SweepRow(point.c, point.phi, point.se_target, n_by_method, n_raw_by_method,
                    _max_rel_diff(closed), oracle_diff)


def run_sweep(spec: GridSpec, config: IterativeConfig = DEFAULT_CONFIG,
              strategy: str = "reference") -> SweepReport:
    """Evaluate every grid point with every method, in c, phi, se order.

    ``all_within_one`` is vacuously true when the iterative method is not in
    ``spec.methods``.
    """
    rows = [_evaluate(p, spec.methods, config, strategy) for p in spec.points()]
    within = all(r.oracle_abs_diff_max is None or r.oracle_abs_diff_max <= 1 for r in rows)
    worst = max(r.n_raw_max_rel_diff for r in rows)
    return SweepReport(spec=spec, rows=rows, all_within_one=within, max_pairwise_rel_diff=worst)


@dataclass(frozen=True)
class Table1Check:
    inputs: DiscriminationInputs
    expected_n: int
    n_by_method: dict[SolverMethod, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(n == self.expected_n for n in self.n_by_method.values())


def reproduce_table1(methods: Sequence[SolverMethod] = tuple(SolverMethod)) -> list[Table1Check]:
    checks = []
    for c, phi, se, expected in TABLE1_ROWS:
        inputs = validate_inputs(c, phi, se)
        row = _evaluate(inputs, methods, DEFAULT_CONFIG, "reference")
        checks.append(Table1Check(inputs, expected, row.n_by_method))
    return checks


@dataclass(frozen=True)
class CurvePoint:
    method: SolverMethod
    c: float
    phi: float
    se: float
    n_raw: float
    n: int


def figure1_curves(
    c: float = 0.6,
    phi_values: Sequence[float] = (0.1, 0.2, 0.3, 0.4, 0.5),
    se_range: tuple[float, float, int] = (0.01, 0.05, 100),
    methods: Sequence[SolverMethod] = SolverMethod.closed_form(),
) -> list[CurvePoint]:
    """Sample size against target SE for each method and outcome proportion.

    Rows are ordered method, then phi, then increasing SE.
    """
    lo, hi, count = se_range
    se_values = linspace_values(lo, hi, int(count))
    points = []
    for m in methods:
        m = SolverMethod(m)
        if not m.is_closed_form:
            raise DomainError("methods", "curves are drawn for closed-form methods only")
        solver = CLOSED_FORM[m]
        for phi in phi_values:
            for se in se_values:
                n_raw = solver(validate_inputs(c, phi, se))
                points.append(CurvePoint(m, c, phi, se, n_raw, round_up(n_raw)))
    return points


def curves_to_csv(points: Sequence[CurvePoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CURVE_COLUMNS)
    for p in points:
        writer.writerow([p.method.value, fmt_number(p.c), fmt_number(p.phi), fmt_number(p.se),
                         fmt_number(p.n_raw), p.n])
    return buf.getvalue()


def curves_to_json(points: Sequence[CurvePoint]) -> str:
    return dumps([
        {"method": p.method.value, "c": p.c, "phi": p.phi, "se": p.se, "n_raw": p.n_raw, "n": p.n}
        for p in points
    ])


def _encode(obj) -> str:
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"cannot serialise non-finite number {obj!r}")
        return fmt_number(obj)
    if isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k.value if isinstance(k, Enum) else str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    """JSON text with floats written at 17 significant digits."""
    return _encode(obj) + "\n"
