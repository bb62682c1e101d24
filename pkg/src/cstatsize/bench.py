"""Single-call latency benchmark of the sample-size methods."""

from __future__ import annotations

import csv
import io
import math
import platform
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .core import DiscriminationInputs, SolverMethod, validate_inputs
from .oracle import DEFAULT_CONFIG, IterativeConfig, n_iterative
from .solvers import CLOSED_FORM
from .verify import dumps

DEFAULT_INPUTS = validate_inputs(0.7, 0.1, 0.02551)


class ClockError(RuntimeError):
    pass


@dataclass(frozen=True)
class BenchConfig:
    methods: tuple[SolverMethod, ...] = tuple(SolverMethod)
    repetitions: int = 1000
    warmup: int = 10
    inputs: DiscriminationInputs = DEFAULT_INPUTS
    iterative: IterativeConfig = DEFAULT_CONFIG
    iterative_strategy: str = "reference"

    def __post_init__(self):
        object.__setattr__(self, "methods", tuple(SolverMethod(m) for m in self.methods))
        if not self.methods:
            raise ValueError("methods must not be empty")
        if self.repetitions < 100:
            raise ValueError(f"repetitions must be >= 100, got {self.repetitions}")
        if self.warmup < 10:
            raise ValueError(f"warmup must be >= 10, got {self.warmup}")


def nearest_rank(sorted_samples: Sequence[int], p: float) -> int:
    """Nearest-rank quantile: the ceil(p*n)-th smallest sample (1-based)."""
    n = len(sorted_samples)
    rank = max(1, math.ceil(p * n))
    return sorted_samples[rank - 1]


@dataclass(frozen=True)
class MethodTiming:
    method: SolverMethod
    samples: list[int]
    min: int
    q1: int
    median: int
    q3: int
    max: int
    mean: float

    @classmethod
    def from_samples(cls, method: SolverMethod, samples: list[int]) -> MethodTiming:
        ordered = sorted(samples)
        return cls(
            method=method,
            samples=samples,
            min=ordered[0],
            q1=nearest_rank(ordered, 0.25),
            median=nearest_rank(ordered, 0.5),
            q3=nearest_rank(ordered, 0.75),
            max=ordered[-1],
            mean=statistics.fmean(ordered),
        )


@dataclass
class BenchReport:
    config: BenchConfig
    timings: dict[SolverMethod, MethodTiming]
    host: str
    warnings: list[str] = field(default_factory=list)

    def samples_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["method", "sample_ns"])
        for method, timing in self.timings.items():
            for ns in timing.samples:
                writer.writerow([method.value, ns])
        return buf.getvalue()

    def summary(self) -> dict:
        return {
            "repetitions": self.config.repetitions,
            "warmup": self.config.warmup,
            "inputs": {"c": self.config.inputs.c, "phi": self.config.inputs.phi,
                       "se": self.config.inputs.se_target},
            "host": self.host,
            "warnings": list(self.warnings),
            "methods": {
                m.value: {"min": t.min, "q1": t.q1, "median": t.median, "q3": t.q3,
                          "max": t.max, "mean": t.mean}
                for m, t in self.timings.items()
            },
        }

    def summary_json(self) -> str:
        return dumps(self.summary())


def host_descriptor() -> str:
    return (f"{platform.platform()}; {platform.processor() or platform.machine()}; "
            f"{platform.python_implementation()} {platform.python_version()}")


def method_callable(method: SolverMethod, config: BenchConfig) -> Callable[[DiscriminationInputs], float]:
    if method is SolverMethod.ITERATIVE:
        iterative, strategy = config.iterative, config.iterative_strategy
        return lambda inputs: n_iterative(inputs, iterative, strategy).n_raw
    return CLOSED_FORM[method]


def _time_calls(fn: Callable, inputs: DiscriminationInputs, reps: int, sink: list) -> list[int]:
    clock = time.perf_counter_ns
    samples = [0] * reps
    for i in range(reps):
        start = clock()
        value = fn(inputs)
        stop = clock()
        sink[0] = value
        samples[i] = stop - start
    return samples


def run_bench(config: BenchConfig) -> BenchReport:
    """Time each method's single-call latency in nanoseconds.

    Every timed result goes into a sink and is compared with an untimed call,
    so timing never alters the computation being measured.
    """
    info = time.get_clock_info("perf_counter")
    if not info.monotonic:
        raise ClockError("perf_counter is not monotonic on this host")
    warnings = []
    if info.resolution > 1e-6:
        warnings.append(f"clock resolution {info.resolution:g} s is coarser than 1 us")

    timings = {}
    for method in config.methods:
        fn = method_callable(method, config)
        expected = fn(config.inputs)
        sink = [None]
        _time_calls(fn, config.inputs, config.warmup, sink)
        samples = _time_calls(fn, config.inputs, config.repetitions, sink)
        if sink[0] != expected:
            raise RuntimeError(f"{method.value}: timed result {sink[0]!r} != untimed {expected!r}")
        timings[method] = MethodTiming.from_samples(method, samples)
    return BenchReport(config=config, timings=timings, host=host_descriptor(), warnings=warnings)


def speedup_summary(report: BenchReport, baseline: SolverMethod) -> dict[SolverMethod, float]:
    """Ratio of the baseline median latency to every method's median."""
    baseline = SolverMethod(baseline)
    if baseline not in report.timings:
        raise KeyError(f"baseline {baseline.value!r} is not in the report")
    base = report.timings[baseline].median
    return {m: base / t.median if t.median else math.inf for m, t in report.timings.items()}
