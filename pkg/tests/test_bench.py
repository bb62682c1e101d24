import csv
import io
import json

import pytest

from cstatsize.bench import (
    BenchConfig,
    BenchReport,
    MethodTiming,
    nearest_rank,
    run_bench,
    speedup_summary,
)
from cstatsize.core import SolverMethod


@pytest.mark.parametrize(
    "p, expected",
    [(0.0, 1), (0.25, 3), (0.5, 5), (0.75, 8), (1.0, 10), (0.51, 6)],
)
def test_nearest_rank(p, expected):
    assert nearest_rank(list(range(1, 11)), p) == expected


@pytest.mark.parametrize("kwargs", [dict(repetitions=99), dict(warmup=9), dict(methods=())])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        BenchConfig(**kwargs)


def test_minimum_single_method_run():
    report = run_bench(BenchConfig(methods=(SolverMethod.MATHGPT,), repetitions=100))
    timing = report.timings[SolverMethod.MATHGPT]
    assert len(timing.samples) == 100
    assert timing.min <= timing.q1 <= timing.median <= timing.q3 <= timing.max
    assert timing.min <= timing.mean <= timing.max
    assert all(isinstance(s, int) and s >= 0 for s in timing.samples)
    assert report.host


def test_all_closed_methods_and_exports():
    config = BenchConfig(methods=SolverMethod.closed_form(), repetitions=200)
    report = run_bench(config)
    assert list(report.timings) == list(SolverMethod.closed_form())
    rows = list(csv.reader(io.StringIO(report.samples_csv())))
    assert rows[0] == ["method", "sample_ns"]
    assert len(rows) == 1 + 7 * 200
    summary = json.loads(report.summary_json())
    assert summary["repetitions"] == 200 and summary["warmup"] == 10
    assert set(summary["methods"]) == {m.value for m in SolverMethod.closed_form()}
    for stats in summary["methods"].values():
        assert stats["min"] <= stats["q1"] <= stats["median"] <= stats["q3"] <= stats["max"]
    assert "host" in summary


def _report(medians):
    timings = {m: MethodTiming.from_samples(m, [v] * 3) for m, v in medians.items()}
    return BenchReport(config=BenchConfig(), timings=timings, host="test")


def test_speedup_summary():
    report = _report({SolverMethod.ITERATIVE: 1_000_000, SolverMethod.MATHGPT: 400})
    ratios = speedup_summary(report, SolverMethod.ITERATIVE)
    assert ratios[SolverMethod.ITERATIVE] == 1
    assert ratios[SolverMethod.MATHGPT] == 2500
    swapped = speedup_summary(report, SolverMethod.MATHGPT)
    assert swapped[SolverMethod.ITERATIVE] == pytest.approx(1 / ratios[SolverMethod.MATHGPT])


def test_speedup_missing_baseline():
    with pytest.raises(KeyError):
        speedup_summary(_report({SolverMethod.MATHGPT: 400}), SolverMethod.ITERATIVE)


def test_iterative_benchmarked_through_oracle():
    config = BenchConfig(methods=(SolverMethod.ITERATIVE,), repetitions=100, iterative_strategy="fast")
    report = run_bench(config)
    assert len(report.timings[SolverMethod.ITERATIVE].samples) == 100
