"""Iterative sample-size search: the first integer N whose SE(C) meets the target.

Three strategies return the same integer:

``reference``
    Evaluates SE(C) at every candidate in ``[start_n, max_n]`` and takes the
    first one meeting the target, like the published R code which always runs
    its full million iterations. This is the ground truth and the benchmark
    baseline.
``scan``
    Plain loop from ``start_n`` that stops at the first qualifying N.
``fast``
    Exponential bracketing then integer bisection; relies on SE(C) being
    strictly decreasing in N.

Comparing SE directly is equivalent to comparing CI widths (width = 2 z SE
with the same z on both sides) and removes any dependence on how z is rounded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DiscriminationInputs, SampleSizeResult, SolverMethod, se_c

STRATEGIES = ("reference", "scan", "fast")


class CeilingExceededError(RuntimeError):
    """No N in the search range reaches the target standard error."""

    def __init__(self, max_n: int, se_at_max: float, se_target: float):
        super().__init__(
            f"no N <= {max_n} reaches SE {se_target!r}; SE at N={max_n} is {se_at_max!r}"
        )
        self.max_n = max_n
        self.se_at_max = se_at_max
        self.se_target = se_target


@dataclass(frozen=True)
class IterativeConfig:
    max_n: int = 1_000_000
    start_n: int = 2

    def __post_init__(self):
        if not 2 <= self.start_n < self.max_n:
            raise ValueError(f"need 2 <= start_n < max_n, got start_n={self.start_n}, max_n={self.max_n}")


DEFAULT_CONFIG = IterativeConfig()


def se_c_array(c: float, phi: float, n: np.ndarray) -> np.ndarray:
    # Same operation order as core.se_c so results are bit-identical.
    half_minus_one = n / 2 - 1
    bracket = 1 + half_minus_one * ((1 - c) / (2 - c)) + half_minus_one * c / (1 + c)
    return np.sqrt(c * (1 - c) * bracket / (n ** 2 * (phi * (1 - phi))))


def _reference(inputs: DiscriminationInputs, config: IterativeConfig) -> int | None:
    candidates = np.arange(config.start_n, config.max_n + 1, dtype=np.float64)
    se = se_c_array(inputs.c, inputs.phi, candidates)
    hits = np.flatnonzero(se <= inputs.se_target)
    if hits.size == 0:
        return None
    return config.start_n + int(hits[0])


def _scan(inputs: DiscriminationInputs, config: IterativeConfig) -> int | None:
    c, phi, target = inputs.c, inputs.phi, inputs.se_target
    for n in range(config.start_n, config.max_n + 1):
        if se_c(c, phi, n) <= target:
            return n
    return None


def _fast(inputs: DiscriminationInputs, config: IterativeConfig) -> int | None:
    c, phi, target = inputs.c, inputs.phi, inputs.se_target
    if se_c(c, phi, config.start_n) <= target:
        return config.start_n
    if se_c(c, phi, config.max_n) > target:
        return None
    # invariant: se(lo) > target >= se(hi)
    lo, step = config.start_n, 1
    hi = min(lo + step, config.max_n)
    while se_c(c, phi, hi) > target:
        lo = hi
        step *= 2
        hi = min(lo + step, config.max_n)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if se_c(c, phi, mid) <= target:
            hi = mid
        else:
            lo = mid
    return hi


_SEARCH = {"reference": _reference, "scan": _scan, "fast": _fast}


def n_iterative(
    inputs: DiscriminationInputs,
    config: IterativeConfig = DEFAULT_CONFIG,
    strategy: str = "reference",
) -> SampleSizeResult:
    try:
        search = _SEARCH[strategy]
    except KeyError:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}") from None
    n = search(inputs, config)
    if n is None:
        raise CeilingExceededError(
            config.max_n, se_c(inputs.c, inputs.phi, config.max_n), inputs.se_target
        )
    return SampleSizeResult(n_raw=float(n), n=n, method=SolverMethod.ITERATIVE, inputs=inputs)
