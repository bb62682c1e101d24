"""Closed-form inversions of Newcombe's SE(C) formula for the sample size N.

Each function below is an independent transcription of one published form of
the positive root. They deliberately share no helpers: the equivalence tests
across methods only mean something if every form is coded on its own. Local
variable names follow the symbols used by each derivation, so ``alpha`` in
one function has nothing to do with ``alpha`` in another.
"""

from __future__ import annotations

import math
from typing import Callable

from .core import (
    DiscriminationInputs,
    SampleSizeResult,
    SolverConsistencyError,
    SolverMethod,
)

SNAP_TOLERANCE = 1e-9


def _checked_root(name: str, n_raw: float) -> float:
    if not math.isfinite(n_raw) or n_raw <= 0.0:
        raise SolverConsistencyError(f"{name} produced a non-positive or non-finite root: {n_raw!r}")
    return n_raw


def _checked_radicand(name: str, value: float) -> float:
    if not math.isfinite(value) or value < 0.0:
        raise SolverConsistencyError(f"{name}: negative or non-finite radicand {value!r}")
    return value


def n_mathematica(inputs: DiscriminationInputs) -> float:
    C, phi, se = inputs.c, inputs.phi, inputs.se_target
    se2 = se ** 2
    alpha = C - 1
    beta = 16 * (-2 + C - 2 * C ** 3 + C ** 4) * se2 * phi
    mu = C * alpha
    delta = C + C ** 2 - 4 * C ** 3 + 2 * C ** 4
    radicand = _checked_radicand("mathematica", mu * (beta + (1 - 2 * mu) ** 2 * mu - beta * phi))
    denominator = 4 * se2 * (alpha - 1) * (alpha + 2) * (phi - 1) * phi
    return _checked_root("mathematica", (delta + math.sqrt(radicand)) / denominator)


def mathematica_roots(inputs: DiscriminationInputs) -> tuple[float, float]:
    """Both roots of the squared equation as first returned by Mathematica.

    Diagnostic only: the first (minus-branch) root is negative on the valid
    domain and is rejected by :func:`n_mathematica`. Returned as
    ``(rejected, accepted)``.
    """
    C, phi, se = inputs.c, inputs.phi, inputs.se_target
    se2 = se ** 2
    Z = math.sqrt(
        (C - 1) * C * (
            (C - 1) * C * (1 - 2 * (C - 1) * C) ** 2
            + 16 * se2 * (-2 + C - 2 * C ** 3 + C ** 4) * phi * (1 - phi)
        )
    )
    head = C + C ** 2 - 4 * C ** 3 + 2 * C ** 4
    denominator = 4 * se2 * (C - 2) * (C + 1) * (phi - 1) * phi
    return (head - Z) / denominator, (head + Z) / denominator


def n_maxima(inputs: DiscriminationInputs) -> float:
    C, phi, se = inputs.c, inputs.phi, inputs.se_target
    w = 16 * C * (C - 1) * (C - 2) * (C + 1) * (C ** 2 - C + 1)
    x = phi * se ** 2
    y = C * (C - 1) * (2 * C ** 2 - 2 * C - 1)
    radicand = _checked_radicand("maxima", -(w * x * phi) + y ** 2 + w * x)
    return _checked_root("maxima", (y + math.sqrt(radicand)) / (4 * (C - 2) * (C + 1) * x * (phi - 1)))


def n_sonar(inputs: DiscriminationInputs) -> float:
    C, phi, se = inputs.c, inputs.phi, inputs.se_target
    D = 4 * se ** 2 * phi * (1 - phi)
    alpha = (1 - C) / (2 - C)
    beta = C / (1 + C)
    lead = C * (1 - C) * (alpha + beta)
    radicand = _checked_radicand("sonar", lead ** 2 + 4 * D * C * (1 - C) * (1 - (alpha + beta)))
    return _checked_root("sonar", (lead + math.sqrt(radicand)) / D)


def n_gpt41(inputs: DiscriminationInputs) -> float:
    C, phi, se = inputs.c, inputs.phi, inputs.se_target
    gamma = (1 - C) / (2 - C) + C / (1 + C)
    half_term = C * (1 - C) * gamma / 2
    radicand = _checked_radicand(
        "gpt41", half_term ** 2 + 4 * se ** 2 * phi * (1 - phi) * C * (1 - C) * (1 - gamma)
    )
    return _checked_root("gpt41", (half_term + math.sqrt(radicand)) / (2 * se ** 2 * phi * (1 - phi)))


def n_grok3(inputs: DiscriminationInputs) -> float:
    C, phi, se = inputs.c, inputs.phi, inputs.se_target
    D = 4 * se ** 2 * phi * (1 - phi)
    gamma = (1 - C) / (2 - C) + C / (1 + C)
    inner = _checked_radicand("grok3", C * (1 - C) * gamma ** 2 - 4 * D * (gamma - 1))
    return _checked_root(
        "grok3", (math.sqrt(C * (1 - C)) * math.sqrt(inner) + C * (1 - C) * gamma) / D
    )


def n_gemini(inputs: DiscriminationInputs) -> float:
    C, phi, se = inputs.c, inputs.phi, inputs.se_target
    alpha = se ** 2 * phi * (1 - phi)
    beta = (1 + 2 * C - 2 * C ** 2) / ((2 - C) * (1 + C))
    gamma = C * (1 - C)
    radicand = _checked_radicand("gemini", gamma ** 2 * beta ** 2 + 16 * alpha * gamma * (1 - beta))
    return _checked_root("gemini", (gamma * beta + math.sqrt(radicand)) / (4 * alpha))


def mathgpt_terms(inputs: DiscriminationInputs) -> tuple[float, float]:
    """``(A, delta)`` of the quadratic ``N**2 - (A*delta/2) N - A(1 - delta) = 0``."""
    C, phi, se = inputs.c, inputs.phi, inputs.se_target
    delta = (1 - C) / (2 - C) + C / (1 + C)
    A = C * (1 - C) / (se ** 2 * phi * (1 - phi))
    return A, delta


def n_mathgpt(inputs: DiscriminationInputs) -> float:
    A, delta = mathgpt_terms(inputs)
    # delta lies in (1/2, 2/3] on 0 < C < 1, so 16A(1 - delta) > 0
    if not 0.5 < delta <= 2 / 3 + 1e-15:
        raise SolverConsistencyError(f"mathgpt: delta={delta!r} outside (1/2, 2/3]")
    linear = 16 * A * (1 - delta)
    if not linear > 0.0:
        raise SolverConsistencyError(f"mathgpt: 16A(1-delta)={linear!r} is not positive")
    root = math.sqrt(_checked_radicand("mathgpt", A ** 2 * delta ** 2 + linear))
    numerator = A * delta + root
    if not numerator >= A * delta:
        raise SolverConsistencyError("mathgpt: numerator smaller than A*delta")
    return _checked_root("mathgpt", numerator / 4)


CLOSED_FORM: dict[SolverMethod, Callable[[DiscriminationInputs], float]] = {
    SolverMethod.MATHEMATICA: n_mathematica,
    SolverMethod.MAXIMA: n_maxima,
    SolverMethod.SONAR: n_sonar,
    SolverMethod.GPT41: n_gpt41,
    SolverMethod.GROK3_BETA: n_grok3,
    SolverMethod.GEMINI25_PRO: n_gemini,
    SolverMethod.MATHGPT: n_mathgpt,
}

DEFAULT_METHOD = SolverMethod.MATHGPT


def round_up(n_raw: float) -> int:
    """Ceiling of ``n_raw``, snapping values within 1e-9 of an integer onto it."""
    nearest = round(n_raw)
    if abs(n_raw - nearest) <= SNAP_TOLERANCE:
        return int(nearest)
    return math.ceil(n_raw)


def solve(inputs: DiscriminationInputs, method: SolverMethod = DEFAULT_METHOD) -> SampleSizeResult:
    """Minimum sample size for ``inputs`` using ``method``.

    ``SolverMethod.ITERATIVE`` is delegated to :func:`cstatsize.oracle.n_iterative`
    with its default configuration.
    """
    method = SolverMethod(method)
    if method is SolverMethod.ITERATIVE:
        from .oracle import n_iterative

        return n_iterative(inputs)
    n_raw = CLOSED_FORM[method](inputs)
    return SampleSizeResult(n_raw=n_raw, n=round_up(n_raw), method=method, inputs=inputs)
