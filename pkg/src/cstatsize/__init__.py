"""Closed-form minimum sample size for precise estimation of the C-statistic."""

from .core import (
    ConfidenceSpec,
    DiscriminationInputs,
    DomainError,
    SampleSizeResult,
    SolverConsistencyError,
    SolverMethod,
    ci_width_to_se,
    normal_quantile,
    se_c,
    se_c_squared_expanded,
    se_c_squared_simplified,
    validate_inputs,
)
from .oracle import CeilingExceededError, IterativeConfig, n_iterative
from .solvers import (
    CLOSED_FORM,
    DEFAULT_METHOD,
    mathematica_roots,
    n_gemini,
    n_gpt41,
    n_grok3,
    n_mathematica,
    n_mathgpt,
    n_maxima,
    n_sonar,
    round_up,
    solve,
)

__version__ = "0.1.0"


def sample_size(c: float, phi: float, se: float, method: SolverMethod | str = DEFAULT_METHOD) -> int:
    """Rounded-up sample size for anticipated ``c``, ``phi`` and target SE."""
    return solve(validate_inputs(c, phi, se), SolverMethod(method)).n
