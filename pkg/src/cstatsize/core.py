"""Domain types, input validation and the forward Newcombe standard error of C."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class DomainError(ValueError):
    """An input lies outside the domain where the formulas are defined."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class SolverConsistencyError(ArithmeticError):
    """A computation produced a value that cannot occur on the valid domain."""


class SolverMethod(str, enum.Enum):
    MATHEMATICA = "mathematica"
    MAXIMA = "maxima"
    SONAR = "sonar"
    GPT41 = "gpt41"
    GROK3_BETA = "grok3"
    GEMINI25_PRO = "gemini"
    MATHGPT = "mathgpt"
    ITERATIVE = "iterative"

    @property
    def is_closed_form(self) -> bool:
        return self is not SolverMethod.ITERATIVE

    @classmethod
    def closed_form(cls) -> tuple[SolverMethod, ...]:
        return tuple(m for m in cls if m.is_closed_form)

    @classmethod
    def parse(cls, text: str) -> SolverMethod:
        try:
            return cls(text.strip().lower())
        except ValueError:
            names = ", ".join(m.value for m in cls)
            raise DomainError("method", f"unknown method {text!r} (choose from {names})") from None


def _require_finite(field: str, value: float) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DomainError(field, f"expected a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(field, f"must be finite, got {value!r}")
    return value


def _require_open_unit(field: str, value: float) -> float:
    value = _require_finite(field, value)
    if not 0.0 < value < 1.0:
        raise DomainError(field, f"must satisfy 0 < {field} < 1, got {value!r}")
    return value


@dataclass(frozen=True)
class DiscriminationInputs:
    """Anticipated C-statistic, outcome event proportion and target SE(C)."""

    c: float
    phi: float
    se_target: float

    def __post_init__(self):
        object.__setattr__(self, "c", _require_open_unit("c", self.c))
        object.__setattr__(self, "phi", _require_open_unit("phi", self.phi))
        se = _require_finite("se_target", self.se_target)
        if not se > 0.0:
            raise DomainError("se_target", f"must satisfy se_target > 0, got {se!r}")
        object.__setattr__(self, "se_target", se)


@dataclass(frozen=True)
class SampleSizeResult:
    n_raw: float
    n: int
    method: SolverMethod
    inputs: DiscriminationInputs


@dataclass(frozen=True)
class ConfidenceSpec:
    """Full width of a two-sided normal-approximation interval for C."""

    ci_width: float
    level: float = 0.95

    def __post_init__(self):
        object.__setattr__(self, "ci_width", _require_open_unit("ci_width", self.ci_width))
        object.__setattr__(self, "level", _require_open_unit("level", self.level))


def validate_inputs(c: float, phi: float, se_target: float) -> DiscriminationInputs:
    return DiscriminationInputs(c, phi, se_target)


def check_finite(name: str, value: float) -> float:
    if not math.isfinite(value):
        raise SolverConsistencyError(f"{name} is not finite ({value!r})")
    return value


def _check_n(n: float) -> float:
    n = _require_finite("n", n)
    if not n > 0.0:
        raise DomainError("n", f"must satisfy n > 0, got {n!r}")
    return n


def se_c(c: float, phi: float, n: float) -> float:
    """Newcombe standard error of the C-statistic for a sample of size ``n``.

    >>> round(se_c(0.7, 0.1, 1153.03), 5)
    0.02551
    """
    c = _require_open_unit("c", c)
    phi = _require_open_unit("phi", phi)
    n = _check_n(n)
    half_minus_one = n / 2 - 1
    bracket = 1 + half_minus_one * ((1 - c) / (2 - c)) + half_minus_one * c / (1 + c)
    radicand = c * (1 - c) * bracket / (n ** 2 * (phi * (1 - phi)))
    return check_finite("se_c", math.sqrt(radicand))


def se_c_squared_simplified(c: float, phi: float, n: float) -> float:
    """Squared SE(C) in the form with fractions cleared from the numerator."""
    c = _require_open_unit("c", c)
    phi = _require_open_unit("phi", phi)
    n = _check_n(n)
    numerator = (c - 1) * c * (2 * (c - 1) * c * (n - 1) - (n + 2))
    denominator = 2 * (c - 2) * (c + 1) * n ** 2 * (phi - 1) * phi
    return check_finite("se_c_squared_simplified", numerator / denominator)


def se_c_squared_expanded(c: float, phi: float, n: float) -> float:
    """Same as :func:`se_c_squared_simplified` with the inner factor multiplied out."""
    c = _require_open_unit("c", c)
    phi = _require_open_unit("phi", phi)
    n = _check_n(n)
    numerator = (c - 1) * c * (2 * c ** 2 * n - 2 * c * n - n - 2 * c ** 2 + 2 * c - 2)
    denominator = 2 * (c - 2) * (c + 1) * n ** 2 * (phi - 1) * phi
    return check_finite("se_c_squared_expanded", numerator / denominator)


# Acklam's rational approximation to the standard normal quantile.
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def normal_quantile(p: float) -> float:
    """Inverse standard normal CDF.

    The rational approximation (relative error about 1e-9) is followed by one
    Halley step against ``math.erfc``, which brings it to double precision.
    """
    p = _require_open_unit("p", p)
    if p < _P_LOW:
        q = math.sqrt(-2 * math.log(p))
        x = (((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / \
            ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1)
    elif p <= 1 - _P_LOW:
        q = p - 0.5
        r = q * q
        x = (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q / \
            (((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1)
    else:
        q = math.sqrt(-2 * math.log1p(-p))
        x = -(((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / \
            ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1)

    # refine against the CDF; work in the lower tail to keep erfc accurate
    if p > 0.5:
        return -_halley(1 - p, -x)
    return _halley(p, x)


def _halley(p: float, x: float) -> float:
    e = 0.5 * math.erfc(-x / math.sqrt(2)) - p
    u = e * math.sqrt(2 * math.pi) * math.exp(x * x / 2)
    return x - u / (1 + x * u / 2)


def ci_width_to_se(spec: ConfidenceSpec) -> float:
    """Standard error whose symmetric normal interval has the requested width."""
    z = normal_quantile((1 + spec.level) / 2)
    return spec.ci_width / (2 * z)
