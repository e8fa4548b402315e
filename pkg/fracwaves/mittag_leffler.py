"""
One-parameter Mittag-Leffler function E_a(z) = sum_n z^n / Gamma(a n + 1), 0 < a <= 1.

E_a(i kappa t^a) is the exact Fourier-mode propagator of D_t^a u_hat = i kappa u_hat,
u_hat(0) = 1, for a Caputo derivative starting at t = 0.

Two regimes:

* Taylor summation, used for |z| <= series_radius when the sum is well conditioned.
* The contour representation obtained from the Hankel integral with zeta = t^a:
  two rays at arg zeta = +/- delta, a circle of radius eps joining them, and the
  residue exp(z^(1/a)) / a whenever z lies inside the sector |arg z| < delta.
"""
import cmath
import logging
import math
import warnings
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator
from scipy.integrate import IntegrationWarning, quad

from fracwaves.CONSTANTS import (
    LANCZOS_COEFFICIENTS,
    LANCZOS_G,
    ML_MAX_TERMS,
    ML_QUAD_LIMIT,
    ML_SERIES_ACCEPT,
    ML_SERIES_RADIUS,
    ML_SERIES_TOL,
    ML_TARGET_TOL,
)
from fracwaves.dispersion import DispersionModel, FractionalOrder, as_order, spatial_symbol
from fracwaves.utils import ComplexValue, ConvergenceError, DomainError

_EPS = np.finfo(float).eps
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
# accuracy contract radius; beyond it results are best effort
_CONTRACT_RADIUS = 50.0


class Regime(str, Enum):
    EXACT = "exact"
    TAYLOR = "taylor"
    CONTOUR = "contour"


class MLParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    series_radius: float = ML_SERIES_RADIUS
    series_tol: float = ML_SERIES_TOL
    max_terms: int = ML_MAX_TERMS
    target_tol: float = ML_TARGET_TOL

    @field_validator("series_radius")
    def check_radius(cls, value):
        if value <= 0.0:
            raise ValueError(f"series_radius must be positive, got {value}")
        return value

    @field_validator("series_tol", "target_tol")
    def check_tolerance(cls, value):
        if not 0.0 < value < 1.0:
            raise ValueError(f"tolerance must lie in (0, 1), got {value}")
        return value

    @field_validator("max_terms")
    def check_terms(cls, value):
        if value < 10:
            raise ValueError(f"max_terms must be at least 10, got {value}")
        return value


class MLResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: ComplexValue
    error_estimate: float
    regime: Regime


def _lanczos_series(z: np.ndarray) -> np.ndarray:
    series = np.full_like(z, LANCZOS_COEFFICIENTS[0])
    for i, coefficient in enumerate(LANCZOS_COEFFICIENTS[1:], start=1):
        series = series + coefficient / (z + i)
    return series


def log_gamma(x: float | np.ndarray) -> float | np.ndarray:
    """
    Lanczos approximation of log Gamma(x) for x > 0.

    Args:
        x (float | np.ndarray): Positive real argument(s).

    Returns:
        float | np.ndarray: log Gamma(x), with the shape of `x`.
    """
    values = np.asarray(x, dtype=float)
    if np.any(values <= 0.0):
        raise ValueError("log_gamma requires positive arguments")

    small = values < 0.5
    z = np.where(small, 1.0 - values, values) - 1.0
    t = z + LANCZOS_G + 0.5
    result = _HALF_LOG_TWO_PI + (z + 0.5) * np.log(t) - t + np.log(_lanczos_series(z))
    if np.any(small):
        # reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        reflected = np.log(np.pi / np.abs(np.sin(np.pi * values))) - result
        result = np.where(small, reflected, result)
    return float(result) if np.ndim(x) == 0 else result


def gamma(x: float | np.ndarray) -> float | np.ndarray:
    """
    Lanczos approximation of Gamma(x), with the reflection formula below 1/2.

    The power t^(z + 1/2) is split in two halves so that arguments up to ~171
    do not overflow before the exponential damping is applied.
    """
    values = np.asarray(x, dtype=float)
    small = values < 0.5
    z = np.where(small, 1.0 - values, values) - 1.0
    t = z + LANCZOS_G + 0.5
    half_power = t ** ((z + 0.5) / 2.0)
    result = math.sqrt(2.0 * math.pi) * half_power * (half_power * np.exp(-t)) * _lanczos_series(z)
    if np.any(small):
        result = np.where(small, np.pi / (np.sin(np.pi * values) * result), result)
    return float(result) if np.ndim(x) == 0 else result


def _taylor_series(alpha: float, z: complex, params: MLParams) -> tuple[complex, float, bool]:
    n = np.arange(params.max_terms)
    log_terms = n * cmath.log(z) - log_gamma(alpha * n + 1.0)
    if np.max(log_terms.real) > 700.0:
        return complex(math.nan, math.nan), math.inf, False

    terms = np.exp(log_terms)
    magnitude = np.abs(terms)
    total = complex(math.fsum(terms.real), math.fsum(terms.imag))

    converged = bool(magnitude[-2:].max() <= params.series_tol * max(abs(total), 1e-300))
    rounding = _EPS * float(np.sum(magnitude * (1.0 + np.abs(log_terms))))
    return total, rounding + float(magnitude[-1]), converged


def _complex_quad(
    func, a: float, b: float, points: list[float] | None = None
) -> tuple[complex, float]:
    options = {"limit": ML_QUAD_LIMIT, "epsabs": 1e-15, "epsrel": 1e-13, "points": points}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        real, real_error = quad(lambda s: func(s).real, a, b, **options)
        imag, imag_error = quad(lambda s: func(s).imag, a, b, **options)
    return complex(real, imag), real_error + imag_error


def _contour_integral(alpha: float, z: complex) -> tuple[complex, float]:
    radius = abs(z)
    phase = abs(cmath.phase(z))
    inverse = 1.0 / alpha

    # rays must decay (delta / alpha in (pi/2, pi]) and stay clear of arg z
    delta = max((alpha * math.pi, 0.75 * alpha * math.pi), key=lambda d: abs(d - phase))
    circle = min(1.0, radius / 2.0)
    decay = -math.cos(delta * inverse)
    chi_max = max((50.0 / decay) ** alpha, 2.0 * circle)

    up, down = cmath.exp(1j * delta), cmath.exp(-1j * delta)
    turn_up, turn_down = cmath.exp(1j * delta * inverse), cmath.exp(-1j * delta * inverse)

    def rays(chi: float) -> complex:
        s = chi**inverse
        outgoing = cmath.exp(s * turn_up) * up / (chi * up - z)
        incoming = cmath.exp(s * turn_down) * down / (chi * down - z)
        return (outgoing - incoming) / (2j * math.pi * alpha)

    def arc(phi: float) -> complex:
        point = circle * cmath.exp(1j * phi)
        kernel = cmath.exp(circle**inverse * cmath.exp(1j * phi * inverse))
        return circle * kernel * cmath.exp(1j * phi) / (point - z) / (2.0 * math.pi * alpha)

    points = [radius] if circle < radius < chi_max else None
    ray_value, ray_error = _complex_quad(rays, circle, chi_max, points)
    arc_value, arc_error = _complex_quad(arc, -delta, delta)

    value = ray_value + arc_value
    if phase < delta:
        value += cmath.exp(z**inverse) / alpha
    return value, ray_error + arc_error


def evaluate_mittag_leffler(
    alpha: FractionalOrder | float,
    z: complex | ComplexValue,
    params: MLParams | None = None,
) -> MLResult:
    """
    Evaluates E_alpha(z) and reports the regime used with a relative error estimate.

    Raises:
        DomainError: If `z` is not finite.
        ConvergenceError: If no regime reaches `params.target_tol` for |z| <= 50, or
            the value overflows double precision.
    """
    order = as_order(alpha)
    params = params or MLParams()
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"Mittag-Leffler argument must be finite, got {z}")

    if z == 0:
        return MLResult(value=ComplexValue(re=1.0), error_estimate=0.0, regime=Regime.EXACT)
    if order.is_classical:
        try:
            return MLResult(
                value=ComplexValue.from_complex(cmath.exp(z)),
                error_estimate=0.0,
                regime=Regime.EXACT,
            )
        except (OverflowError, ValueError) as exc:
            raise ConvergenceError(f"exp({z}) overflows", error_estimate=math.inf) from exc
    if z.imag < 0.0:
        # real Taylor coefficients: E(conj z) = conj E(z)
        mirrored = evaluate_mittag_leffler(order, z.conjugate(), params)
        value = complex(mirrored.value).conjugate()
        return mirrored.model_copy(update={"value": ComplexValue.from_complex(value)})

    value, error, regime = _evaluate(order.alpha, z, params)
    if z.imag == 0.0:
        value = complex(value.real, 0.0)
    return MLResult(value=ComplexValue.from_complex(value), error_estimate=error, regime=regime)


def _evaluate(alpha: float, z: complex, params: MLParams) -> tuple[complex, float, Regime]:
    if abs(z) <= params.series_radius:
        value, error, converged = _taylor_series(alpha, z, params)
        if converged and error <= ML_SERIES_ACCEPT * abs(value):
            return value, error / abs(value), Regime.TAYLOR

    try:
        value, error = _contour_integral(alpha, z)
    except OverflowError as exc:
        raise ConvergenceError(
            f"E_{alpha}({z}) overflows double precision", error_estimate=math.inf
        ) from exc

    magnitude = abs(value)
    relative = error / magnitude if magnitude > 0.0 else math.inf
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ConvergenceError(f"E_{alpha}({z}) is not finite", error_estimate=math.inf)
    if relative > params.target_tol:
        if abs(z) <= _CONTRACT_RADIUS:
            raise ConvergenceError(
                f"E_{alpha}({z}) reached only {relative:.3e} relative accuracy",
                error_estimate=relative,
            )
        logging.warning(f"E_{alpha}({z}) is best effort: error estimate {relative:.3e}.")
    return value, relative, Regime.CONTOUR


def mittag_leffler(
    alpha: FractionalOrder | float,
    z: complex | ComplexValue,
    params: MLParams | None = None,
) -> ComplexValue:
    return evaluate_mittag_leffler(alpha, z, params).value


def propagator(
    model: DispersionModel,
    alpha: FractionalOrder | float,
    k: float,
    t: float,
    params: MLParams | None = None,
) -> ComplexValue:
    """
    Returns E_alpha(i kappa(k) t^alpha), the factor taking the amplitude of the
    normal mode exp(-i k x) from time 0 to time t.
    """
    if t < 0.0:
        raise DomainError(f"propagation time must be non-negative, got {t}")
    order = as_order(alpha)
    kappa = spatial_symbol(model, k)
    if t == 0.0:
        return ComplexValue(re=1.0)
    if order.is_classical:
        return ComplexValue.from_complex(cmath.exp(1j * kappa * t))
    return mittag_leffler(order, complex(0.0, kappa * t**order.alpha), params)
