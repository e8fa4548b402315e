"""
Complex dispersion relations of the time-fractional kinematic wave equation

    D_t^a u + c0 u_x = 0

and of the time-fractional linearised KdV equation

    D_t^a u + c0 u_x + mu u_xxx = 0.

With D_t^a -> (i w)^a and d/dx -> (-i k) the relation reads (i w)^a = i kappa(k),
where kappa is the real spatial symbol, so w(k) = i^(-1 + 1/a) kappa(k)^(1/a).
"""
import cmath
import math
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from fracwaves.CONSTANTS import (
    BISECTION_WIDTH,
    CROSSING_TOL,
    PURELY_IMAGINARY_TOL,
    SECANT_MAX_ITER,
)
from fracwaves.utils import ComplexValue, DomainError


class ModelKind(str, Enum):
    KINEMATIC = "kinematic"
    KDV = "kdv"


class BranchMode(str, Enum):
    STRICT = "strict"
    PERMISSIVE = "permissive"


class FractionalOrder(BaseModel):
    model_config = ConfigDict(frozen=True)

    alpha: float

    @field_validator("alpha")
    def check_range(cls, alpha):
        if not 0.0 < alpha <= 1.0:
            raise ValueError(f"fractional order must lie in (0, 1], got {alpha}")
        return alpha

    @property
    def is_classical(self) -> bool:
        return self.alpha == 1.0

    @property
    def angle(self) -> float:
        """Argument of i^(-1 + 1/alpha)."""
        return (1.0 / self.alpha - 1.0) * math.pi / 2.0


class DispersionModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: ModelKind
    c0: float = 1.0
    mu: float = 1.0

    @field_validator("c0", "mu")
    def check_positive(cls, value):
        if not (math.isfinite(value) and value > 0.0):
            raise ValueError(f"coefficient must be positive and finite, got {value}")
        return value

    @classmethod
    def kinematic(cls, c0: float = 1.0) -> "DispersionModel":
        return cls(kind=ModelKind.KINEMATIC, c0=c0)

    @classmethod
    def kdv(cls, c0: float = 1.0, mu: float = 1.0) -> "DispersionModel":
        return cls(kind=ModelKind.KDV, c0=c0, mu=mu)


class NumericPolicy(BaseModel):
    model_config = ConfigDict(frozen=True)

    branch_mode: BranchMode = BranchMode.STRICT
    purely_imaginary_tol: float = PURELY_IMAGINARY_TOL
    crossing_tol: float = CROSSING_TOL
    bisection_width: float = BISECTION_WIDTH
    secant_max_iter: int = SECANT_MAX_ITER


DEFAULT_POLICY = NumericPolicy()


class NormalMode(BaseModel):
    model_config = ConfigDict(frozen=True)

    amplitude: float = 1.0
    wave_number: float
    omega_bar: ComplexValue

    @classmethod
    def from_model(
        cls,
        model: DispersionModel,
        alpha: "FractionalOrder | float",
        k: float,
        amplitude: float = 1.0,
        policy: NumericPolicy | None = None,
    ) -> "NormalMode":
        return cls(
            amplitude=amplitude,
            wave_number=k,
            omega_bar=omega_bar(model, alpha, k, policy),
        )


def as_order(alpha: FractionalOrder | float) -> FractionalOrder:
    if isinstance(alpha, FractionalOrder):
        return alpha
    return FractionalOrder(alpha=alpha)


def spatial_symbol(model: DispersionModel, k: float | np.ndarray) -> float | np.ndarray:
    """kappa(k) = c0 k (kinematic) or c0 k - mu k^3 (KdV); odd in k."""
    if model.kind is ModelKind.KDV:
        return model.c0 * k - model.mu * k * k * k
    return model.c0 * k


def spatial_symbol_slope(model: DispersionModel, k: float) -> float:
    if model.kind is ModelKind.KDV:
        return model.c0 - 3.0 * model.mu * k * k
    return model.c0


def fractional_unit(alpha: FractionalOrder | float) -> ComplexValue:
    """
    Returns i^(-1 + 1/alpha) in polar form, cos(theta) + i sin(theta) with
    theta = (1/alpha - 1) pi / 2.

    Examples:
        >>> fractional_unit(1.0)
        ComplexValue(re=1.0, im=0.0, branch_warning=False)
    """
    order = as_order(alpha)
    if order.is_classical:
        return ComplexValue(re=1.0, im=0.0)
    theta = order.angle
    return ComplexValue(re=math.cos(theta), im=math.sin(theta))


def _checked(value: complex, k: float, branch_warning: bool = False) -> ComplexValue:
    if not cmath.isfinite(value):
        raise DomainError(f"value {value!r} is not finite at k = {k!r}")
    return ComplexValue.from_complex(value, branch_warning=branch_warning)


def _symbol_power(
    kappa: float,
    exponent: float,
    k: float,
    order: FractionalOrder,
    policy: NumericPolicy,
) -> tuple[complex, bool]:
    if not math.isfinite(kappa):
        raise DomainError(f"spatial symbol {kappa!r} is not finite at k = {k!r}")
    try:
        if kappa > 0.0:
            return complex(kappa**exponent), False
        if policy.branch_mode is BranchMode.STRICT:
            raise DomainError(
                f"spatial symbol {kappa!r} <= 0 at k = {k!r} has no real power for "
                f"alpha = {order.alpha!r} (strict branch mode)"
            )
        # principal branch, flagged
        return complex(kappa) ** exponent, True
    except OverflowError as exc:
        raise DomainError(
            f"spatial symbol power kappa^{exponent:.6g} overflows at k = {k!r}"
        ) from exc


def omega_bar(
    model: DispersionModel,
    alpha: FractionalOrder | float,
    k: float,
    policy: NumericPolicy | None = None,
) -> ComplexValue:
    order = as_order(alpha)
    policy = policy or DEFAULT_POLICY
    kappa = spatial_symbol(model, k)
    if order.is_classical:
        return _checked(complex(kappa), k)

    power, flagged = _symbol_power(kappa, 1.0 / order.alpha, k, order, policy)
    value = complex(fractional_unit(order)) * power
    return _checked(value, k, branch_warning=flagged)


def phase_velocity(
    model: DispersionModel,
    alpha: FractionalOrder | float,
    k: float,
    policy: NumericPolicy | None = None,
) -> ComplexValue:
    """
    Complex phase velocity omega_bar(k) / k.

    The classical order evaluates the polynomial c0 - mu k^2 directly, which also
    gives the removable limit c0 at k = 0.

    Raises:
        DomainError: k = 0 with alpha < 1, or kappa(k) <= 0 in strict mode.
    """
    order = as_order(alpha)
    if order.is_classical:
        if model.kind is ModelKind.KDV:
            return _checked(complex(model.c0 - model.mu * k * k), k)
        return ComplexValue(re=model.c0)
    if k == 0.0:
        raise DomainError(f"phase velocity is undefined at k = 0 for alpha = {order.alpha!r}")

    w = omega_bar(model, order, k, policy)
    return _checked(complex(w) / k, k, branch_warning=w.branch_warning)


def group_velocity(
    model: DispersionModel,
    alpha: FractionalOrder | float,
    k: float,
    policy: NumericPolicy | None = None,
) -> ComplexValue:
    """Analytic d(omega_bar)/dk = (unit / alpha) kappa^(1/alpha - 1) kappa'(k)."""
    order = as_order(alpha)
    policy = policy or DEFAULT_POLICY
    slope = spatial_symbol_slope(model, k)
    if order.is_classical:
        return _checked(complex(slope), k)

    kappa = spatial_symbol(model, k)
    power, flagged = _symbol_power(kappa, 1.0 / order.alpha - 1.0, k, order, policy)
    value = complex(fractional_unit(order)) * power * (slope / order.alpha)
    return _checked(value, k, branch_warning=flagged)


def velocity_split(v: ComplexValue) -> tuple[float, float]:
    return v.re, v.im


def evaluate_mode(mode: NormalMode, t: float, x: float) -> float:
    """
    Re{A exp[i(omega_bar t - k x)]}; Im(omega_bar) > 0 decays in time.

    Raises:
        DomainError: If the amplitude factor exp(-Im(omega_bar) t) or the phase
            overflows (growing modes at large t).
    """
    w = mode.omega_bar
    try:
        growth = math.exp(-w.im * t)
    except OverflowError as exc:
        raise DomainError(
            f"mode with k = {mode.wave_number!r} overflows at t = {t!r} "
            f"(Im omega_bar = {w.im!r})"
        ) from exc
    phase = w.re * t - mode.wave_number * x
    value = mode.amplitude * growth * math.cos(phase) if math.isfinite(phase) else math.nan
    if not math.isfinite(value):
        raise DomainError(f"mode with k = {mode.wave_number!r} is not finite at t = {t!r}")
    return value
