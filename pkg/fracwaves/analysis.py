import math

from pydantic import BaseModel, ConfigDict

from fracwaves.CONSTANTS import KDV_BRACKET, PURELY_IMAGINARY_TOL
from fracwaves.dispersion import (
    DEFAULT_POLICY,
    DispersionModel,
    FractionalOrder,
    ModelKind,
    NumericPolicy,
    as_order,
    fractional_unit,
    group_velocity,
    phase_velocity,
    spatial_symbol,
)
from fracwaves.utils import (
    ComplexValue,
    ConvergenceError,
    DegenerateCrossing,
    DomainError,
    NoSignChange,
)


class CrossingResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    k_star: float
    v_common: ComplexValue
    bracket: tuple[float, float]
    residual: float


class ClassicalZeros(BaseModel):
    model_config = ConfigDict(frozen=True)

    omega: list[float] = []
    phase: list[float] = []
    group: list[float] = []


def purely_imaginary_orders(m_max: int) -> list[float]:
    """
    Orders alpha = 1 / (2 (m + 1)), m = 0..m_max, at which every velocity is purely
    imaginary.

    Examples:
        >>> purely_imaginary_orders(1)
        [0.5, 0.25]
    """
    if m_max < 0:
        raise ValueError(f"m_max must be non-negative, got {m_max}")
    return [1.0 / (2.0 * (m + 1)) for m in range(m_max + 1)]


def is_purely_imaginary(alpha: FractionalOrder | float, tol: float = PURELY_IMAGINARY_TOL) -> bool:
    return abs(fractional_unit(alpha).re) <= tol


def predicted_crossing(model: DispersionModel, alpha: FractionalOrder | float) -> float | None:
    """
    Closed-form KdV crossing of Re v_p and Re v_g: kappa / k = kappa' / alpha gives
    k*^2 = c0 (1 - alpha) / (mu (3 - alpha)). None where no crossing exists.
    """
    order = as_order(alpha)
    if model.kind is not ModelKind.KDV or order.is_classical:
        return None
    return math.sqrt(model.c0 * (1.0 - order.alpha) / (model.mu * (3.0 - order.alpha)))


def _check_bracket(model: DispersionModel, bracket: tuple[float, float]) -> None:
    k_lo, k_hi = bracket
    if not k_lo < k_hi:
        raise DomainError(f"bracket must satisfy k_lo < k_hi, got {bracket}")
    # kappa is positive on (0, sqrt(c0 / mu)) for KdV and on k > 0 for kinematic
    for k in bracket:
        if not spatial_symbol(model, k) > 0.0:
            raise DomainError(f"bracket end k = {k} leaves the kappa > 0 domain")


def _gap(model: DispersionModel, order: FractionalOrder, k: float, policy: NumericPolicy) -> float:
    return phase_velocity(model, order, k, policy).re - group_velocity(model, order, k, policy).re


def _residual(
    model: DispersionModel, order: FractionalOrder, k: float, policy: NumericPolicy
) -> float:
    vp = complex(phase_velocity(model, order, k, policy))
    vg = complex(group_velocity(model, order, k, policy))
    return abs(vp - vg)


def find_velocity_crossing(
    alpha: FractionalOrder | float,
    model: DispersionModel | None = None,
    bracket: tuple[float, float] = KDV_BRACKET,
    tol: float | None = None,
    policy: NumericPolicy | None = None,
) -> CrossingResult:
    """
    Root of Re v_p(k) - Re v_g(k) inside `bracket`: bisection down to the policy's
    bracket width, then secant polishing until |v_p - v_g| <= tol.

    Both velocities share the polar factor i^(-1 + 1/alpha), so at the root the
    complex values coincide as well.

    Raises:
        DomainError: If the bracket leaves the kappa > 0 domain.
        DegenerateCrossing: If alpha is a purely imaginary order (real parts vanish).
        NoSignChange: If the real-part gap does not change sign on the bracket.
        ConvergenceError: If secant polishing does not reach `tol`.
    """
    order = as_order(alpha)
    model = model or DispersionModel.kdv()
    policy = policy or DEFAULT_POLICY
    tol = policy.crossing_tol if tol is None else tol

    _check_bracket(model, bracket)
    if is_purely_imaginary(order, policy.purely_imaginary_tol):
        raise DegenerateCrossing(
            f"alpha = {order.alpha} is a purely imaginary order; real parts vanish identically"
        )

    lo, hi = bracket
    f_lo, f_hi = _gap(model, order, lo, policy), _gap(model, order, hi, policy)
    if f_lo * f_hi > 0.0:
        raise NoSignChange(
            f"Re v_p - Re v_g does not change sign on [{lo}, {hi}] for alpha = {order.alpha}"
        )

    while hi - lo > policy.bisection_width and f_lo != 0.0 and f_hi != 0.0:
        mid = 0.5 * (lo + hi)
        f_mid = _gap(model, order, mid, policy)
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid

    candidates = {lo: _residual(model, order, lo, policy), hi: _residual(model, order, hi, policy)}
    x0, f0, x1, f1 = lo, f_lo, hi, f_hi
    for _ in range(policy.secant_max_iter):
        if min(candidates.values()) <= tol or f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        x2 = min(max(x2, bracket[0]), bracket[1])
        x0, f0, x1, f1 = x1, f1, x2, _gap(model, order, x2, policy)
        candidates[x2] = _residual(model, order, x2, policy)

    k_star = min(candidates, key=candidates.get)
    residual = candidates[k_star]
    if residual > tol:
        raise ConvergenceError(
            f"crossing near k = {k_star} reached residual {residual:.3e} > {tol:.1e}",
            error_estimate=residual,
        )
    return CrossingResult(
        k_star=k_star,
        v_common=phase_velocity(model, order, k_star, policy),
        bracket=tuple(bracket),
        residual=residual,
    )


def classical_zeros(model: DispersionModel) -> ClassicalZeros:
    """Zeros for k >= 0 of omega, v_p and v_g at alpha = 1; none for the kinematic model."""
    if model.kind is ModelKind.KINEMATIC:
        return ClassicalZeros()
    return ClassicalZeros(
        omega=[0.0, math.sqrt(model.c0 / model.mu)],
        phase=[math.sqrt(model.c0 / model.mu)],
        group=[math.sqrt(model.c0 / (3.0 * model.mu))],
    )
