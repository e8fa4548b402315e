import math

import numpy as np
import polars as pl
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from fracwaves.dispersion import DispersionModel, FractionalOrder, as_order
from fracwaves.mittag_leffler import MLParams, propagator
from fracwaves.spectral.fft import fft_forward, fft_inverse, is_power_of_two
from fracwaves.utils import ConvergenceError, DomainError


class PeriodicGrid(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_points: int
    length: float

    @field_validator("n_points")
    def check_points(cls, n):
        if not (is_power_of_two(n) and n >= 8):
            raise ValueError(f"n_points must be 2^p with p >= 3, got {n}")
        return n

    @field_validator("length")
    def check_length(cls, length):
        if not (math.isfinite(length) and length > 0.0):
            raise ValueError(f"length must be positive, got {length}")
        return length

    @property
    def spacing(self) -> float:
        return self.length / self.n_points

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.n_points) * self.spacing

    @property
    def wave_numbers(self) -> np.ndarray:
        """Signed bin wave numbers 2 pi j / L in FFT order, j = 0..N/2-1, -N/2..-1."""
        j = np.fft.fftfreq(self.n_points, d=1.0 / self.n_points)
        return 2.0 * np.pi * j / self.length


class SpectralState(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    grid: PeriodicGrid
    modes: np.ndarray
    time: float = 0.0
    initial_modes: np.ndarray | None = None

    @field_validator("time")
    def check_time(cls, t):
        if t < 0.0:
            raise ValueError(f"time must be non-negative, got {t}")
        return t

    @model_validator(mode="after")
    def check_modes(self):
        if self.modes.shape != (self.grid.n_points,):
            raise ValueError(
                f"expected {self.grid.n_points} modes, got shape {self.modes.shape}"
            )
        if self.initial_modes is None:
            object.__setattr__(self, "initial_modes", self.modes.copy())
        return self


def from_samples(grid: PeriodicGrid, samples: np.ndarray) -> SpectralState:
    return SpectralState(grid=grid, modes=fft_forward(samples))


def field(state: SpectralState) -> np.ndarray:
    return fft_inverse(state.modes)


def mode_multipliers(
    grid: PeriodicGrid,
    model: DispersionModel,
    alpha: FractionalOrder | float,
    t: float,
    params: MLParams | None = None,
) -> np.ndarray:
    """
    Per-bin propagators. Bin q carries exp(i q x), the normal mode with k = -q, so
    it is multiplied by propagator(k = -q). Negative bins reuse the conjugate of
    their positive partner, and the Nyquist bin is left unchanged (kappa = 0).
    """
    n = grid.n_points
    q = grid.wave_numbers
    multipliers = np.ones(n, dtype=complex)
    for j in range(1, n // 2):
        try:
            value = complex(propagator(model, alpha, -q[j], t, params))
        except ConvergenceError as exc:
            raise ConvergenceError(
                f"propagator failed for mode {j} (q = {q[j]:.6g}): {exc}",
                error_estimate=exc.error_estimate,
                mode_index=j,
            ) from exc
        multipliers[j] = value
        multipliers[n - j] = value.conjugate()
    return multipliers


def evolve(
    state: SpectralState,
    model: DispersionModel,
    alpha: FractionalOrder | float,
    t_target: float,
    params: MLParams | None = None,
) -> SpectralState:
    """
    Evolves the t = 0 spectrum of `state` directly to `t_target`.

    Fractional propagators do not compose, so the current modes of `state` are
    ignored in favour of its stored initial modes.
    """
    if t_target < 0.0:
        raise DomainError(f"target time must be non-negative, got {t_target}")
    order = as_order(alpha)
    multipliers = mode_multipliers(state.grid, model, order, t_target, params)
    return state.model_copy(
        update={"modes": state.initial_modes * multipliers, "time": t_target}
    )


def snapshot(state: SpectralState) -> pl.DataFrame:
    u = field(state)
    return pl.DataFrame({"x": state.grid.x, "re_u": u.real, "im_u": u.imag})
