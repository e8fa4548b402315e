import logging
import math

import numpy as np

from fracwaves.CONSTANTS import (
    ENVELOPE_EDGE_TOL,
    ENVELOPE_ENERGY_FRACTION,
    GRID_LENGTH,
    GRID_POINTS,
)
from fracwaves.dispersion import DispersionModel, FractionalOrder, as_order
from fracwaves.mittag_leffler import MLParams
from fracwaves.spectral.solver import PeriodicGrid, SpectralState, evolve, field, from_samples
from fracwaves.utils import DomainError


def periodic_offset(grid: PeriodicGrid, x: np.ndarray | float, centre: float) -> np.ndarray | float:
    """Signed distance from `centre` to `x` on the circle, in [-L/2, L/2)."""
    half = grid.length / 2.0
    return (x - centre + half) % grid.length - half


def wavepacket(grid: PeriodicGrid, k0: float, sigma: float, x0: float) -> SpectralState:
    """
    Gaussian-envelope carrier exp(-(x - x0)^2 / (2 sigma^2)) cos(k0 (x - x0)),
    measured with the periodic distance to x0, in spectral form.

    Raises:
        DomainError: If sigma <= 0 or the envelope is still above 1e-12 half a
            domain away from x0 (it would wrap around).
    """
    if not sigma > 0.0:
        raise DomainError(f"packet width must be positive, got {sigma}")
    edge = math.exp(-((grid.length / 2.0) ** 2) / (2.0 * sigma**2))
    if edge > ENVELOPE_EDGE_TOL:
        raise DomainError(
            f"envelope of width {sigma} wraps on a domain of length {grid.length} "
            f"(edge value {edge:.3e})"
        )
    d = periodic_offset(grid, grid.x, x0)
    samples = np.exp(-(d**2) / (2.0 * sigma**2)) * np.cos(k0 * d)
    return from_samples(grid, samples)


def energy_centroid(grid: PeriodicGrid, u: np.ndarray) -> float:
    weight = np.abs(u) ** 2
    phase = np.angle(np.sum(weight * np.exp(2j * np.pi * grid.x / grid.length)))
    rough = (phase * grid.length / (2.0 * np.pi)) % grid.length
    d = periodic_offset(grid, grid.x, rough)
    return float((rough + np.sum(weight * d) / np.sum(weight)) % grid.length)


def packet_width(grid: PeriodicGrid, u: np.ndarray) -> float:
    """RMS width of |u|^2 about its energy centroid."""
    weight = np.abs(u) ** 2
    d = periodic_offset(grid, grid.x, energy_centroid(grid, u))
    return float(np.sqrt(np.sum(weight * d**2) / np.sum(weight)))


def energy_radius(
    grid: PeriodicGrid, u: np.ndarray, fraction: float = ENVELOPE_ENERGY_FRACTION
) -> float:
    """
    Smallest periodic distance r from the energy centroid such that |d| <= r holds
    `fraction` of the energy. A packet smeared around the domain gives r close to L/2.
    """
    weight = np.abs(u) ** 2
    d = np.abs(periodic_offset(grid, grid.x, energy_centroid(grid, u)))
    order = np.argsort(d)
    enclosed = np.cumsum(weight[order])
    index = int(np.searchsorted(enclosed, fraction * enclosed[-1]))
    return float(d[order][min(index, d.size - 1)])


def centroid_velocity(
    model: DispersionModel,
    k0: float,
    sigma: float,
    t1: float,
    t2: float,
    alpha: FractionalOrder | float = 1.0,
    grid: PeriodicGrid | None = None,
    x0: float | None = None,
    params: MLParams | None = None,
) -> float:
    """
    Measures the envelope speed of a Gaussian packet from the displacement of the
    energy centroid of |u|^2 between t1 and t2.

    The displacement is unwrapped to the nearest periodic image, so the packet must
    travel less than half the domain between the two times.

    Raises:
        DomainError: On t2 <= t1, t1 < 0, or a packet whose energy radius
            (see `energy_radius`) exceeds L/4 at either time.
    """
    if not 0.0 <= t1 < t2:
        raise DomainError(f"need 0 <= t1 < t2, got t1 = {t1}, t2 = {t2}")
    order = as_order(alpha)
    if not order.is_classical:
        logging.warning(f"Centroid velocity at alpha = {order.alpha} has no reference value.")

    grid = grid or PeriodicGrid(n_points=GRID_POINTS, length=GRID_LENGTH)
    x0 = grid.length / 2.0 if x0 is None else x0
    state = wavepacket(grid, k0, sigma, x0)

    centres = []
    for t in (t1, t2):
        u = field(evolve(state, model, order, t, params))
        spread = energy_radius(grid, u)
        if spread > grid.length / 4.0:
            raise DomainError(
                f"packet spread {spread:.4g} exceeds L/4 = {grid.length / 4.0:.4g} at t = {t}"
            )
        centres.append(energy_centroid(grid, u))

    shift = periodic_offset(grid, centres[1], centres[0])
    return float(shift) / (t2 - t1)
