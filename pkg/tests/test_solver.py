import logging
import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy.special import erfinv, wofz

from fracwaves.dispersion import DispersionModel
from fracwaves.mittag_leffler import MLParams
from fracwaves.spectral.packet import (
    centroid_velocity,
    energy_centroid,
    energy_radius,
    packet_width,
    periodic_offset,
    wavepacket,
)
from fracwaves.spectral.solver import (
    PeriodicGrid,
    SpectralState,
    evolve,
    field,
    from_samples,
    mode_multipliers,
    snapshot,
)
from fracwaves.utils import ConvergenceError, DomainError

KINEMATIC = DispersionModel.kinematic()
KDV = DispersionModel.kdv()


@pytest.mark.parametrize("n_points", [1, 4, 12, 100])
def test_grid_requires_power_of_two_of_at_least_eight(n_points):
    with pytest.raises(ValidationError):
        PeriodicGrid(n_points=n_points, length=1.0)


@pytest.mark.parametrize("length", [0.0, -1.0, math.inf])
def test_grid_requires_positive_length(length):
    with pytest.raises(ValidationError):
        PeriodicGrid(n_points=8, length=length)


def test_grid_geometry():
    grid = PeriodicGrid(n_points=8, length=4.0)
    assert grid.spacing == 0.5
    np.testing.assert_allclose(grid.x, [0, 0.5, 1, 1.5, 2, 2.5, 3, 3.5])
    expected = 2 * np.pi * np.array([0, 1, 2, 3, -4, -3, -2, -1]) / 4.0
    np.testing.assert_allclose(grid.wave_numbers, expected)


def test_state_validates_shape_and_time():
    grid = PeriodicGrid(n_points=8, length=1.0)
    with pytest.raises(ValidationError):
        SpectralState(grid=grid, modes=np.zeros(16, dtype=complex))
    with pytest.raises(ValidationError):
        SpectralState(grid=grid, modes=np.zeros(8, dtype=complex), time=-1.0)


def test_state_remembers_initial_modes():
    grid = PeriodicGrid(n_points=8, length=1.0)
    state = from_samples(grid, np.cos(2 * np.pi * grid.x))
    np.testing.assert_array_equal(state.initial_modes, state.modes)


def test_classical_advection_translates_cosine():
    grid = PeriodicGrid(n_points=256, length=10.0)
    state = from_samples(grid, np.cos(2 * np.pi * 3 * grid.x / grid.length))
    t = grid.length / 4.0
    u = field(evolve(state, KINEMATIC, 1.0, t))
    expected = np.cos(2 * np.pi * 3 * (grid.x - t) / grid.length)
    assert np.max(np.abs(u - expected)) <= 1e-10


def test_classical_advection_shifts_packet_by_whole_cells():
    grid = PeriodicGrid(n_points=256, length=64.0)
    state = wavepacket(grid, k0=1.0, sigma=3.0, x0=20.0)
    u0 = field(state)
    u = field(evolve(state, KINEMATIC, 1.0, grid.length / 4.0))
    assert np.max(np.abs(u - np.roll(u0, 64))) <= 1e-10


def test_classical_kdv_eigenmode():
    grid = PeriodicGrid(n_points=64, length=4 * np.pi)
    state = from_samples(grid, np.cos(0.5 * grid.x))
    t = 7.0
    u = field(evolve(state, KDV, 1.0, t))
    kappa = 0.5 - 0.5**3
    assert np.max(np.abs(u - np.cos(0.5 * grid.x - kappa * t))) <= 1e-10


def test_classical_evolution_conserves_l2_norm():
    grid = PeriodicGrid(n_points=256, length=64.0)
    state = wavepacket(grid, k0=1.0, sigma=3.0, x0=32.0)
    before = np.linalg.norm(field(state))
    after = np.linalg.norm(field(evolve(state, KDV, 1.0, 100.0)))
    assert abs(after - before) <= 1e-10 * before


def test_zero_time_is_identity():
    grid = PeriodicGrid(n_points=32, length=2 * np.pi)
    samples = np.exp(np.sin(grid.x))
    state = from_samples(grid, samples)
    for alpha in (1.0, 0.5):
        u = field(evolve(state, KDV, alpha, 0.0))
        assert np.max(np.abs(u - samples)) <= 1e-12


def test_evolution_restarts_from_initial_modes():
    grid = PeriodicGrid(n_points=16, length=2 * np.pi)
    state = from_samples(grid, np.cos(grid.x) + 0.5 * np.sin(2 * grid.x))
    direct = evolve(state, KINEMATIC, 0.5, 2.0)
    chained = evolve(evolve(state, KINEMATIC, 0.5, 1.0), KINEMATIC, 0.5, 2.0)
    np.testing.assert_array_equal(direct.modes, chained.modes)
    assert chained.time == 2.0


def test_fractional_evolution_keeps_real_data_real():
    grid = PeriodicGrid(n_points=16, length=2 * np.pi)
    state = from_samples(grid, np.cos(grid.x) + 0.3 * np.cos(3 * grid.x + 0.4))
    u = field(evolve(state, KINEMATIC, 0.5, 1.0))
    assert np.max(np.abs(u.imag)) <= 1e-12 * np.max(np.abs(u))


def test_fractional_mode_follows_mittag_leffler_factor():
    # exp(-i x) is the normal mode with k = 1; kappa = 1 gives E_1/2(i) = w(1)
    grid = PeriodicGrid(n_points=16, length=2 * np.pi)
    state = from_samples(grid, np.exp(-1j * grid.x))
    u = field(evolve(state, KINEMATIC, 0.5, 1.0))
    expected = complex(wofz(1.0)) * np.exp(-1j * grid.x)
    assert np.max(np.abs(u - expected)) <= 1e-10


def test_multipliers_are_hermitian_with_unit_nyquist():
    grid = PeriodicGrid(n_points=16, length=2 * np.pi)
    multipliers = mode_multipliers(grid, KDV, 0.75, 0.8)
    assert multipliers[0] == 1.0
    assert multipliers[8] == 1.0
    np.testing.assert_array_equal(multipliers[9:], np.conj(multipliers[7:0:-1]))


def test_convergence_failure_names_the_mode():
    grid = PeriodicGrid(n_points=64, length=2 * np.pi)
    state = from_samples(grid, np.cos(grid.x))
    with pytest.raises(ConvergenceError) as info:
        evolve(state, KINEMATIC, 0.5, 1.0, MLParams(target_tol=1e-30))
    assert 1 <= info.value.mode_index < 32


def test_negative_time_is_rejected():
    grid = PeriodicGrid(n_points=8, length=1.0)
    with pytest.raises(DomainError):
        evolve(from_samples(grid, np.ones(8)), KDV, 1.0, -0.5)


def test_snapshot_columns():
    grid = PeriodicGrid(n_points=8, length=1.0)
    frame = snapshot(from_samples(grid, np.arange(8.0)))
    assert frame.columns == ["x", "re_u", "im_u"]
    assert frame.height == 8
    np.testing.assert_allclose(frame["re_u"].to_numpy(), np.arange(8.0), atol=1e-12)


def test_packet_spectrum_is_two_gaussians():
    grid = PeriodicGrid(n_points=4096, length=512.0)
    k0, sigma = 0.3, 20.0
    state = wavepacket(grid, k0, sigma, x0=256.0)
    q = grid.wave_numbers
    measured = np.abs(state.modes) * grid.spacing / (sigma * np.sqrt(2 * np.pi) / 2)
    expected = np.exp(-(sigma**2) * (q - k0) ** 2 / 2) + np.exp(-(sigma**2) * (q + k0) ** 2 / 2)
    assert np.max(np.abs(measured - expected)) <= 1e-6


def test_packet_shift_multiplies_spectrum_by_phase():
    grid = PeriodicGrid(n_points=1024, length=128.0)
    shift = 10 * grid.spacing
    base = wavepacket(grid, 0.5, 6.0, x0=60.0).modes
    moved = wavepacket(grid, 0.5, 6.0, x0=60.0 + shift).modes
    expected = base * np.exp(-1j * grid.wave_numbers * shift)
    assert np.max(np.abs(moved - expected)) <= 1e-10 * np.max(np.abs(base))


def test_centred_gaussian_has_real_non_negative_spectrum():
    grid = PeriodicGrid(n_points=512, length=128.0)
    modes = wavepacket(grid, 0.0, 6.0, x0=0.0).modes
    scale = np.max(np.abs(modes))
    assert np.max(np.abs(modes.imag)) <= 1e-10 * scale
    assert np.min(modes.real) >= -1e-10 * scale


@pytest.mark.parametrize("sigma", [0.0, -2.0, 100.0])
def test_packet_rejects_bad_or_wrapping_widths(sigma):
    grid = PeriodicGrid(n_points=4096, length=512.0)
    with pytest.raises(DomainError):
        wavepacket(grid, 0.3, sigma, x0=256.0)


def test_periodic_offset_wraps_to_half_domain():
    grid = PeriodicGrid(n_points=8, length=10.0)
    assert periodic_offset(grid, 9.0, 1.0) == pytest.approx(-2.0)
    assert periodic_offset(grid, 1.0, 9.0) == pytest.approx(2.0)


@pytest.mark.parametrize("x0", [100.0, 5.0, 510.0])
def test_energy_centroid_and_width(x0):
    grid = PeriodicGrid(n_points=4096, length=512.0)
    u = field(wavepacket(grid, 0.0, 20.0, x0))
    assert energy_centroid(grid, u) == pytest.approx(x0, abs=1e-8)
    assert packet_width(grid, u) == pytest.approx(20.0 / np.sqrt(2.0), rel=1e-8)


def test_energy_radius_of_gaussian():
    # |u|^2 = exp(-d^2 / sigma^2) holds erf(r / sigma) of its energy within r
    grid = PeriodicGrid(n_points=4096, length=512.0)
    u = field(wavepacket(grid, 0.0, 20.0, 256.0))
    expected = 20.0 * erfinv(1.0 - 1e-6)
    assert energy_radius(grid, u) == pytest.approx(expected, abs=2 * grid.spacing)
    assert energy_radius(grid, u, fraction=0.5) == pytest.approx(
        20.0 * erfinv(0.5), abs=2 * grid.spacing
    )


def test_energy_radius_of_uniform_field_reaches_half_domain():
    grid = PeriodicGrid(n_points=256, length=64.0)
    assert energy_radius(grid, np.ones(256)) >= 0.49 * grid.length


def test_dispersed_kdv_packet_fills_the_domain():
    grid = PeriodicGrid(n_points=256, length=64.0)
    state = wavepacket(grid, 0.3, 4.0, 32.0)
    assert energy_radius(grid, field(state)) < grid.length / 4.0
    assert energy_radius(grid, field(evolve(state, KDV, 1.0, 400.0))) > grid.length / 4.0


def test_kinematic_packet_moves_at_unit_speed():
    v = centroid_velocity(KINEMATIC, 0.3, 20.0, 0.0, 50.0)
    assert v == pytest.approx(1.0, abs=1e-6)


def test_kdv_packet_moves_at_group_velocity():
    v = centroid_velocity(KDV, 0.3, 20.0, 0.0, 50.0)
    assert v == pytest.approx(1.0 - 3.0 * 0.3**2, rel=0.02)
    # energy-weighted mean of 1 - 3 q^2 over the packet spectrum
    assert v == pytest.approx(1.0 - 3.0 * (0.09 + 1.0 / 800.0), abs=1e-4)


def test_packet_at_zero_group_velocity_stays_put():
    v = centroid_velocity(KDV, 1.0 / np.sqrt(3.0), 20.0, 0.0, 50.0)
    assert abs(v) <= 0.02


def test_centroid_velocity_converges_with_packet_width():
    target = 1.0 - 3.0 * 0.3**2
    errors = [
        abs(centroid_velocity(KDV, 0.3, sigma, 0.0, 50.0) - target) for sigma in (5.0, 10.0, 20.0)
    ]
    assert errors[0] > errors[1] > errors[2]


def test_centroid_velocity_rejects_bad_times_and_spread():
    with pytest.raises(DomainError):
        centroid_velocity(KDV, 0.3, 20.0, 10.0, 5.0)
    with pytest.raises(DomainError):
        centroid_velocity(KDV, 0.3, 20.0, -1.0, 5.0)
    grid = PeriodicGrid(n_points=256, length=64.0)
    with pytest.raises(DomainError, match="spread"):
        centroid_velocity(KDV, 0.3, 4.0, 0.0, 400.0, grid=grid)


def test_fractional_centroid_velocity_warns(caplog):
    grid = PeriodicGrid(n_points=128, length=128.0)
    with caplog.at_level(logging.WARNING):
        v = centroid_velocity(KINEMATIC, 0.3, 4.0, 0.0, 2.0, alpha=0.75, grid=grid)
    assert math.isfinite(v)
    assert "no reference value" in caplog.text
