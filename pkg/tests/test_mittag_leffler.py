import cmath
import math

import mpmath
import numpy as np
import pytest
from pydantic import ValidationError
from scipy.special import erfcx, wofz

from fracwaves.dispersion import DispersionModel, spatial_symbol
from fracwaves.mittag_leffler import (
    MLParams,
    Regime,
    _contour_integral,
    _taylor_series,
    evaluate_mittag_leffler,
    gamma,
    log_gamma,
    mittag_leffler,
    propagator,
)
from fracwaves.utils import ConvergenceError, DomainError


def half_order_reference(z: complex) -> complex:
    """E_1/2(z) = exp(z^2) erfc(-z) written through the Faddeeva function."""
    return complex(wofz(-1j * z))


def mp_series(alpha: float, z: complex, terms: int = 2000) -> complex:
    with mpmath.workdps(80):
        total = mpmath.fsum(
            mpmath.mpc(z) ** n / mpmath.gamma(mpmath.mpf(alpha) * n + 1) for n in range(terms)
        )
        return complex(total)


def l1_solution(alpha: float, rate: complex, t_end: float, n_steps: int) -> complex:
    """
    Caputo D^alpha y = rate * y, y(0) = 1, with the implicit L1 scheme on a graded
    mesh t_j = T (j / N)^r, r = (2 - alpha) / alpha.
    """
    grading = (2.0 - alpha) / alpha
    t = t_end * (np.arange(n_steps + 1) / n_steps) ** grading
    y = np.zeros(n_steps + 1, dtype=complex)
    y[0] = 1.0
    scale = math.gamma(2.0 - alpha)
    for n in range(1, n_steps + 1):
        left, right = t[:n], t[1 : n + 1]
        weights = ((t[n] - left) ** (1.0 - alpha) - (t[n] - right) ** (1.0 - alpha)) / (
            (right - left) * scale
        )
        history = np.dot(weights[:-1], y[1:n] - y[: n - 1])
        y[n] = (weights[-1] * y[n - 1] - history) / (weights[-1] - rate)
    return complex(y[-1])


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 1.5, 2.5, 3.7, 7.25, 12.0, 20.0, -0.5, -1.5, -2.3])
def test_gamma_matches_math_gamma(x):
    assert gamma(x) == pytest.approx(math.gamma(x), rel=1e-13)


def test_gamma_is_vectorised():
    x = np.linspace(0.2, 6.0, 30)
    expected = np.array([math.gamma(v) for v in x])
    np.testing.assert_allclose(gamma(x), expected, rtol=1e-13)


@pytest.mark.parametrize("x", [0.05, 0.3, 1.0, 2.0, 4.5, 30.0, 101.0, 250.5])
def test_log_gamma_matches_lgamma(x):
    expected = math.lgamma(x)
    assert log_gamma(x) == pytest.approx(expected, abs=1e-13 * max(1.0, abs(expected)))


def test_log_gamma_rejects_non_positive():
    with pytest.raises(ValueError):
        log_gamma(0.0)
    with pytest.raises(ValueError):
        log_gamma(np.array([1.0, -2.0]))


# 10 x 10 grid over all four quadrants, |z| <= 7 sqrt(2)
EXP_GRID = [complex(x, y) for x in np.linspace(-7.0, 7.0, 10) for y in np.linspace(-7.0, 7.0, 10)]


@pytest.mark.parametrize("z", EXP_GRID)
def test_order_one_is_the_exponential(z):
    result = evaluate_mittag_leffler(1.0, z)
    assert complex(result.value) == pytest.approx(cmath.exp(z), rel=1e-10)
    assert result.regime is Regime.EXACT


def test_zero_argument_is_one():
    for alpha in (0.2, 0.5, 1.0):
        result = evaluate_mittag_leffler(alpha, 0.0)
        assert complex(result.value) == 1.0
        assert result.error_estimate == 0.0


def test_half_order_at_minus_one_matches_extended_precision_series():
    value = mittag_leffler(0.5, -1.0)
    assert value.re == pytest.approx(mp_series(0.5, -1.0).real, abs=1e-10)
    assert value.re == pytest.approx(0.427583576156, abs=1e-10)
    assert value.im == 0.0


@pytest.mark.parametrize("alpha", [0.3, 0.6, 0.8])
@pytest.mark.parametrize("z", [0.7, -2.0, 1.5 + 1.5j, -3j, 3.5 - 1j])
def test_small_arguments_match_extended_precision_series(alpha, z):
    expected = mp_series(alpha, z)
    assert complex(mittag_leffler(alpha, z)) == pytest.approx(expected, rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("x", [-0.5, -3.0, -8.0, -20.0, 1.0, 4.0, 7.5])
def test_half_order_on_real_axis(x):
    expected = math.exp(x * x) * math.erfc(-x) if x > 0 else float(erfcx(-x))
    assert mittag_leffler(0.5, x).re == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("y", [0.5, 1.0, 3.0, 5.5, 10.0, 20.0, 40.0, -7.0])
def test_half_order_on_imaginary_axis(y):
    expected = complex(wofz(y))
    assert complex(mittag_leffler(0.5, 1j * y)) == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("z", [2 + 1j, -3 + 0.5j, 0.5 + 4j, -1 - 2j, 4 + 4j, -6 + 2j])
def test_half_order_off_axis(z):
    expected = half_order_reference(z)
    assert complex(mittag_leffler(0.5, z)) == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("alpha", [0.5, 0.75])
@pytest.mark.parametrize("radius", [4.0, 5.0, 6.0])
def test_taylor_and_contour_regimes_agree_on_overlap(alpha, radius):
    params = MLParams(series_radius=10.0)
    compared = 0
    for phi in np.linspace(0.0, math.pi, 25):
        z = radius * cmath.exp(1j * phi)
        contour, _ = _contour_integral(alpha, z)
        expected = mp_series(alpha, z, terms=400)
        assert abs(contour - expected) <= 1e-9 * abs(expected)

        # towards the negative axis the series cancels terms of size ~exp(radius^(1/alpha))
        # down to an O(1/radius) value, so only well-conditioned sums are compared
        series, error, converged = _taylor_series(alpha, z, params)
        if not converged or error > 1e-10 * abs(series):
            continue
        assert abs(series - contour) <= 1e-8 * abs(series)
        compared += 1
    # the sector around the positive real axis is always well conditioned
    assert compared >= 3


@pytest.mark.parametrize("alpha", [0.4, 0.5, 0.9])
@pytest.mark.parametrize("z", [1 + 2j, -4 + 3j, 12 + 5j, -8 + 3j])
def test_conjugate_symmetry(alpha, z):
    upper = complex(mittag_leffler(alpha, z))
    lower = complex(mittag_leffler(alpha, z.conjugate()))
    assert lower == upper.conjugate()


def test_real_arguments_have_zero_imaginary_part():
    for x in (-30.0, -4.0, 2.0, 6.0):
        assert mittag_leffler(0.6, x).im == 0.0


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.75, 1.0])
def test_positive_and_monotone_on_real_axis(alpha):
    x = np.linspace(0.0, 5.0, 26)
    growing = [mittag_leffler(alpha, v).re for v in x]
    decaying = [mittag_leffler(alpha, -v).re for v in x]
    assert all(v > 0.0 for v in growing + decaying)
    assert all(b > a for a, b in zip(growing, growing[1:]))
    assert all(b < a for a, b in zip(decaying, decaying[1:]))


def test_regimes_are_reported():
    assert evaluate_mittag_leffler(0.5, 0.5j).regime is Regime.TAYLOR
    assert evaluate_mittag_leffler(0.5, 20j).regime is Regime.CONTOUR
    result = evaluate_mittag_leffler(0.5, -1.0)
    assert 0.0 <= result.error_estimate <= 1e-10


def test_unreachable_tolerance_raises_convergence_error():
    with pytest.raises(ConvergenceError) as info:
        evaluate_mittag_leffler(0.5, 20j, MLParams(target_tol=1e-30))
    assert info.value.error_estimate > 1e-30


def test_large_arguments_are_best_effort():
    result = evaluate_mittag_leffler(0.5, 60j, MLParams(target_tol=1e-30))
    assert complex(result.value) == pytest.approx(complex(wofz(60.0)), rel=1e-8)


def test_non_finite_argument_is_rejected():
    with pytest.raises(DomainError):
        evaluate_mittag_leffler(0.5, complex(math.nan, 0.0))


@pytest.mark.parametrize(
    "fields",
    [{"series_radius": 0.0}, {"target_tol": 2.0}, {"series_tol": 0.0}, {"max_terms": 3}],
)
def test_invalid_params_are_rejected(fields):
    with pytest.raises(ValidationError):
        MLParams(**fields)


def test_propagator_examples():
    kinematic = DispersionModel.kinematic()
    kdv = DispersionModel.kdv()
    assert complex(propagator(kdv, 0.5, 0.4, 0.0)) == 1.0
    assert complex(propagator(kinematic, 1.0, 0.7, 2.0)) == pytest.approx(cmath.exp(1.4j))
    # E_1/2(i) = w(1)
    assert complex(propagator(kinematic, 0.5, 1.0, 1.0)) == pytest.approx(
        complex(wofz(1.0)), rel=1e-10
    )
    with pytest.raises(DomainError):
        propagator(kdv, 0.5, 0.4, -1.0)


@pytest.mark.parametrize("model", [DispersionModel.kinematic(), DispersionModel.kdv()])
@pytest.mark.parametrize("k", [-1.5, -0.3, 0.2, 0.7, 2.0])
@pytest.mark.parametrize("t", [0.1, 1.0, math.pi, 25.0])
def test_classical_propagator_has_unit_modulus(model, k, t):
    value = complex(propagator(model, 1.0, k, t))
    kappa = spatial_symbol(model, k)
    assert abs(value) == pytest.approx(1.0, abs=1e-12)
    assert value == pytest.approx(cmath.exp(1j * kappa * t), abs=1e-12)


def test_propagator_is_contractive_for_fractional_order():
    kinematic = DispersionModel.kinematic()
    for t in (0.5, 1.0, 2.0, 4.0, 10.0):
        assert abs(propagator(kinematic, 0.75, 1.0, t)) < 1.0


@pytest.mark.parametrize("t_end", [0.25, 0.5, 1.0])
def test_propagator_matches_l1_time_stepping(t_end):
    kinematic = DispersionModel.kinematic()
    exact = complex(propagator(kinematic, 0.5, 1.0, t_end))
    numeric = l1_solution(0.5, 1j, t_end, 2000)
    assert abs(exact - numeric) <= 1e-4
