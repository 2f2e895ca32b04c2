import numpy as np
import pytest
from numpy.testing import assert_allclose

from stable_extrap import (
    MovingAverage,
    ValidationError,
    White,
    evaluate,
    extrapolate_noiseless_gauss,
    extrapolate_noisy_gauss,
    fourier_coeffs,
)
from stable_extrap.fourier import one_sided_synth, theta_grid
from conftest import example_ar_density, random_rational_density, random_functional


def closed_form_example_error(rho, a0, a1, a2):
    """Worked error value for the one-pole density with a three-term functional."""
    return (a0**2 + a0 * a1 * 2 * rho + a1**2 * (1 + rho**2)
            + a0 * a2 * 2 * rho**2 + a1 * a2 * 2 * rho * (1 + rho**2)
            + a2**2 * (1 + rho**2 + rho**4))


def test_example_spectral_characteristic():
    rho = 0.5
    a = np.array([0.7, -0.4, 1.1])
    rep = extrapolate_noiseless_gauss(example_ar_density(rho), a,
                                      size=64, grid_size=1024)
    coef = a[0] * rho + a[1] * rho**2 + a[2] * rho**3
    expected = coef * np.exp(-1j * theta_grid(1024))
    assert np.max(np.abs(rep.h.grid_values - expected)) < 1e-6
    assert_allclose(rep.h.negative_coeffs[0], coef, atol=1e-9)
    assert np.max(np.abs(rep.h.negative_coeffs[1:])) < 1e-9


def test_example_error_three_routes():
    rep = extrapolate_noiseless_gauss(example_ar_density(0.5), (1.0, 1.0, 1.0),
                                      size=64, grid_size=1024)
    assert_allclose(rep.error_value, 6.3125, rtol=1e-9)
    assert_allclose(rep.diagnostics["error_quadrature"], 6.3125, rtol=1e-9)
    assert_allclose(rep.diagnostics["error_factorization"], 6.3125, rtol=1e-9)
    assert rep.diagnostics["error_routes_rel_gap"] < 1e-6


def test_one_step_prediction_unit_error():
    rep = extrapolate_noiseless_gauss(example_ar_density(0.5), (1.0,),
                                      size=64, grid_size=1024)
    assert_allclose(rep.error_value, 1.0, rtol=1e-10)
    expected = 0.5 * np.exp(-1j * theta_grid(1024))
    assert np.max(np.abs(rep.h.grid_values - expected)) < 1e-8


def test_white_noiseless_uninformative():
    a = np.array([1.0, -0.5, 0.25])
    rep = extrapolate_noiseless_gauss(White(1.0), a, size=32, grid_size=512)
    assert np.max(np.abs(rep.h.grid_values)) < 1e-10
    assert_allclose(rep.error_value, np.sum(np.abs(a) ** 2), rtol=1e-10)


def test_white_white_noisy():
    p, q = 1.5, 0.7
    a = np.array([1.0, 0.3])
    rep = extrapolate_noisy_gauss(White(p), White(q), a, size=32, grid_size=512)
    assert np.max(np.abs(rep.h.grid_values)) < 1e-10
    assert_allclose(rep.error_value, p * np.sum(np.abs(a) ** 2), rtol=1e-10)
    assert_allclose(rep.c[: len(a)], p * a, atol=1e-10)


def test_zero_noise_reduces_to_noiseless():
    a = (1.0, 0.5)
    f = example_ar_density(0.4)
    noisy = extrapolate_noisy_gauss(f, White(0.0), a, size=64, grid_size=1024)
    clean = extrapolate_noiseless_gauss(f, a, size=64, grid_size=1024)
    assert_allclose(noisy.error_value, clean.error_value, rtol=1e-12)
    assert np.max(np.abs(noisy.h.grid_values - clean.h.grid_values)) < 1e-12


def test_one_sidedness_and_orthogonality(rng):
    for _ in range(4):
        f = random_rational_density(rng)
        g = random_rational_density(rng)
        a = random_functional(rng)
        rep = extrapolate_noisy_gauss(f, g, a, size=64, grid_size=1024)
        assert rep.diagnostics["one_sidedness"] < 1e-6
        assert rep.diagnostics["orthogonality"] < 1e-6
        assert rep.h.synthesis_residual() < 1e-8
        assert rep.diagnostics["error_routes_rel_gap"] < 1e-6
        assert rep.error_value >= 0


def test_noise_never_helps(rng):
    for _ in range(4):
        f = random_rational_density(rng)
        g = random_rational_density(rng)
        a = random_functional(rng)
        noisy = extrapolate_noisy_gauss(f, g, a, size=64, grid_size=1024)
        clean = extrapolate_noisy_gauss(f, White(0.0), a, size=64, grid_size=1024)
        assert noisy.error_value >= clean.error_value - 1e-10


def test_complex_functional_supported():
    a = np.array([1.0 + 0.5j, -0.25j])
    rep = extrapolate_noisy_gauss(example_ar_density(0.4), White(0.3), a,
                                  size=64, grid_size=1024)
    assert rep.error_value > 0
    assert rep.diagnostics["error_routes_rel_gap"] < 1e-6
    assert rep.diagnostics["one_sidedness"] < 1e-6


def test_error_grows_with_horizon_weighting():
    # pushing weight to later unobserved values cannot reduce the error
    f = example_ar_density(0.5)
    e1 = extrapolate_noiseless_gauss(f, (1.0,), size=64, grid_size=1024).error_value
    e2 = extrapolate_noiseless_gauss(f, (0.0, 1.0), size=64, grid_size=1024).error_value
    assert e2 >= e1 - 1e-12


def test_minimality_gate():
    bad = MovingAverage(coeffs=(-1.0,))  # unit-circle zero
    with pytest.raises(ValidationError):
        extrapolate_noiseless_gauss(bad, (1.0,), size=32, grid_size=512)


def test_size_preconditions():
    with pytest.raises(ValidationError):
        extrapolate_noisy_gauss(White(1.0), White(1.0), np.ones(4), size=8,
                                grid_size=512)
    with pytest.raises(ValidationError):
        extrapolate_noisy_gauss(White(1.0), White(1.0), np.zeros(2), size=32,
                                grid_size=512)
