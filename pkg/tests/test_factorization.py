import numpy as np
import pytest
from numpy.testing import assert_allclose

from stable_extrap import (
    Autoregressive,
    MovingAverage,
    ValidationError,
    White,
    b_coeffs_from_psi,
    evaluate,
    factorize_reciprocal,
    fourier_coeffs,
    impulse_residual,
)
from stable_extrap.factorization import lower_triangular_toeplitz
from stable_extrap.fourier import one_sided_synth
from conftest import example_ar_density, random_rational_density


def test_example_density_factor():
    rho = 0.5
    fact = factorize_reciprocal(example_ar_density(rho), order=64, grid_size=512)
    expected_psi = np.zeros(65)
    expected_psi[0], expected_psi[1] = 1.0, -rho
    assert_allclose(fact.psi, expected_psi, atol=1e-12)
    assert_allclose(fact.phi, rho ** np.arange(65), atol=1e-12)


def test_white_factor_is_trivial():
    fact = factorize_reciprocal(White(1.0), order=16, grid_size=128)
    assert_allclose(fact.psi[0], 1.0, rtol=1e-14)
    assert np.max(np.abs(fact.psi[1:])) < 1e-14
    assert_allclose(fact.phi[0], 1.0, rtol=1e-14)


def test_ma_reciprocal_exact():
    # f = |1 + 0.3 e^{-i theta}|^{-2}, so 1/f is an exact MA(1) modulus square
    f = Autoregressive(coeffs=(-0.3,))
    fact = factorize_reciprocal(f, order=32, grid_size=256)
    expected = np.zeros(33)
    expected[0], expected[1] = 1.0, 0.3
    assert_allclose(fact.psi, expected, atol=1e-12)


def test_b_coeffs_examples():
    rho = 0.5
    fact = factorize_reciprocal(example_ar_density(rho), order=32, grid_size=256)
    b = b_coeffs_from_psi(fact, 3)
    assert_allclose(b[0], 1 + rho**2, atol=1e-12)
    assert_allclose(b[1], -rho, atol=1e-12)
    assert_allclose(b[-1], -rho, atol=1e-12)
    assert abs(b[2]) < 1e-12

    white = factorize_reciprocal(White(1.0), order=16, grid_size=128)
    bw = b_coeffs_from_psi(white, 2)
    assert_allclose(bw[0], 1.0, rtol=1e-13)
    assert abs(bw[1]) < 1e-13


def test_b_coeffs_match_quadrature(rng):
    for _ in range(5):
        d = random_rational_density(rng)
        fact = factorize_reciprocal(d, order=128, grid_size=1024)
        b = b_coeffs_from_psi(fact, 6)
        recip = 1.0 / evaluate(d, 1024)
        direct = fourier_coeffs(recip, 6)
        for k in range(-6, 7):
            assert abs(b[k] - direct[k]) < 1e-8


def test_random_rational_suite(rng):
    for _ in range(10):
        d = random_rational_density(rng)
        fact = factorize_reciprocal(d, order=128, grid_size=1024)
        synth = one_sided_synth(fact.psi, 1024, sign=-1)
        consistency = np.max(np.abs(np.abs(synth) ** 2 * evaluate(d, 1024) - 1.0))
        assert consistency < 1e-6
        assert impulse_residual(fact) < 1e-8
        # minimum phase: the inverse factor coefficients decay geometrically
        tail = np.abs(fact.phi[64:])
        head = np.max(np.abs(fact.phi[:8]))
        assert np.max(tail) < 1e-6 * max(head, 1.0)


def test_matrix_identity_block(rng):
    d = random_rational_density(rng)
    fact = factorize_reciprocal(d, order=128, grid_size=1024)
    N = 32  # = order/4, safely inside the truncation
    Psi = lower_triangular_toeplitz(fact.psi, N)
    Phi = lower_triangular_toeplitz(fact.phi, N)
    eye = Psi @ Phi
    assert np.max(np.abs(eye - np.eye(N))) < 1e-8
    eye2 = Phi @ Psi
    assert np.max(np.abs(eye2 - np.eye(N))) < 1e-8


def test_rejects_vanishing_density():
    d = MovingAverage(coeffs=(-1.0,))  # zero at theta = 0
    with pytest.raises(ValidationError):
        factorize_reciprocal(d, order=32, grid_size=256)


def test_normalization_positive_leading():
    d = example_ar_density(-0.4)  # negative parameter still gives psi_0 > 0
    fact = factorize_reciprocal(d, order=32, grid_size=256)
    assert fact.psi[0].real > 0
    assert abs(fact.psi[0].imag) < 1e-14
