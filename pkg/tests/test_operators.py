import numpy as np
import pytest
from numpy.testing import assert_allclose

from stable_extrap import (
    NumericalError,
    ValidationError,
    White,
    b_inverse_via_phi,
    build_brq,
    evaluate,
    factorize_reciprocal,
    fourier_coeffs,
    solve_coeffs,
)
from conftest import example_ar_density, random_rational_density


def test_white_white_operators():
    p, q = 2.0, 3.0
    B, R, Q = build_brq(White(p), White(q), size=8, grid_size=256)
    assert_allclose(B.matrix(), np.eye(8) / (p + q), atol=1e-13)
    assert_allclose(R.matrix(), np.eye(8) * (p / (p + q)), atol=1e-13)
    assert_allclose(Q.matrix(), np.eye(8) * (p * q / (p + q)), atol=1e-13)


def test_example_density_b_pattern():
    rho = 0.5
    B, R, Q = build_brq(example_ar_density(rho), White(0.0), size=6, grid_size=512)
    Bm = B.matrix()
    assert_allclose(np.diag(Bm), np.full(6, 1 + rho**2), rtol=1e-12)
    # entry (k, j) holds lag k - j; the first superdiagonal is b_{-1} = -rho
    assert_allclose(np.diag(Bm, 1), np.full(5, -rho), rtol=1e-12)
    assert_allclose(np.diag(Bm, -1), np.full(5, -rho), rtol=1e-12)
    assert np.max(np.abs(np.diag(Bm, 2))) < 1e-12


def test_ratio_lag_convolution_consistency(rng):
    # lags of f/(f+g) equal the convolution of the lags of 1/(f+g) with those of f
    f = random_rational_density(rng)
    g = random_rational_density(rng)
    G = 1024
    K = 8
    fv, gv = evaluate(f, G), evaluate(g, G)
    b_lags = fourier_coeffs(1.0 / (fv + gv), 3 * K)
    f_lags = fourier_coeffs(fv, 3 * K)
    r_lags = fourier_coeffs(fv / (fv + gv), K)
    for k in range(-K, K + 1):
        conv = sum(b_lags[m] * f_lags[k - m] for m in range(k - 2 * K, k + 2 * K + 1)
                   if abs(m) <= 3 * K and abs(k - m) <= 3 * K)
        assert abs(conv - r_lags[k]) < 1e-6


def test_solve_white_white():
    p, q = 2.0, 3.0
    B, R, _ = build_brq(White(p), White(q), size=8, grid_size=256)
    sol = solve_coeffs(B, R, np.array([1.0]))
    assert_allclose(sol.c[0], p, rtol=1e-12)
    assert np.max(np.abs(sol.c[1:])) < 1e-12


def test_solve_example_first_coefficient():
    rho = 0.5
    a = np.array([1.0, 1.0, 1.0])
    B, R, _ = build_brq(example_ar_density(rho), White(0.0), size=64, grid_size=1024)
    sol = solve_coeffs(B, R, a)
    expected_c0 = a[0] + a[1] * rho + a[2] * rho**2
    assert_allclose(sol.c[0], expected_c0, rtol=1e-10)
    assert sol.solve_residual < 1e-8 * np.linalg.norm(R.apply(a))


def test_solve_zero_functional():
    B, R, _ = build_brq(White(1.0), White(1.0), size=8, grid_size=256)
    sol = solve_coeffs(B, R, np.zeros(3))
    assert np.all(sol.c == 0)


def test_solve_rejects_long_functional():
    B, R, _ = build_brq(White(1.0), White(1.0), size=4, grid_size=256)
    with pytest.raises(ValidationError):
        solve_coeffs(B, R, np.ones(5))


def test_b_inverse_example_pattern():
    rho = 0.5
    fact = factorize_reciprocal(example_ar_density(rho), order=128, grid_size=512)
    Binv = b_inverse_via_phi(fact, 6)
    for j in range(6):
        assert_allclose(Binv[0, j], rho**j, atol=1e-10)
    assert_allclose(Binv[1, 1], rho * rho + 1, atol=1e-10)
    assert_allclose(Binv[2, 3], rho**2 * rho**3 + rho * rho**2 + rho, atol=1e-10)


def test_b_inverse_white_identity():
    fact = factorize_reciprocal(White(1.0), order=32, grid_size=256)
    assert_allclose(b_inverse_via_phi(fact, 5), np.eye(5), atol=1e-12)


def test_b_inverse_matches_direct_inverse(rng):
    for _ in range(3):
        d = random_rational_density(rng)
        G = 1024
        fact = factorize_reciprocal(d, order=256, grid_size=G)
        N = 32
        B, _, _ = build_brq(d, White(0.0), size=N, grid_size=G)
        direct = np.linalg.inv(B.matrix())
        via_phi = b_inverse_via_phi(fact, N)
        half = N // 2  # truncation distorts the trailing rows of the direct inverse
        assert np.max(np.abs(direct[:half, :half] - via_phi[:half, :half])) < 1e-6


def test_toeplitz_structure_constructive(rng):
    f = random_rational_density(rng)
    B, R, Q = build_brq(f, White(0.2), size=12, grid_size=512)
    for T in (B.matrix(), R.matrix(), Q.matrix()):
        for d in range(-11, 12):
            diag = np.diag(T, d)
            assert np.max(np.abs(diag - diag[0])) < 1e-14
        assert np.max(np.abs(T - T.conj().T)) < 1e-14


def test_indefinite_reported():
    # a tabulated "density" with negative mass sneaks past evaluate only if
    # constructed directly, so force the failure through raw grids
    from stable_extrap import build_brq_from_grids

    fv = np.full(256, -1.0)
    gv = np.zeros(256)
    with pytest.raises(ValidationError):
        build_brq_from_grids(fv, gv, 8)


def test_size_guard():
    with pytest.raises(ValidationError):
        build_brq(White(1.0), White(1.0), size=128, grid_size=256)
