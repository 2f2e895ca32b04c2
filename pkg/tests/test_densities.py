import numpy as np
import pytest
from numpy.testing import assert_allclose

from stable_extrap import (
    Autoregressive,
    Contaminated,
    MovingAverage,
    Tabulated,
    ValidationError,
    White,
    check_minimality,
    density_from_spec,
    density_to_spec,
    evaluate,
    fourier_coeffs,
)
from conftest import example_ar_density
from oracles import ar1_covariance, direct_fourier_coeff


def test_white_evaluate():
    vals = evaluate(White(1.0), 64)
    assert vals.shape == (64,)
    assert np.all(vals == 1.0)


def test_ar_closed_form_at_zero():
    vals = evaluate(example_ar_density(0.5), 64)
    # theta = 0 sits at index G/2 on the [-pi, pi) grid
    assert_allclose(vals[32], 4.0, rtol=1e-14)


def test_contaminated_is_exact_convex_combination():
    mix = Contaminated(base=White(1.0), contamination=White(2.0), epsilon=0.5)
    assert np.all(evaluate(mix, 64) == 1.5)
    g1 = example_ar_density(0.3)
    w = MovingAverage(coeffs=(0.2,))
    eps = 0.25
    mix2 = Contaminated(base=g1, contamination=w, epsilon=eps)
    expected = (1 - eps) * evaluate(g1, 128) + eps * evaluate(w, 128)
    assert np.array_equal(evaluate(mix2, 128), expected)


def test_grid_validation():
    with pytest.raises(ValidationError):
        evaluate(White(1.0), 63)
    with pytest.raises(ValidationError):
        evaluate(White(1.0), 32)


def test_tabulated_rejects_negative():
    vals = np.ones(64)
    vals[3] = -0.1
    with pytest.raises(ValidationError):
        Tabulated(grid_values=tuple(vals))


def test_tabulated_resample_round_trip():
    d = example_ar_density(0.4)
    tab = Tabulated(grid_values=tuple(evaluate(d, 256)))
    up = tab.values(512)
    assert_allclose(up, evaluate(d, 512), rtol=1e-10, atol=1e-10)


def test_fourier_white():
    coeffs = fourier_coeffs(evaluate(White(2.5), 128), 5)
    assert_allclose(coeffs[0], 2.5, rtol=1e-14)
    for k in range(1, 6):
        assert abs(coeffs[k]) < 1e-14
        assert abs(coeffs[-k]) < 1e-14


def test_fourier_reciprocal_of_ar_density():
    # 1/f for the one-pole density: b_0 = 1 + rho^2, b_{+-1} = -rho, rest 0
    rho = 0.5
    recip = 1.0 / evaluate(example_ar_density(rho), 256)
    coeffs = fourier_coeffs(recip, 4)
    assert_allclose(coeffs[0], 1 + rho**2, rtol=1e-12)
    assert_allclose(coeffs[-1], -rho, rtol=1e-12)
    assert_allclose(coeffs[1], -rho, rtol=1e-12)
    for k in (2, 3, 4):
        assert abs(coeffs[k]) < 1e-12


def test_fourier_ar1_geometric_covariances():
    rho = 0.5
    coeffs = fourier_coeffs(evaluate(example_ar_density(rho), 512), 8)
    for k in range(-8, 9):
        assert_allclose(coeffs[k], ar1_covariance(rho, 1.0, k), rtol=1e-9)


def test_fourier_matches_direct_quadrature(rng):
    vals = np.exp(rng.standard_normal() * np.cos(np.linspace(-np.pi, np.pi, 128, endpoint=False)))
    coeffs = fourier_coeffs(vals, 6)
    for k in range(-6, 7):
        assert_allclose(coeffs[k], direct_fourier_coeff(vals, k), rtol=1e-12, atol=1e-14)


def test_fourier_resolution_guard():
    with pytest.raises(ValidationError):
        fourier_coeffs(np.ones(64), 32)


def test_fourier_conjugate_symmetry(rng):
    vals = np.abs(rng.standard_normal(128)) + 0.1
    coeffs = fourier_coeffs(vals, 10)
    for k in range(11):
        assert coeffs[-k] == np.conj(coeffs[k])


def test_psd_toeplitz_minors(rng):
    # nonnegative grids give positive-semidefinite covariance sequences
    for _ in range(5):
        vals = np.abs(rng.standard_normal(128)) + 0.05
        coeffs = fourier_coeffs(vals, 6)
        T = np.empty((7, 7), dtype=complex)
        for i in range(7):
            for j in range(7):
                T[i, j] = coeffs[i - j]
        T = T / coeffs[0]
        for k in range(1, 8):
            minor = np.linalg.det(T[:k, :k]).real
            assert minor >= -1e-9


def test_fourier_grid_refinement_stable():
    d = example_ar_density(0.4)
    c1 = fourier_coeffs(evaluate(d, 512), 8)
    c2 = fourier_coeffs(evaluate(d, 1024), 8)
    for k in range(-8, 9):
        assert abs(c1[k] - c2[k]) <= 1e-9 * max(abs(c2[k]), 1.0)


def test_minimality_white_passes():
    res = check_minimality(White(1.0), None, 2.0)
    assert res.passes
    assert_allclose(res.integral, 2 * np.pi, rtol=1e-12)


def test_minimality_unit_circle_zero_fails():
    # |1 - e^{-i theta}|^2 vanishes at theta = 0: the reciprocal is not integrable
    d = MovingAverage(coeffs=(-1.0,))
    res = check_minimality(d, None, 2.0)
    assert not res.passes


def test_minimality_example_density_value():
    res = check_minimality(example_ar_density(0.5), None, 2.0)
    assert res.passes
    assert_allclose(res.integral / (2 * np.pi), 1.25, rtol=1e-12)


def test_minimality_alpha_below_two():
    res = check_minimality(example_ar_density(0.5), White(0.1), 1.5)
    assert res.passes


def test_density_spec_round_trip():
    specs = [
        {"kind": "white", "level": 2.0},
        {"kind": "ma", "coeffs": [0.3], "scale": 1.5},
        {"kind": "ar", "coeffs": [0.5], "scale": 1.0},
        {"kind": "rational",
         "numerator": {"kind": "ma", "coeffs": [0.2], "scale": 1.0},
         "denominator": {"kind": "ma", "coeffs": [-0.3], "scale": 1.0}},
        {"kind": "contaminated",
         "base": {"kind": "white", "level": 1.0},
         "contamination": {"kind": "white", "level": 2.0},
         "epsilon": 0.5},
    ]
    for spec in specs:
        d = density_from_spec(spec)
        back = density_from_spec(density_to_spec(d))
        assert np.array_equal(evaluate(d, 64), evaluate(back, 64))


def test_density_spec_rejects_unknown_fields():
    with pytest.raises(ValidationError):
        density_from_spec({"kind": "white", "level": 1.0, "extra": 1})
    with pytest.raises(ValidationError):
        density_from_spec({"kind": "nope"})
