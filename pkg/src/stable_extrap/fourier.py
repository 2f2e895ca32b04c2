"""Grid helpers for 2*pi-periodic functions on [-pi, pi).

Every Fourier coefficient in this package follows the single convention

    r_k = (1/2pi) * int_{-pi}^{pi} exp(-i*k*theta) rho(theta) dtheta,

so r_k is the coefficient of exp(i*k*theta) in the series of rho.  Integrals
are approximated by the periodic trapezoid rule on the uniform grid
theta_m = -pi + 2*pi*m/G (right endpoint excluded), which is spectrally
accurate for smooth integrands.  (1/2pi) * int(...) is therefore the plain
grid mean.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError


def theta_grid(grid_size: int) -> np.ndarray:
    """Uniform periodic grid theta_m = -pi + 2*pi*m/G, m = 0..G-1."""
    grid_size = int(grid_size)
    if grid_size < 4 or grid_size % 2 != 0:
        raise ValidationError(f"grid_size must be even and >= 4, got {grid_size}")
    return -np.pi + 2.0 * np.pi * np.arange(grid_size) / grid_size


def grid_mean(values) -> float | complex:
    """(1/2pi) * int rho dtheta by the periodic trapezoid rule."""
    return np.mean(values)


def grid_coeffs(values, lags) -> np.ndarray:
    """Fourier coefficients r_k of grid samples, for an array of lags k.

    Uses one FFT; exact for trigonometric polynomials of degree < G/2.
    """
    values = np.asarray(values)
    lags = np.asarray(lags, dtype=int)
    G = values.shape[-1]
    if np.any(np.abs(lags) >= G):
        raise ValidationError("requested lag exceeds grid resolution")
    # theta starts at -pi, hence the alternating sign relative to a raw FFT
    F = np.fft.fft(values, axis=-1)
    signs = np.where(lags % 2 == 0, 1.0, -1.0)
    return signs * np.take(F, np.mod(lags, G), axis=-1) / G


def synth_on_grid(coeffs, lags, grid_size: int) -> np.ndarray:
    """Evaluate sum_k c_k exp(i*k*theta) on theta_grid(grid_size).

    Exact inverse of :func:`grid_coeffs` when all |k| < G/2 and the lags are
    distinct modulo G.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    lags = np.asarray(lags, dtype=int)
    G = int(grid_size)
    if np.any(np.abs(lags) >= G):
        raise ValidationError("coefficient lag exceeds grid resolution")
    slots = np.mod(lags, G)
    if len(np.unique(slots)) != len(slots):
        raise ValidationError("coefficient lags collide modulo the grid size")
    z = np.zeros(G, dtype=complex)
    signs = np.where(lags % 2 == 0, 1.0, -1.0)
    z[slots] = signs * coeffs
    return np.fft.ifft(z) * G


def one_sided_synth(weights, grid_size: int, sign: int = 1) -> np.ndarray:
    """Evaluate sum_j w_j exp(sign * i*j*theta), j = 0..len(w)-1, on the grid."""
    weights = np.asarray(weights, dtype=complex)
    lags = sign * np.arange(len(weights))
    return synth_on_grid(weights, lags, grid_size)
