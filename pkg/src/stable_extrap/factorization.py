"""Canonical one-sided factorization of the reciprocal of a spectral density.

For a strictly positive density f the reciprocal admits

    1/f(theta) = |sum_j psi_j exp(-i*j*theta)|^2
               = |sum_j phi_j exp(-i*j*theta)|^(-2),

with one-sided minimum-phase sequences psi and phi that are convolution
inverses of each other.  The factor is computed by the cepstral method: take
log(1/f) on the grid, split its Fourier series into the analytic half, and
exponentiate that half as a formal power series.  The series exponential and
the series inverse are exact recurrences, so the only approximation is the
quadrature of the log-coefficients (spectrally accurate for smooth f) and the
truncation at the requested order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .densities import SpectralDensity, evaluate, validate_grid_size
from .errors import ConvergenceError, ValidationError
from .fourier import grid_coeffs, one_sided_synth


@dataclass
class FactorizationResult:
    psi: np.ndarray
    phi: np.ndarray
    residual: float
    grid_size: int

    def __post_init__(self):
        self.psi = np.asarray(self.psi, dtype=complex)
        self.phi = np.asarray(self.phi, dtype=complex)

    @property
    def order(self) -> int:
        return len(self.psi) - 1


def _series_exp(c: np.ndarray) -> np.ndarray:
    """Coefficients of exp(sum_k c_k z^k) as a power series, truncated to len(c)."""
    n = len(c)
    kc = np.arange(n) * c
    out = np.zeros(n, dtype=complex)
    out[0] = np.exp(c[0])
    for m in range(1, n):
        out[m] = np.dot(kc[1 : m + 1], out[m - 1 :: -1]) / m
    return out


def _series_inverse(psi: np.ndarray) -> np.ndarray:
    """Coefficients of 1/psi(z) truncated to len(psi)."""
    n = len(psi)
    out = np.zeros(n, dtype=complex)
    out[0] = 1.0 / psi[0]
    for m in range(1, n):
        out[m] = -np.dot(psi[1 : m + 1], out[m - 1 :: -1]) / psi[0]
    return out


def factorize_reciprocal(f: SpectralDensity, order: int | None = None,
                         grid_size: int = 2048, tol: float = 1e-6) -> FactorizationResult:
    """Cepstral factorization of 1/f; psi_0 is normalized real positive.

    ``order`` defaults to grid_size // 4.  Raises if f is not strictly
    positive on the grid or if the pointwise residual of
    |psi-synthesis|^2 * f - 1 exceeds ``tol``.
    """
    grid_size = validate_grid_size(grid_size)
    if order is None:
        order = grid_size // 4
    order = int(order)
    if order < 1 or order >= grid_size // 2:
        raise ValidationError(f"order must lie in [1, grid_size/2), got {order}")
    vals = evaluate(f, grid_size)
    if np.any(vals <= 0.0):
        raise ValidationError(
            f"density must be strictly positive on the grid (min {vals.min():g})"
        )
    log_recip = -np.log(vals)
    kappa = grid_coeffs(log_recip, np.arange(order + 1))
    # analytic half in the exp(-i j theta) variable: conj of the positive lags
    c = np.conj(kappa)
    c[0] = 0.5 * np.real(kappa[0])
    psi = _series_exp(c)
    phi = _series_inverse(psi)
    synth = one_sided_synth(psi, grid_size, sign=-1)
    residual = float(np.max(np.abs(np.abs(synth) ** 2 * vals - 1.0)))
    result = FactorizationResult(psi=psi, phi=phi, residual=residual, grid_size=grid_size)
    if residual > tol:
        raise ConvergenceError(
            f"factorization residual {residual:.3e} exceeds tolerance {tol:.1e} "
            f"(order={order}, grid_size={grid_size}); the density may be too rough "
            "or the truncation order too small",
            trace={"residual": residual, "order": order, "grid_size": grid_size},
        )
    return result


def b_coeffs_from_psi(result: FactorizationResult, max_lag: int):
    """Lag coefficients b_p = sum_k psi_k conj(psi_{k+p}) of 1/f, p = -K..K."""
    from .densities import FourierCoeffs

    K = int(max_lag)
    psi = result.psi
    pos = np.empty(K + 1, dtype=complex)
    for p in range(K + 1):
        tail = psi[p:]
        pos[p] = np.sum(psi[: len(tail)] * np.conj(tail))
    vals = np.concatenate([np.conj(pos[1:][::-1]), pos])
    return FourierCoeffs(lags=np.arange(-K, K + 1), values=vals)


def impulse_residual(result: FactorizationResult) -> float:
    """Max deviation of conv(psi, phi) from the unit impulse over lags 0..order."""
    conv = np.convolve(result.psi, result.phi)[: result.order + 1]
    conv[0] -= 1.0
    return float(np.max(np.abs(conv)))


def lower_triangular_toeplitz(seq: np.ndarray, size: int) -> np.ndarray:
    """Dense (size x size) matrix T with T[i, j] = seq[i-j] for i >= j, else 0."""
    seq = np.asarray(seq, dtype=complex)
    out = np.zeros((size, size), dtype=complex)
    for d in range(min(size, len(seq))):
        idx = np.arange(size - d)
        out[idx + d, idx] = seq[d]
    return out
