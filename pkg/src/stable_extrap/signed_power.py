"""Signed power of a complex number: z -> |z|**(beta-1) * conj(z).

This nonlinearity replaces plain conjugation once the tail index drops below
2; at beta = 1 it degenerates to conj(z), which is what makes every formula
downstream collapse to the familiar linear one.
"""

from __future__ import annotations

import cmath

import numpy as np

from .errors import ValidationError


def _check_beta(beta) -> float:
    beta = float(beta)
    if not np.isfinite(beta) or beta <= 0.0:
        raise ValidationError(f"beta must be a positive real, got {beta}")
    return beta


def _check_value(z) -> complex:
    z = complex(z)
    if not (cmath.isfinite(z)):
        raise ValidationError(f"non-finite complex value {z} not admitted")
    return z


def signed_pow(z, beta) -> complex:
    """Return |z|**(beta-1) * conj(z).

    Exact zero for z == 0 when beta >= 1; z == 0 with beta < 1 is rejected
    because the map is unbounded there.
    """
    beta = _check_beta(beta)
    z = _check_value(z)
    if z == 0:
        if beta < 1.0:
            raise ValidationError("signed_pow is unbounded at z = 0 for beta < 1")
        return 0j
    return abs(z) ** (beta - 1.0) * z.conjugate()


def signed_root(v, beta) -> complex:
    """Inverse of :func:`signed_pow`: |v|**((1-beta)/beta) * conj(v)."""
    beta = _check_beta(beta)
    v = _check_value(v)
    if v == 0:
        if beta > 1.0:
            raise ValidationError("signed_root is unbounded at v = 0 for beta > 1")
        return 0j
    return abs(v) ** ((1.0 - beta) / beta) * v.conjugate()


def signed_pow_grid(z, beta, smoothing: float = 0.0) -> np.ndarray:
    """Vectorized signed power for grid arrays.

    ``smoothing`` replaces |z| by sqrt(|z|^2 + smoothing^2); solvers use a tiny
    positive value to keep derivatives bounded near zeros, certificates use 0.
    """
    z = np.asarray(z, dtype=complex)
    m2 = z.real * z.real + z.imag * z.imag + smoothing * smoothing
    with np.errstate(divide="ignore"):
        scale = m2 ** ((float(beta) - 1.0) / 2.0)
    return scale * np.conj(z)
