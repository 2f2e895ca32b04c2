"""Truncated Toeplitz operators driving the stationary (alpha = 2) solve.

Three operators are assembled from the observation densities:

    B from 1/(f+g),   R from f/(f+g),   Q from f*g/(f+g).

Entry (k, j) of each is the Fourier coefficient (1/2pi) int exp(i(j-k)theta)
of the generating ratio, i.e. lag k-j in the r_k convention of
:mod:`stable_extrap.fourier`.  Operators are truncated to a finite size N;
quantities that depend on the truncation are compared across routes on the
leading block only, where boundary distortion is negligible.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import linalg as sla

from .densities import SpectralDensity, evaluate, fourier_coeffs, validate_grid_size
from .errors import NumericalError, ValidationError
from .factorization import FactorizationResult, lower_triangular_toeplitz


@dataclass
class ToeplitzOperator:
    """Hermitian Toeplitz matrix defined by one-sided lags r_0..r_{N-1}."""

    lags: np.ndarray  # r_p for p = 0..size-1; r_{-p} = conj(r_p)
    size: int

    def __post_init__(self):
        self.lags = np.asarray(self.lags, dtype=complex)
        if len(self.lags) < self.size:
            raise ValidationError("need at least `size` lags to build the operator")

    def matrix(self) -> np.ndarray:
        c = self.lags[: self.size]
        return sla.toeplitz(c, np.conj(c))

    def apply(self, vec) -> np.ndarray:
        vec = np.asarray(vec, dtype=complex)
        if len(vec) > self.size:
            raise ValidationError("vector longer than operator size")
        padded = np.zeros(self.size, dtype=complex)
        padded[: len(vec)] = vec
        return self.matrix() @ padded


@dataclass
class CoefficientSolution:
    c: np.ndarray
    solve_residual: float
    condition_estimate: float


def _ratio_operator(numer, denom, size) -> ToeplitzOperator:
    coeffs = fourier_coeffs(numer / denom, size - 1)
    pos = coeffs.values[size - 1 :]
    return ToeplitzOperator(lags=pos, size=size)


def build_brq_from_grids(fv, gv, size: int):
    """(B, R, Q) from already-evaluated grid values of f and g."""
    fv = np.asarray(fv, dtype=float)
    gv = np.asarray(gv, dtype=float)
    size = int(size)
    if size < 1:
        raise ValidationError("operator size must be >= 1")
    if size > len(fv) // 4:
        raise ValidationError(
            f"operator size {size} too large for grid {len(fv)} (need size <= G/4)"
        )
    total = fv + gv
    if np.any(total <= 0.0):
        raise ValidationError("f + g must be strictly positive on the grid")
    B = _ratio_operator(np.ones_like(total), total, size)
    R = _ratio_operator(fv, total, size)
    Q = _ratio_operator(fv * gv, total, size)
    Bm = B.matrix()
    try:
        np.linalg.cholesky(Bm)
    except np.linalg.LinAlgError:
        smallest = float(np.linalg.eigvalsh(Bm)[0])
        raise NumericalError(
            f"operator B is not positive definite (smallest eigenvalue {smallest:.3e}); "
            "check density positivity and grid resolution"
        )
    return B, R, Q


def build_brq(f: SpectralDensity, g: SpectralDensity, size: int = 128,
              grid_size: int = 2048):
    """Assemble the (B, R, Q) triple for densities f (signal) and g (noise).

    B must come out positive definite; a Cholesky failure is reported with the
    smallest eigenvalue attached, since it signals a quadrature or positivity
    problem rather than a generic linear-algebra error.
    """
    grid_size = validate_grid_size(grid_size)
    fv = evaluate(f, grid_size)
    gv = evaluate(g, grid_size)
    return build_brq_from_grids(fv, gv, size)


def solve_coeffs(B: ToeplitzOperator, R: ToeplitzOperator, a) -> CoefficientSolution:
    """Solve B c = R a by a Hermitian factorization; residual recorded."""
    a = np.atleast_1d(np.asarray(a, dtype=complex))
    if len(a) > B.size:
        raise ValidationError(f"functional length {len(a)} exceeds operator size {B.size}")
    rhs = R.apply(a)
    Bm = B.matrix()
    cond = float(np.linalg.cond(Bm))
    if not np.isfinite(cond):
        raise NumericalError("operator B is numerically singular")
    if cond > 1e12:
        warnings.warn(
            f"operator B is ill conditioned (estimate {cond:.3e}); "
            "coefficients may lose accuracy",
            RuntimeWarning,
        )
    try:
        cho = sla.cho_factor(Bm)
        c = sla.cho_solve(cho, rhs)
    except sla.LinAlgError as exc:
        raise NumericalError(f"Hermitian solve failed: {exc}")
    residual = float(np.linalg.norm(Bm @ c - rhs))
    return CoefficientSolution(c=c, solve_residual=residual, condition_estimate=cond)


def b_inverse_via_phi(fact: FactorizationResult, size: int) -> np.ndarray:
    """Leading (size x size) block of the inverse operator, from the phi factor.

    The product conj(Phi) Phi^T of lower-triangular Toeplitz matrices built
    from phi terminates within the block, so no boundary correction is needed.
    """
    size = int(size)
    if size < 1:
        raise ValidationError("size must be >= 1")
    phi = fact.phi
    if len(phi) < size:
        raise ValidationError("factorization order too small for the requested block")
    Phi = lower_triangular_toeplitz(phi, size)
    return np.conj(Phi) @ Phi.T
