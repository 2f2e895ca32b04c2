"""Optimal linear extrapolation for stationary sequences (alpha = 2).

The estimator's frequency response h is one-sided (negative frequencies
only).  With noisy observations it is assembled from the closed form

    h(theta) = (A(e^{i theta}) f - C(e^{i theta})) / (f + g),

where the coefficients of C solve the Toeplitz system B c = R a; without
noise the equivalent form h = A - C / f applies with B built from 1/f.  The
error value is reported from the bilinear form (exact under truncation) and
cross-checked against grid quadrature, and for noiseless observations also
against the factorization route.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .densities import (
    SpectralDensity,
    White,
    check_minimality,
    evaluate,
    validate_functional_coeffs,
    validate_grid_size,
)
from .errors import ConvergenceError, ValidationError
from .factorization import factorize_reciprocal
from .fourier import grid_coeffs, one_sided_synth, synth_on_grid
from .operators import build_brq, solve_coeffs

DEFAULT_SIZE = 128
DEFAULT_GRID = 2048


@dataclass
class SpectralCharacteristic:
    """Frequency response of a one-sided (past-measurable) linear estimator."""

    negative_coeffs: np.ndarray  # h_{-1}, h_{-2}, ..., h_{-M}
    grid_values: np.ndarray
    alpha: float
    grid_size: int

    def __post_init__(self):
        self.negative_coeffs = np.asarray(self.negative_coeffs, dtype=complex)
        self.grid_values = np.asarray(self.grid_values, dtype=complex)

    @classmethod
    def from_grid(cls, grid_values, alpha, num_coeffs):
        G = len(grid_values)
        lags = -np.arange(1, num_coeffs + 1)
        neg = grid_coeffs(grid_values, lags)
        return cls(negative_coeffs=neg, grid_values=np.asarray(grid_values, dtype=complex),
                   alpha=float(alpha), grid_size=G)

    @classmethod
    def from_coeffs(cls, negative_coeffs, alpha, grid_size):
        negative_coeffs = np.asarray(negative_coeffs, dtype=complex)
        lags = -np.arange(1, len(negative_coeffs) + 1)
        vals = synth_on_grid(negative_coeffs, lags, grid_size)
        return cls(negative_coeffs=negative_coeffs, grid_values=vals,
                   alpha=float(alpha), grid_size=grid_size)

    def one_sidedness_residual(self, num_lags: int | None = None) -> float:
        """Largest |r_k| of the grid values over lags k >= 0."""
        if num_lags is None:
            num_lags = self.grid_size // 4
        lags = np.arange(0, num_lags + 1)
        return float(np.max(np.abs(grid_coeffs(self.grid_values, lags))))

    def synthesis_residual(self) -> float:
        lags = -np.arange(1, len(self.negative_coeffs) + 1)
        synth = synth_on_grid(self.negative_coeffs, lags, self.grid_size)
        return float(np.max(np.abs(synth - self.grid_values)))


@dataclass
class EstimateReport:
    h: SpectralCharacteristic
    c: np.ndarray
    error_value: float
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=complex)


def _functional_on_grid(a, grid_size):
    return one_sided_synth(a, grid_size, sign=1)


def factor_route_error(phi, a) -> float:
    """Error via the causal factor of f: sum_j |sum_m phi_m a_{j+m}|^2.

    Only j = 0..len(a)-1 contribute because a has finite support; given the
    exact factor this equals the bilinear-form value for the untruncated
    operator.
    """
    phi = np.asarray(phi, dtype=complex)
    a = np.asarray(a, dtype=complex)
    total = 0.0
    for j in range(len(a)):
        ms = np.arange(min(len(a) - j, len(phi)))
        total += abs(np.sum(phi[ms] * a[j + ms])) ** 2
    return float(total)


def _orthogonality_residual(A_grid, h_grid, fv, gv, num_lags):
    """Max |r_{-m}((A - h) f - h g)| over m = 1..num_lags (projection condition)."""
    defect = (A_grid - h_grid) * fv - h_grid * gv
    lags = -np.arange(1, num_lags + 1)
    return float(np.max(np.abs(grid_coeffs(defect, lags))))


def extrapolate_noisy_gauss(f: SpectralDensity, g: SpectralDensity, a,
                            size: int = DEFAULT_SIZE, grid_size: int = DEFAULT_GRID,
                            cross_check_tol: float = 1e-4) -> EstimateReport:
    """Optimal estimate of sum_j a_j xi_j from past noisy observations, alpha = 2."""
    a = validate_functional_coeffs(a)
    size = int(size)
    grid_size = validate_grid_size(grid_size)
    if size < 4 * len(a):
        raise ValidationError(
            f"operator size {size} too small for functional length {len(a)} "
            "(need size >= 4 * len(a) for truncation accuracy)"
        )
    minimality = check_minimality(f, g, 2.0, grid_size=max(512, grid_size // 4))
    if not minimality.passes:
        raise ValidationError(
            "minimality check failed for f + g: reciprocal quadrature grows as "
            f"{minimality.history}; the projection problem is ill posed"
        )
    B, R, Q = build_brq(f, g, size=size, grid_size=grid_size)
    sol = solve_coeffs(B, R, a)

    fv = evaluate(f, grid_size)
    gv = evaluate(g, grid_size)
    total = fv + gv
    A_grid = _functional_on_grid(a, grid_size)
    C_grid = one_sided_synth(sol.c, grid_size, sign=1)
    h_grid = (A_grid * fv - C_grid) / total

    # error, two ways: bilinear form and grid quadrature of the two integrals
    a_pad = np.zeros(size, dtype=complex)
    a_pad[: len(a)] = a
    Ra = R.apply(a)
    bilinear = np.vdot(sol.c, Ra) + np.vdot(a_pad, Q.apply(a))
    error_bilinear = float(np.real(bilinear))
    quad = np.mean(np.abs(A_grid - h_grid) ** 2 * fv) + np.mean(np.abs(h_grid) ** 2 * gv)
    error_quadrature = float(quad)
    scale = max(abs(error_bilinear), abs(error_quadrature), 1e-300)
    rel_gap = abs(error_bilinear - error_quadrature) / scale
    if rel_gap > cross_check_tol:
        raise ConvergenceError(
            f"error cross-check diverged (relative gap {rel_gap:.3e}); "
            "increase the operator size N",
            trace={"bilinear": error_bilinear, "quadrature": error_quadrature},
        )

    h = SpectralCharacteristic.from_grid(h_grid, alpha=2.0, num_coeffs=size)
    diagnostics = {
        "error_bilinear": error_bilinear,
        "error_quadrature": error_quadrature,
        "error_routes_rel_gap": rel_gap,
        "one_sidedness": h.one_sidedness_residual(size // 2),
        "orthogonality": _orthogonality_residual(A_grid, h_grid, fv, gv, size // 2),
        "solve_residual": sol.solve_residual,
        "condition_estimate": sol.condition_estimate,
        "size": size,
        "grid_size": grid_size,
        "minimality_integral": minimality.integral,
    }
    return EstimateReport(h=h, c=sol.c, error_value=error_bilinear, diagnostics=diagnostics)


def extrapolate_noiseless_gauss(f: SpectralDensity, a, size: int = DEFAULT_SIZE,
                                grid_size: int = DEFAULT_GRID,
                                cross_check_tol: float = 1e-4) -> EstimateReport:
    """Noise-free special case; adds the factorization route for the error.

    The three error values (quadrature, bilinear form, squared norm of the
    shifted correlations of the causal factor against a) must agree; their
    worst relative gap is recorded and gated by ``cross_check_tol``.
    """
    a = validate_functional_coeffs(a)
    report = extrapolate_noisy_gauss(f, White(0.0), a, size=size, grid_size=grid_size,
                                     cross_check_tol=cross_check_tol)

    # factorization route: f = |phi-synthesis|^2, error = sum_j |sum_m phi_m a_{j+m}|^2
    fact = factorize_reciprocal(f, order=max(size, grid_size // 4), grid_size=grid_size)
    error_factor = factor_route_error(fact.phi, a)

    err = report.error_value
    scale = max(abs(err), abs(error_factor), 1e-300)
    rel_gap = abs(err - error_factor) / scale
    if rel_gap > cross_check_tol:
        raise ConvergenceError(
            f"factorization error route diverged (relative gap {rel_gap:.3e}); "
            "increase the truncation order",
            trace={"bilinear": err, "factorization": error_factor},
        )
    report.diagnostics["error_factorization"] = error_factor
    report.diagnostics["factorization_residual"] = fact.residual
    report.diagnostics["error_routes_rel_gap"] = max(
        report.diagnostics["error_routes_rel_gap"], rel_gap
    )
    return report
