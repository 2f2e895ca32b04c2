"""Optimal and minimax-robust linear extrapolation for heavy-tailed sequences.

The package estimates a linear functional of the unobserved future of a
harmonizable sequence from its noisy past, for tail indices 1 < alpha <= 2,
and solves the robust version of the problem over moment / contamination
classes of spectral densities.
"""

from .densities import (
    Autoregressive,
    Contaminated,
    FourierCoeffs,
    MovingAverage,
    Rational,
    SpectralDensity,
    Tabulated,
    White,
    check_minimality,
    density_from_spec,
    density_to_spec,
    evaluate,
    fourier_coeffs,
)
from .errors import ConvergenceError, NumericalError, ValidationError
from .extrapolate import (
    EstimateReport,
    SpectralCharacteristic,
    extrapolate_noiseless_gauss,
    extrapolate_noisy_gauss,
)
from .factorization import (
    FactorizationResult,
    b_coeffs_from_psi,
    factorize_reciprocal,
    impulse_residual,
)
from .minimax import (
    DensityClassF,
    DensityClassG,
    MinimaxSolution,
    least_favorable_eigen,
    least_favorable_gauss,
    least_favorable_stable,
    least_favorable_stable_noiseless,
    lf_exponent,
    power_iteration,
    saddle_certificate,
)
from .montecarlo import (
    SimulationConfig,
    SimulationReport,
    perturbation_witness,
    sample_sas,
    simulate_gauss,
    simulate_stable_path,
)
from .operators import (
    CoefficientSolution,
    ToeplitzOperator,
    b_inverse_via_phi,
    build_brq,
    build_brq_from_grids,
    solve_coeffs,
)
from .signed_power import signed_pow, signed_pow_grid, signed_root
from .stable import StableProblem, StableSolution, solve_stable_noiseless, solve_stable_noisy

__all__ = [
    "Autoregressive",
    "CoefficientSolution",
    "Contaminated",
    "ConvergenceError",
    "DensityClassF",
    "DensityClassG",
    "EstimateReport",
    "FactorizationResult",
    "FourierCoeffs",
    "MinimaxSolution",
    "MovingAverage",
    "NumericalError",
    "Rational",
    "SimulationConfig",
    "SimulationReport",
    "SpectralCharacteristic",
    "SpectralDensity",
    "StableProblem",
    "StableSolution",
    "Tabulated",
    "ToeplitzOperator",
    "ValidationError",
    "White",
    "b_coeffs_from_psi",
    "b_inverse_via_phi",
    "build_brq",
    "build_brq_from_grids",
    "check_minimality",
    "density_from_spec",
    "density_to_spec",
    "evaluate",
    "extrapolate_noiseless_gauss",
    "extrapolate_noisy_gauss",
    "factorize_reciprocal",
    "fourier_coeffs",
    "impulse_residual",
    "least_favorable_eigen",
    "least_favorable_gauss",
    "least_favorable_stable",
    "least_favorable_stable_noiseless",
    "lf_exponent",
    "perturbation_witness",
    "power_iteration",
    "saddle_certificate",
    "sample_sas",
    "signed_pow",
    "signed_pow_grid",
    "signed_root",
    "simulate_gauss",
    "simulate_stable_path",
    "solve_coeffs",
    "solve_stable_noiseless",
    "solve_stable_noisy",
]

__version__ = "0.1.0"
