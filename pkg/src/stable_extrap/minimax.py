"""Least favorable spectral densities and minimax spectral characteristics.

Admissible classes:

    class F (moment):        (1/2pi) int f^beta  = p1,   beta >= 1
    class G (contamination): g = (1-eps) g1 + eps w,  (1/2pi) int g = p2

The least favorable pair is characterized by pointwise multiplier equations;
this module finds it by alternating fixed-point iteration.  Given the current
pair, the inner extrapolation problem is solved exactly; the density updates
then re-impose the multiplier equations:

  * the f update inverts |A - h|^alpha = gamma1 * f^(beta-1) in closed form
    (beta > 1), with gamma1 pinned by the moment budget;
  * the g update is a water-filling step: g stays at its contamination floor
    where the estimator response is small and is raised where it is large,
    with the level located by bisection on the mass budget.  At alpha = 2 the
    raised level is solved exactly from the closed-form response (so the
    equalization |h|^2 = gamma2 holds on the wet set at the fixed point);
    for alpha < 2 a damped multiplicative equalization is used instead.

Every returned solution carries a certificate: constraint and multiplier
equation residuals, complementarity of the wet set, and a randomized check of
both saddle-point inequalities.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .densities import (
    SpectralDensity,
    Tabulated,
    White,
    evaluate,
    validate_functional_coeffs,
    validate_grid_size,
)
from .errors import ConvergenceError, ValidationError
from .extrapolate import SpectralCharacteristic, factor_route_error
from .factorization import lower_triangular_toeplitz
from .fourier import one_sided_synth, synth_on_grid, theta_grid
from .operators import build_brq_from_grids, solve_coeffs
from .signed_power import signed_pow_grid
from .stable import StableProblem, solve_stable_noiseless, solve_stable_noisy

DENSITY_FLOOR = 1e-14


@dataclass
class DensityClassF:
    """Moment class: (1/2pi) int f^beta = p1."""

    beta: float
    p1: float

    def __post_init__(self):
        self.beta = float(self.beta)
        self.p1 = float(self.p1)
        if self.beta < 1.0:
            raise ValidationError(f"beta must be >= 1, got {self.beta}")
        if self.p1 <= 0.0:
            raise ValidationError(f"p1 must be positive, got {self.p1}")


@dataclass
class DensityClassG:
    """Contamination class: g = (1-eps) g1 + eps w with (1/2pi) int g = p2."""

    epsilon: float
    g1: SpectralDensity
    p2: float

    def __post_init__(self):
        self.epsilon = float(self.epsilon)
        self.p2 = float(self.p2)
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValidationError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        if self.p2 <= 0.0:
            raise ValidationError(f"p2 must be positive, got {self.p2}")

    def envelope(self, grid_size):
        return (1.0 - self.epsilon) * evaluate(self.g1, grid_size)

    def validate_feasible(self, grid_size):
        floor_mass = float(np.mean(self.envelope(grid_size)))
        if floor_mass > self.p2 * (1.0 + 1e-9):
            raise ValidationError(
                f"contamination class infeasible: floor mass {floor_mass:g} exceeds p2 {self.p2:g}"
            )
        if self.epsilon == 0.0 and abs(floor_mass - self.p2) > 1e-9 * max(self.p2, 1.0):
            raise ValidationError(
                "epsilon = 0 pins g = g1, which requires p2 = (1/2pi) int g1 "
                f"(got p2 {self.p2:g} vs {floor_mass:g})"
            )
        return floor_mass


@dataclass
class MinimaxSolution:
    f0: Tabulated
    g0: Tabulated | None
    h0: SpectralCharacteristic | None
    gamma1: float | None
    gamma2: float | None
    phi1: np.ndarray | None
    error_value: float
    residuals: dict = field(default_factory=dict)
    certificate: dict | None = None
    iterations: int = 0
    # eigen-route extras
    mode: str | None = None
    top_value: float | None = None
    phi_vector: np.ndarray | None = None
    ma_weights: np.ndarray | None = None
    degenerate: bool = False
    notes: tuple = ()


# ---------------------------------------------------------------------------
# randomized saddle certificate


def _random_positive_grid(rng, grid_size, order=4, scale=0.5):
    theta = theta_grid(grid_size)
    t = np.zeros(grid_size)
    for k in range(1, order + 1):
        xk, yk = rng.standard_normal(2)
        t += (scale / k) * (xk * np.cos(k * theta) + yk * np.sin(k * theta))
    return np.exp(t)


def sample_feasible_f(rng, class_f: DensityClassF, grid_size):
    raw = _random_positive_grid(rng, grid_size)
    c = (class_f.p1 / float(np.mean(raw**class_f.beta))) ** (1.0 / class_f.beta)
    return c * raw


def sample_feasible_g(rng, class_g: DensityClassG, grid_size):
    env = class_g.envelope(grid_size)
    if class_g.epsilon == 0.0:
        return evaluate(class_g.g1, grid_size)
    free_mass = class_g.p2 - float(np.mean(env))
    if free_mass <= 0.0:
        return env
    raw = _random_positive_grid(rng, grid_size)
    w = raw * (free_mass / (class_g.epsilon * float(np.mean(raw))))
    return env + class_g.epsilon * w


def saddle_certificate(alpha, h0: SpectralCharacteristic, a, f0v, g0v,
                       class_f: DensityClassF, class_g: DensityClassG | None,
                       num_samples: int = 200, seed: int = 20260809,
                       tol: float = 1e-5) -> dict:
    """Randomized check of both saddle inequalities around (h0, f0, g0).

    Each sample uses its own spawned random stream, so the result does not
    depend on evaluation order.
    """
    G = len(f0v)
    A_grid = one_sided_synth(a, G, sign=1)
    u = np.abs(A_grid - h0.grid_values) ** alpha
    v = np.abs(h0.grid_values) ** alpha
    value = float(np.mean(u * f0v) + np.mean(v * g0v))

    streams = np.random.SeedSequence(seed).spawn(2 * num_samples)
    worst_right = -np.inf
    for i in range(num_samples):
        rng = np.random.default_rng(streams[i])
        fs = sample_feasible_f(rng, class_f, G)
        gs = sample_feasible_g(rng, class_g, G) if class_g is not None else g0v
        delta = float(np.mean(u * fs) + np.mean(v * gs))
        worst_right = max(worst_right, delta - value)

    # left half: perturb the one-sided response around the inner optimum
    base = h0.negative_coeffs
    scale = 0.1 * (np.max(np.abs(base)) if len(base) else 0.0) + 0.05
    worst_left = -np.inf
    lags = -np.arange(1, len(base) + 1)
    for i in range(num_samples):
        rng = np.random.default_rng(streams[num_samples + i])
        delta_coeffs = scale * (rng.standard_normal(len(base))
                                + 1j * rng.standard_normal(len(base)))
        h_try = synth_on_grid(base + delta_coeffs, lags, G)
        delta = float(np.mean(np.abs(A_grid - h_try) ** alpha * f0v)
                      + np.mean(np.abs(h_try) ** alpha * g0v))
        worst_left = max(worst_left, value - delta)

    return {
        "value": value,
        "max_right_violation": worst_right,  # Delta(h0; f, g) - Delta(h0; f0, g0)
        "max_left_violation": worst_left,    # Delta(h0; f0, g0) - Delta(h; f0, g0)
        "num_samples": num_samples,
        "tolerance": tol,
        "passes": bool(worst_right <= tol and worst_left <= tol),
    }


# ---------------------------------------------------------------------------
# alternating fixed point, noisy observations


def _gauss_core(f0v, g0v, a, size, grid_size):
    """alpha = 2 inner solve straight from grid values (no density wrappers)."""
    B, R, Q = build_brq_from_grids(f0v, g0v, size)
    sol = solve_coeffs(B, R, a)
    A_grid = one_sided_synth(a, grid_size, sign=1)
    C_grid = one_sided_synth(sol.c, grid_size, sign=1)
    h_grid = (A_grid * f0v - C_grid) / (f0v + g0v)
    a_pad = np.zeros(size, dtype=complex)
    a_pad[: len(a)] = a
    error = float(np.real(np.vdot(sol.c, R.apply(a)) + np.vdot(a_pad, Q.apply(a))))
    h = SpectralCharacteristic.from_grid(h_grid, alpha=2.0, num_coeffs=size)
    return h, C_grid, error


def _inner_solve(alpha, f0v, g0v, a, inner_size, num_coeffs, grid_size, warm):
    """Solve the inner extrapolation problem on the current density grids.

    Returns (h0, C_grid, error, warm) where warm carries the next warm start.
    """
    if alpha == 2.0:
        h, C_grid, error = _gauss_core(f0v, g0v, a, inner_size, grid_size)
        return h, C_grid, error, None
    problem = StableProblem(alpha=alpha, f=Tabulated(grid_values=tuple(f0v)),
                            g=Tabulated(grid_values=tuple(g0v)), a=a,
                            num_coeffs=num_coeffs, grid_size=grid_size)
    sol = solve_stable_noisy(problem, initial_coeffs=warm)
    C_grid = one_sided_synth(sol.c_coeffs, grid_size, sign=1)
    return sol.h, C_grid, sol.error_value, sol.h.negative_coeffs


def _f_update(alpha, beta, p1, A_grid, h_grid):
    u = np.abs(A_grid - h_grid) ** alpha
    expo = beta / (beta - 1.0)
    gamma1 = (float(np.mean(u**expo)) / p1) ** ((beta - 1.0) / beta)
    f_new = (u / gamma1) ** (1.0 / (beta - 1.0))
    return np.maximum(f_new, DENSITY_FLOOR * max(f_new.max(), 1.0)), gamma1


def _mass_bisect(mass_of, p2, lo=1e-12, hi=1e12, iters=200):
    """Find gamma with mass_of(gamma) = p2; mass_of must be nonincreasing."""
    m_lo, m_hi = mass_of(lo), mass_of(hi)
    while m_hi > p2 and hi < 1e50:
        hi *= 16.0
        m_hi = mass_of(hi)
    while m_lo < p2 and lo > 1e-50:
        lo /= 16.0
        m_lo = mass_of(lo)
    if m_lo < p2:
        return None  # even the smallest level cannot place the mass
    for _ in range(iters):
        mid = np.sqrt(lo * hi)
        if mass_of(mid) >= p2:
            lo = mid
        else:
            hi = mid
    return np.sqrt(lo * hi)


def _g_update(alpha, env, free_mass, p2, f0v, g0v, A_grid, C_grid, h_grid):
    """Water-filling step; returns (g_new, gamma2 or None)."""
    if free_mass <= 1e-12 * max(p2, 1.0):
        return env.copy(), None

    if alpha == 2.0:
        # exact level from h = (A f - C) / (f + g): |h| = sqrt(gamma2) there
        numer = np.abs(A_grid * f0v - C_grid)

        def mass_of(gamma2):
            level = numer / np.sqrt(gamma2) - f0v
            return float(np.mean(np.maximum(env, level)))

        gamma2 = _mass_bisect(mass_of, p2)
        if gamma2 is None:
            # response is flat zero: every allocation is optimal, spread evenly
            return env + free_mass, 0.0
        return np.maximum(env, numer / np.sqrt(gamma2) - f0v), float(gamma2)

    response = np.abs(h_grid) ** alpha
    kappa = 0.8  # damping of the multiplicative equalization

    def mass_of(gamma2):
        return float(np.mean(np.maximum(env, g0v * (response / gamma2) ** kappa)))

    gamma2 = _mass_bisect(mass_of, p2)
    if gamma2 is None:
        return env + free_mass, 0.0
    return np.maximum(env, g0v * (response / gamma2) ** kappa), float(gamma2)


def least_favorable_stable(alpha, class_f: DensityClassF, class_g: DensityClassG,
                           a, num_coeffs: int | None = None, grid_size: int = 512,
                           inner_size: int = 64, tol: float = 1e-6,
                           max_iter: int = 500, certify: bool = True,
                           certificate_seed: int = 20260809,
                           f0_init=None, g0_init=None) -> MinimaxSolution:
    """Least favorable (f0, g0) and minimax response for noisy observations."""
    alpha = float(alpha)
    if not 1.0 < alpha <= 2.0:
        raise ValidationError(f"alpha must lie in (1, 2], got {alpha}")
    if class_f.beta == 1.0:
        raise ValidationError(
            "beta = 1 with noisy observations is unsupported: the moment "
            "equation degenerates; use the noiseless eigen route"
        )
    a = validate_functional_coeffs(a)
    grid_size = validate_grid_size(grid_size)
    if num_coeffs is None:
        num_coeffs = 4 * len(a)
    class_g.validate_feasible(grid_size)

    G = grid_size
    env = class_g.envelope(G)
    free_mass = class_g.p2 - float(np.mean(env))
    A_grid = one_sided_synth(a, G, sign=1)

    f0v = (np.asarray(f0_init, dtype=float).copy() if f0_init is not None
           else np.full(G, class_f.p1 ** (1.0 / class_f.beta)))
    g0v = (np.asarray(g0_init, dtype=float).copy() if g0_init is not None
           else env + free_mass)

    warm = None
    gamma1 = gamma2 = None
    h0 = None
    error = np.nan
    prev_change = np.inf
    converged = False
    iterations = 0
    for it in range(max_iter):
        iterations = it + 1
        h0, C_grid, error, warm = _inner_solve(alpha, f0v, g0v, a, inner_size,
                                               num_coeffs, G, warm)
        f_new, gamma1 = _f_update(alpha, class_f.beta, class_f.p1, A_grid,
                                  h0.grid_values)
        g_new, gamma2 = _g_update(alpha, env, free_mass, class_g.p2, f0v, g0v,
                                  A_grid, C_grid, h0.grid_values)
        change = max(
            float(np.max(np.abs(f_new - f0v))) / max(float(np.max(f0v)), 1e-300),
            float(np.max(np.abs(g_new - g0v))) / max(float(np.max(g0v)), 1e-300),
        )
        relax = 0.5 if change >= prev_change else 1.0
        f0v = f0v + relax * (f_new - f0v)
        g0v = g0v + relax * (g_new - g0v)
        prev_change = change
        if change < tol:
            converged = True
            break
    if not converged:
        raise ConvergenceError(
            f"alternating iteration did not converge in {max_iter} steps "
            f"(last change {prev_change:.3e})",
            trace={"iterations": iterations, "last_change": prev_change},
        )

    # final inner solve on the converged pair
    h0, C_grid, error, _ = _inner_solve(alpha, f0v, g0v, a, inner_size,
                                        num_coeffs, G, warm)
    return _package_noisy(alpha, class_f, class_g, a, f0v, g0v, env, h0, error,
                          gamma1, gamma2, A_grid, iterations, certify,
                          certificate_seed, tol)


def _package_noisy(alpha, class_f, class_g, a, f0v, g0v, env, h0, error,
                   gamma1, gamma2, A_grid, iterations, certify, seed, tol):
    u = np.abs(A_grid - h0.grid_values) ** alpha
    response = np.abs(h0.grid_values) ** alpha
    if gamma2 is None:
        gamma2 = float(np.max(response))
    wet = g0v > env + 1e-9 * max(float(np.max(g0v)), 1.0)
    phi1 = np.minimum(response - gamma2, 0.0)
    comp_residual = float(np.max(np.abs(response[wet] - gamma2))) if np.any(wet) else 0.0
    positivity_violation = float(np.max(np.maximum(response - gamma2, 0.0)))
    scale_u = max(float(np.max(u)), 1e-300)
    # response and gamma2 both vanish in degenerate (useless-estimator) cases;
    # fall back to a scale tied to the error value so 0/0 does not alarm
    scale_g = max(gamma2, float(np.max(response)), 1e-9 * (1.0 + abs(error)))
    residuals = {
        "constraint_f": abs(float(np.mean(f0v**class_f.beta)) - class_f.p1) / class_f.p1,
        "constraint_g": abs(float(np.mean(g0v)) - class_g.p2) / class_g.p2,
        "eq_f": float(np.max(np.abs(u - gamma1 * f0v ** (class_f.beta - 1.0)))) / scale_u,
        "complementarity": comp_residual / scale_g,
        "phi1_positive_part": positivity_violation / scale_g,
    }
    certificate = None
    if certify:
        certificate = saddle_certificate(alpha, h0, a, f0v, g0v, class_f, class_g,
                                         seed=seed, tol=1e-5)
    return MinimaxSolution(
        f0=Tabulated(grid_values=tuple(f0v)),
        g0=Tabulated(grid_values=tuple(g0v)),
        h0=h0,
        gamma1=float(gamma1) if gamma1 is not None else None,
        gamma2=float(gamma2),
        phi1=phi1,
        error_value=float(error),
        residuals=residuals,
        certificate=certificate,
        iterations=iterations,
    )


def least_favorable_gauss(class_f: DensityClassF, class_g: DensityClassG, a,
                          size: int = 64, grid_size: int = 512, **kwargs) -> MinimaxSolution:
    """alpha = 2 front end of :func:`least_favorable_stable`."""
    return least_favorable_stable(2.0, class_f, class_g, a, inner_size=size,
                                  grid_size=grid_size, **kwargs)


# ---------------------------------------------------------------------------
# noiseless fixed point (closed-form density shape)


def lf_exponent(alpha: float, beta: float) -> float:
    """Exponent of |C| in the noiseless least favorable density."""
    return alpha / (alpha + (alpha - 1.0) * (beta - 1.0))


def least_favorable_stable_noiseless(alpha, class_f: DensityClassF, a,
                                     num_coeffs: int | None = None,
                                     grid_size: int = 512, inner_size: int = 64,
                                     tol: float = 1e-8, max_iter: int = 500,
                                     certify: bool = True,
                                     certificate_seed: int = 20260809,
                                     relaxation: float = 1.0) -> MinimaxSolution:
    """Least favorable density for noise-free observations over the moment class."""
    alpha = float(alpha)
    if not 1.0 < alpha <= 2.0:
        raise ValidationError(f"alpha must lie in (1, 2], got {alpha}")
    a = validate_functional_coeffs(a)
    grid_size = validate_grid_size(grid_size)
    if num_coeffs is None:
        num_coeffs = 4 * len(a)
    beta, p1 = class_f.beta, class_f.p1
    G = grid_size
    expo = lf_exponent(alpha, beta)
    A_grid = one_sided_synth(a, G, sign=1)

    f0v = np.full(G, p1 ** (1.0 / beta))
    h0 = None
    error = np.nan
    c = None
    converged = False
    iterations = 0
    for it in range(max_iter):
        iterations = it + 1
        h0, c, error = _inner_solve_noiseless(alpha, f0v, a, inner_size,
                                              num_coeffs, G, warm=c)
        C_grid = one_sided_synth(c, G, sign=1)
        shape = np.abs(C_grid) ** expo
        norm_const = (p1 / float(np.mean(shape**beta))) ** (1.0 / beta)
        f_new = np.maximum(norm_const * shape,
                           DENSITY_FLOOR * max(float(np.max(shape)) * norm_const, 1.0))
        change = float(np.max(np.abs(f_new - f0v))) / max(float(np.max(f0v)), 1e-300)
        f0v = f0v + relaxation * (f_new - f0v)
        if change < tol:
            converged = True
            break
    if not converged:
        if relaxation == 1.0:
            # retry once with damped updates before giving up
            return least_favorable_stable_noiseless(
                alpha, class_f, a, num_coeffs=num_coeffs, grid_size=grid_size,
                inner_size=inner_size, tol=tol, max_iter=max_iter,
                certify=certify, certificate_seed=certificate_seed,
                relaxation=0.5)
        raise ConvergenceError(
            f"noiseless fixed point did not converge in {max_iter} steps",
            trace={"iterations": iterations},
        )

    h0, c, error = _inner_solve_noiseless(alpha, f0v, a, inner_size,
                                          num_coeffs, G, warm=c)
    C_grid = one_sided_synth(c, G, sign=1)
    # multiplier equation: |C|^(alpha/(alpha-1)) f0^(-alpha/(alpha-1)) = gamma1 f0^(beta-1)
    u = np.abs(signed_pow_grid(np.conj(C_grid), 1.0 / (alpha - 1.0))) ** alpha \
        * f0v ** (-alpha / (alpha - 1.0))
    gamma1 = float(np.mean(u / f0v ** (beta - 1.0)))
    residuals = {
        "constraint_f": abs(float(np.mean(f0v**beta)) - p1) / p1,
        "eq_f": float(np.max(np.abs(u - gamma1 * f0v ** (beta - 1.0)))) / max(float(np.max(u)), 1e-300),
    }
    certificate = None
    if certify:
        certificate = saddle_certificate(alpha, h0, a, f0v, np.zeros(G), class_f,
                                         None, seed=certificate_seed, tol=1e-5)
    return MinimaxSolution(
        f0=Tabulated(grid_values=tuple(f0v)),
        g0=None,
        h0=h0,
        gamma1=gamma1,
        gamma2=None,
        phi1=None,
        error_value=float(error),
        residuals=residuals,
        certificate=certificate,
        iterations=iterations,
    )


def _inner_solve_noiseless(alpha, f0v, a, inner_size, num_coeffs, grid_size, warm):
    if alpha == 2.0:
        B, R, _ = build_brq_from_grids(f0v, np.zeros_like(f0v), inner_size)
        sol = solve_coeffs(B, R, a)
        A_grid = one_sided_synth(a, grid_size, sign=1)
        C_grid = one_sided_synth(sol.c, grid_size, sign=1)
        h_grid = A_grid - C_grid / f0v
        a_pad = np.zeros(inner_size, dtype=complex)
        a_pad[: len(a)] = a
        error = float(np.real(np.vdot(sol.c, a_pad)))
        h = SpectralCharacteristic.from_grid(h_grid, alpha=2.0, num_coeffs=inner_size)
        return h, sol.c, error
    problem = StableProblem(alpha=alpha, f=Tabulated(grid_values=tuple(f0v)),
                            g=None, a=a, num_coeffs=num_coeffs, grid_size=grid_size)
    sol = solve_stable_noiseless(problem, initial_c=warm)
    return sol.h, sol.c_coeffs, sol.error_value


# ---------------------------------------------------------------------------
# eigen route (beta = 1, noiseless, alpha = 2)


def power_iteration(matrix, seed=0, tol=1e-10, max_iter=20000):
    """Dominant eigenpair of a Hermitian PSD (or shifted) matrix.

    Returns (eigenvalue, unit vector, converged).
    """
    n = matrix.shape[0]
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    lam = float(v @ (matrix @ v))
    for _ in range(max_iter):
        w = matrix @ v
        norm_w = np.linalg.norm(w)
        if norm_w == 0.0:
            return 0.0, v, True
        v_new = w / norm_w
        lam = float(v_new @ (matrix @ v_new))
        drift = min(np.linalg.norm(v_new - v), np.linalg.norm(v_new + v))
        v = v_new
        if drift < tol:
            return lam, v, True
    return lam, v, False


def hankel_embedding(a, size: int) -> np.ndarray:
    """Symmetric matrix S[i, j] = a_{i+j} (zero once i+j exceeds the support)."""
    a = np.asarray(a, dtype=complex)
    if np.max(np.abs(a.imag)) > 0.0:
        raise ValidationError("the symmetric embedding requires real coefficients")
    ar = a.real
    S = np.zeros((size, size))
    for i in range(size):
        for j in range(size):
            if i + j < len(ar):
                S[i, j] = ar[i + j]
    return S


def least_favorable_eigen(a, p: float, size: int | None = None,
                          mode: str = "lower-triangular", grid_size: int = 512,
                          seed: int = 0) -> MinimaxSolution:
    """Least favorable density for beta = 1, noiseless, alpha = 2.

    The regular density with unit-mass budget p that maximizes the optimal
    extrapolation error is a finite moving average; its weights come out of a
    dominant-eigenvector problem.  Two matrix interpretations are provided:

    ``lower-triangular``
        maximize ||T phi||^2 / ||phi||^2 with T[i, j] = a_{i-j} (i >= j);
        the reported value is the top eigenvalue of the Gram matrix T^H T.
    ``symmetric``
        dominant eigenvalue nu of the symmetric embedding S[i, j] = a_{i+j};
        under this reading the achieved error equals p * nu^2.

    ``error_value`` reports the achieved objective of the returned weights,
    i.e. the extrapolation error of the density they synthesize (exact when
    the weight polynomial is minimum phase).
    """
    a = validate_functional_coeffs(a)
    p = float(p)
    if p <= 0.0:
        raise ValidationError(f"p must be positive, got {p}")
    if size is None:
        size = max(4 * len(a), 2)
    size = int(size)
    if size < len(a):
        raise ValidationError(f"size {size} too small for functional length {len(a)}")
    if mode not in ("lower-triangular", "symmetric"):
        raise ValidationError(f"unknown eigen mode '{mode}'")
    grid_size = validate_grid_size(grid_size)

    notes = []
    if mode == "lower-triangular":
        T = lower_triangular_toeplitz(a, size)
        gram = np.conj(T.T) @ T
        if np.max(np.abs(gram.imag)) < 1e-15 * max(np.max(np.abs(gram)), 1.0):
            gram = gram.real
        top, vec, ok = power_iteration(gram, seed=seed)
        top_value = float(top)
        phi = vec
    else:
        S = hankel_embedding(a, size)
        shift = float(np.max(np.sum(np.abs(S), axis=1)))  # >= spectral radius
        lam_shifted, vec, ok = power_iteration(S + shift * np.eye(size), seed=seed)
        top_value = float(lam_shifted - shift)
        phi = vec
        notes.append("achieved error equals p * nu^2 under the symmetric reading")

    if not ok:
        warnings.warn("power iteration stagnated; dominant value may be degenerate",
                      RuntimeWarning)
    # canonical sign: first significant component positive
    lead = phi[np.argmax(np.abs(phi))]
    if lead.real < 0:
        phi = -phi
    weights = np.sqrt(p) * phi

    f0_vals = np.abs(one_sided_synth(weights, grid_size, sign=-1)) ** 2
    f0 = Tabulated(grid_values=tuple(np.maximum(f0_vals, 0.0)))
    error = factor_route_error(weights, a)

    residuals = {
        "constraint_f": abs(float(np.mean(f0_vals)) - p) / p,
    }
    return MinimaxSolution(
        f0=f0,
        g0=None,
        h0=None,
        gamma1=None,
        gamma2=None,
        phi1=None,
        error_value=float(error),
        residuals=residuals,
        certificate=None,
        iterations=0,
        mode=mode,
        top_value=top_value,
        phi_vector=phi,
        ma_weights=weights,
        degenerate=not ok,
        notes=tuple(notes),
    )
