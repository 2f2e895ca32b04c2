"""Extrapolation for tail indices 1 < alpha <= 2: the signed-power equations.

The error functional

    Delta(h) = (1/2pi) [ int |A - h|^alpha f + int |h|^alpha g ]

is strictly convex in the one-sided response h for alpha > 1, and its
stationarity conditions over h = sum_{k>=1} u_k exp(-i*k*theta) are exactly
the projection equations: the coefficients of

    D = (A - h)^<alpha-1> f - h^<alpha-1> g

at the observation lags k = -1, -2, ... must vanish, leaving D equal to the
conjugate of a one-sided series C.  The solver minimizes the (discretized)
functional by damped Newton with a numerically differenced Hessian, then
certifies the result by evaluating the unsmoothed equations.  The signed
power is epsilon-smoothed inside the iteration only.

The noise-free closed form is handled separately: parameterize by the
coefficients of C, synthesize

    h = A - (conj C)^<1/(alpha-1)> f^(-1/(alpha-1)),

and root-find the one-sidedness conditions r_k(h) = 0, k = 0..M, in c.
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
from .extrapolate import SpectralCharacteristic, extrapolate_noisy_gauss
from .fourier import grid_coeffs, one_sided_synth, synth_on_grid
from .signed_power import signed_pow_grid

NEWTON_SMOOTHING = 1e-10


def _next_pow2(n: int) -> int:
    p = 1
    while p < n:
        p *= 2
    return p


@dataclass
class StableProblem:
    alpha: float
    f: SpectralDensity
    g: SpectralDensity | None
    a: np.ndarray
    num_coeffs: int | None = None
    grid_size: int | None = None

    def __post_init__(self):
        self.alpha = float(self.alpha)
        if not 1.0 < self.alpha <= 2.0:
            raise ValidationError(f"alpha must lie in (1, 2], got {self.alpha}")
        self.a = validate_functional_coeffs(self.a, allow_zero=True)
        if self.g is None:
            self.g = White(0.0)
        if self.num_coeffs is None:
            self.num_coeffs = 4 * len(self.a)
        self.num_coeffs = int(self.num_coeffs)
        if self.num_coeffs < 1:
            raise ValidationError("num_coeffs must be >= 1")
        if self.grid_size is None:
            self.grid_size = _next_pow2(max(512, 16 * self.num_coeffs))
        self.grid_size = validate_grid_size(self.grid_size)
        if self.grid_size < 8 * self.num_coeffs:
            raise ValidationError(
                f"grid_size {self.grid_size} too coarse for {self.num_coeffs} "
                "coefficients (need G >= 8*M)"
            )


@dataclass
class StableSolution:
    h: SpectralCharacteristic
    c_coeffs: np.ndarray
    error_value: float
    kkt_residual: float
    solver_trace: list
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        self.c_coeffs = np.asarray(self.c_coeffs, dtype=complex)


class _NoisyObjective:
    """Discretized error functional and gradient over the h coefficients."""

    def __init__(self, problem: StableProblem, smoothing: float):
        G = problem.grid_size
        self.alpha = problem.alpha
        self.M = problem.num_coeffs
        self.G = G
        self.fv = evaluate(problem.f, G)
        self.gv = evaluate(problem.g, G)
        self.A_grid = one_sided_synth(problem.a, G, sign=1)
        self.smoothing = smoothing
        self._neg_lags = -np.arange(1, self.M + 1)
        self._pos_lags = np.arange(1, self.M + 1)

    def unpack(self, x: np.ndarray) -> np.ndarray:
        return x[: self.M] + 1j * x[self.M :]

    def pack(self, u: np.ndarray) -> np.ndarray:
        return np.concatenate([np.real(u), np.imag(u)])

    def h_grid(self, u: np.ndarray) -> np.ndarray:
        return synth_on_grid(u, self._neg_lags, self.G)

    def value(self, x: np.ndarray) -> float:
        al, eps = self.alpha, self.smoothing
        h = self.h_grid(self.unpack(x))
        E = self.A_grid - h
        mE = (np.abs(E) ** 2 + eps * eps) ** (al / 2.0)
        mh = (np.abs(h) ** 2 + eps * eps) ** (al / 2.0)
        return float(np.mean(mE * self.fv) + np.mean(mh * self.gv))

    def defect_grid(self, x: np.ndarray, smoothing: float | None = None) -> np.ndarray:
        """(A - h)^<alpha-1> f - h^<alpha-1> g on the grid."""
        eps = self.smoothing if smoothing is None else smoothing
        h = self.h_grid(self.unpack(x))
        E = self.A_grid - h
        return (signed_pow_grid(E, self.alpha - 1.0, eps) * self.fv
                - signed_pow_grid(h, self.alpha - 1.0, eps) * self.gv)

    def gradient(self, x: np.ndarray) -> np.ndarray:
        d = grid_coeffs(self.defect_grid(x), self._pos_lags)
        return self.alpha * np.concatenate([-np.real(d), np.imag(d)])

    def error_unsmoothed(self, x: np.ndarray) -> float:
        h = self.h_grid(self.unpack(x))
        E = self.A_grid - h
        return float(np.mean(np.abs(E) ** self.alpha * self.fv)
                     + np.mean(np.abs(h) ** self.alpha * self.gv))


def _numerical_jacobian(func, x, step_scale=1e-7):
    n = len(x)
    probe = func(x)
    J = np.empty((len(probe), n))
    for i in range(n):
        d = step_scale * (1.0 + abs(x[i]))
        xp = x.copy()
        xm = x.copy()
        xp[i] += d
        xm[i] -= d
        J[:, i] = (func(xp) - func(xm)) / (2.0 * d)
    return J


def _damped_newton(objective, x0, grad_tol, max_iter=80):
    """Minimize a smooth convex objective; returns (x, trace)."""
    x = np.asarray(x0, dtype=float).copy()
    trace = []
    fval = objective.value(x)
    lam = 0.0
    for it in range(max_iter):
        g = objective.gradient(x)
        gmax = float(np.max(np.abs(g)))
        trace.append({"iteration": it, "objective": fval, "grad_inf": gmax, "damping": lam})
        if gmax <= grad_tol:
            return x, trace
        H = _numerical_jacobian(objective.gradient, x)
        H = 0.5 * (H + H.T)
        lam = 0.0
        base = 1e-12 * (1.0 + float(np.max(np.abs(np.diag(H)))))
        step = None
        for _ in range(40):
            try:
                step = np.linalg.solve(H + lam * np.eye(len(x)), -g)
            except np.linalg.LinAlgError:
                step = None
            if step is not None and np.dot(step, g) < 0:
                break
            lam = base if lam == 0.0 else lam * 10.0
        if step is None or np.dot(step, g) >= 0:
            step = -g  # fall back to steepest descent
        t = 1.0
        slope = float(np.dot(g, step))
        accepted = False
        for _ in range(60):
            cand = x + t * step
            fc = objective.value(cand)
            if fc <= fval + 1e-4 * t * slope:
                x, fval = cand, fc
                accepted = True
                break
            t *= 0.5
        if not accepted:
            # objective already flat along every tried step
            g2 = objective.gradient(x)
            if float(np.max(np.abs(g2))) <= 10.0 * grad_tol:
                trace.append({"iteration": it + 1, "objective": fval,
                              "grad_inf": float(np.max(np.abs(g2))), "damping": lam})
                return x, trace
            raise ConvergenceError(
                "line search failed before reaching the gradient tolerance",
                trace=trace,
            )
    g = objective.gradient(x)
    if float(np.max(np.abs(g))) <= 10.0 * grad_tol:
        return x, trace
    raise ConvergenceError(
        f"Newton iteration exhausted {max_iter} steps "
        f"(grad_inf {float(np.max(np.abs(g))):.3e}, tol {grad_tol:.1e})",
        trace=trace,
    )


def _one_sided_part_coeffs(grid_values, max_lag):
    """Coefficients c_j with conj(C) equal to the non-positive-lag part of D."""
    lags = -np.arange(0, max_lag + 1)
    return np.conj(grid_coeffs(grid_values, lags))


def solve_stable_noisy(problem: StableProblem, grad_tol: float = None,
                       initial_coeffs=None, max_iter: int = 80) -> StableSolution:
    """Solve the noisy extrapolation problem by convex minimization.

    The returned ``kkt_residual`` is the largest unsmoothed equation
    coefficient over the solved lags; it certifies the solution against the
    projection system rather than against solver-internal quantities.
    """
    if np.all(problem.a == 0):
        return _zero_solution(problem)
    minimality = check_minimality(problem.f, problem.g, problem.alpha,
                                  grid_size=max(512, problem.grid_size // 4))
    if not minimality.passes:
        raise ValidationError(
            f"minimality check failed for f + g at alpha {problem.alpha}: "
            f"history {minimality.history}"
        )
    objective = _NoisyObjective(problem, smoothing=NEWTON_SMOOTHING)
    M, G = problem.num_coeffs, problem.grid_size

    if initial_coeffs is not None:
        u0 = np.zeros(M, dtype=complex)
        init = np.asarray(initial_coeffs, dtype=complex)
        u0[: min(M, len(init))] = init[: min(M, len(init))]
    else:
        u0 = _gauss_start(problem)
    x0 = objective.pack(u0)

    if grad_tol is None:
        # the smoothing bounds the reachable gradient accuracy near zeros of
        # the defect, so do not chase tolerances below ~1e-9 by default
        grad_tol = 1e-9 * (1.0 + abs(objective.value(x0)))
    x, trace = _damped_newton(objective, x0, grad_tol, max_iter=max_iter)

    u = objective.unpack(x)
    D0 = objective.defect_grid(x, smoothing=0.0)
    kkt = float(np.max(np.abs(grid_coeffs(D0, np.arange(1, M + 1)))))
    kkt_tail = float(np.max(np.abs(grid_coeffs(D0, np.arange(M + 1, 2 * M + 1)))))
    c = _one_sided_part_coeffs(D0, M)
    defect_sup = _positive_part_sup(D0)
    h = SpectralCharacteristic.from_coeffs(u, alpha=problem.alpha, grid_size=G)
    diagnostics = {
        "kkt_tail": kkt_tail,
        "defect_sup": defect_sup,
        "grad_tol": grad_tol,
        "iterations": len(trace),
        "minimality_integral": minimality.integral,
        "num_coeffs": M,
        "grid_size": G,
    }
    return StableSolution(h=h, c_coeffs=c, error_value=objective.error_unsmoothed(x),
                          kkt_residual=kkt, solver_trace=trace, diagnostics=diagnostics)


def _zero_solution(problem: StableProblem) -> StableSolution:
    """Zero functional: the optimal estimate is zero with zero error."""
    h = SpectralCharacteristic.from_coeffs(np.zeros(problem.num_coeffs, dtype=complex),
                                           alpha=problem.alpha,
                                           grid_size=problem.grid_size)
    return StableSolution(h=h, c_coeffs=np.zeros(problem.num_coeffs + 1, dtype=complex),
                          error_value=0.0, kkt_residual=0.0, solver_trace=[],
                          diagnostics={"note": "zero functional"})


def _positive_part_sup(grid_values) -> float:
    """Sup norm of the strictly-positive-frequency part of a grid function."""
    G = len(grid_values)
    spec = np.fft.fft(grid_values) / G
    keep = np.zeros(G, dtype=complex)
    keep[1 : G // 2] = spec[1 : G // 2]  # lags 1..G/2-1 in FFT layout
    return float(np.max(np.abs(np.fft.ifft(keep) * G)))


def _gauss_start(problem: StableProblem) -> np.ndarray:
    """Initial h coefficients: the alpha = 2 solution of the same data."""
    size = min(problem.grid_size // 4, max(problem.num_coeffs, 4 * len(problem.a)))
    report = extrapolate_noisy_gauss(problem.f, problem.g, problem.a,
                                     size=size, grid_size=problem.grid_size)
    neg = report.h.negative_coeffs
    u0 = np.zeros(problem.num_coeffs, dtype=complex)
    u0[: min(len(neg), problem.num_coeffs)] = neg[: min(len(neg), problem.num_coeffs)]
    return u0


def solve_stable_noiseless(problem: StableProblem, res_tol: float = None,
                           max_iter: int = 60, initial_c=None) -> StableSolution:
    """Closed-form parameterization for noise-free observations.

    Unknowns are the coefficients c_0..c_M of the one-sided series C; the
    one-sidedness conditions r_k(h) = 0, k = 0..M, are solved by a damped
    Newton iteration on the stacked real system.
    """
    if not isinstance(problem.g, White) or problem.g.level != 0.0:
        raise ValidationError("solve_stable_noiseless requires g = 0; use solve_stable_noisy")
    if np.all(problem.a == 0):
        return _zero_solution(problem)
    minimality = check_minimality(problem.f, None, problem.alpha,
                                  grid_size=max(512, problem.grid_size // 4))
    if not minimality.passes:
        raise ValidationError(
            f"minimality check failed for f at alpha {problem.alpha}: "
            f"history {minimality.history}"
        )
    alpha, M, G = problem.alpha, problem.num_coeffs, problem.grid_size
    a = problem.a
    fv = evaluate(problem.f, G)
    if np.any(fv <= 0.0):
        raise ValidationError("f must be strictly positive on the grid")
    A_grid = one_sided_synth(a, G, sign=1)
    root_exp = 1.0 / (alpha - 1.0)
    f_pow = fv ** (-root_exp)
    cond_lags = np.arange(0, M + 1)

    def subtracted_term(c):
        C_grid = one_sided_synth(c, G, sign=1)
        return signed_pow_grid(np.conj(C_grid), root_exp) * f_pow

    def h_of(c):
        return A_grid - subtracted_term(c)

    def residual(x):
        c = x[: M + 1] + 1j * x[M + 1 :]
        rho = grid_coeffs(h_of(c), cond_lags)
        return np.concatenate([np.real(rho), np.imag(rho)])

    # start from the linear (alpha = 2) coefficients unless a warm start is given
    c0 = np.zeros(M + 1, dtype=complex)
    if initial_c is not None:
        init = np.asarray(initial_c, dtype=complex)
        c0[: min(M + 1, len(init))] = init[: min(M + 1, len(init))]
    else:
        gauss = extrapolate_noisy_gauss(problem.f, White(0.0), a,
                                        size=min(G // 4, max(4 * len(a), M + 1)),
                                        grid_size=G)
        gvals = gauss.c[: M + 1]
        c0[: len(gvals)] = gvals
    x = np.concatenate([np.real(c0), np.imag(c0)])

    if res_tol is None:
        res_tol = 1e-11 * (1.0 + float(np.max(np.abs(a))))
    trace = []
    r = residual(x)
    rnorm = float(np.max(np.abs(r)))
    for it in range(max_iter):
        trace.append({"iteration": it, "residual_inf": rnorm})
        if rnorm <= res_tol:
            break
        J = _numerical_jacobian(residual, x)
        try:
            step, *_ = np.linalg.lstsq(J, -r, rcond=None)
        except np.linalg.LinAlgError:
            raise ConvergenceError("singular Jacobian in the closed-form solve", trace=trace)
        t = 1.0
        base = np.dot(r, r)
        accepted = False
        for _ in range(50):
            cand = x + t * step
            rc = residual(cand)
            if np.dot(rc, rc) <= base * (1.0 - 1e-4 * t):
                x, r = cand, rc
                rnorm = float(np.max(np.abs(r)))
                accepted = True
                break
            t *= 0.5
        if not accepted:
            raise ConvergenceError(
                f"root-finding stalled at residual {rnorm:.3e}", trace=trace
            )
    else:
        if rnorm > res_tol:
            raise ConvergenceError(
                f"root-finding exhausted {max_iter} iterations (residual {rnorm:.3e})",
                trace=trace,
            )

    c = x[: M + 1] + 1j * x[M + 1 :]
    T = subtracted_term(c)
    h_grid = A_grid - T
    error = float(np.mean(np.abs(T) ** alpha * fv))
    h = SpectralCharacteristic.from_grid(h_grid, alpha=alpha,
                                         num_coeffs=min(G // 4, max(4 * (M + 1), 16)))
    D0 = signed_pow_grid(A_grid - h_grid, alpha - 1.0) * fv
    diagnostics = {
        "system_residual": rnorm,
        "defect_sup": _positive_part_sup(D0),
        "iterations": len(trace),
        "minimality_integral": minimality.integral,
        "num_coeffs": M,
        "grid_size": G,
    }
    return StableSolution(h=h, c_coeffs=c, error_value=error, kkt_residual=rnorm,
                          solver_trace=trace, diagnostics=diagnostics)
