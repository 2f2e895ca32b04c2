"""Spectral densities on [-pi, pi): representation, evaluation and quadrature.

A density is either parametric (white / moving-average / autoregressive /
rational), tabulated on a uniform grid, or an epsilon-mixture of two other
densities.  Parametric kinds are evaluated in closed form; tabulated values
are resampled by trigonometric interpolation when a different grid size is
requested.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .fourier import grid_coeffs, theta_grid

MIN_GRID_SIZE = 64


def validate_grid_size(grid_size: int) -> int:
    grid_size = int(grid_size)
    if grid_size < MIN_GRID_SIZE or grid_size % 2 != 0:
        raise ValidationError(
            f"grid_size must be even and >= {MIN_GRID_SIZE}, got {grid_size}"
        )
    return grid_size


def _coeff_tuple(coeffs) -> tuple:
    out = []
    for c in np.atleast_1d(np.asarray(coeffs)):
        c = complex(c)
        if not np.isfinite(c.real) or not np.isfinite(c.imag):
            raise ValidationError("density coefficients must be finite")
        out.append(c if c.imag != 0.0 else float(c.real))
    return tuple(out)


class SpectralDensity:
    """Base class; subclasses implement ``values(grid_size)``."""

    def values(self, grid_size: int) -> np.ndarray:
        raise NotImplementedError

    def __add__(self, other):
        if isinstance(other, SpectralDensity):
            return SumDensity(self, other)
        return NotImplemented


@dataclass(frozen=True)
class White(SpectralDensity):
    level: float

    def __post_init__(self):
        if not np.isfinite(self.level) or self.level < 0.0:
            raise ValidationError(f"white level must be >= 0, got {self.level}")

    def values(self, grid_size):
        return np.full(validate_grid_size(grid_size), float(self.level))


@dataclass(frozen=True)
class MovingAverage(SpectralDensity):
    """scale * |1 + sum_j coeffs[j-1] exp(-i*j*theta)|^2."""

    coeffs: tuple = ()
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _coeff_tuple(self.coeffs) if len(self.coeffs) else ())
        if not np.isfinite(self.scale) or self.scale < 0.0:
            raise ValidationError(f"scale must be >= 0, got {self.scale}")

    def transfer(self, grid_size):
        theta = theta_grid(validate_grid_size(grid_size))
        poly = np.ones(grid_size, dtype=complex)
        for j, c in enumerate(self.coeffs, start=1):
            poly += c * np.exp(-1j * j * theta)
        return poly

    def values(self, grid_size):
        return float(self.scale) * np.abs(self.transfer(grid_size)) ** 2


@dataclass(frozen=True)
class Autoregressive(SpectralDensity):
    """scale / |1 - sum_j coeffs[j-1] exp(-i*j*theta)|^2."""

    coeffs: tuple = ()
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _coeff_tuple(self.coeffs) if len(self.coeffs) else ())
        if not np.isfinite(self.scale) or self.scale < 0.0:
            raise ValidationError(f"scale must be >= 0, got {self.scale}")

    def values(self, grid_size):
        theta = theta_grid(validate_grid_size(grid_size))
        poly = np.ones(grid_size, dtype=complex)
        for j, c in enumerate(self.coeffs, start=1):
            poly -= c * np.exp(-1j * j * theta)
        mod2 = np.abs(poly) ** 2
        if np.any(mod2 == 0.0):
            raise ValidationError("autoregressive polynomial has a root on the unit circle")
        return float(self.scale) / mod2


@dataclass(frozen=True)
class Rational(SpectralDensity):
    numerator: MovingAverage
    denominator: MovingAverage

    def values(self, grid_size):
        num = self.numerator.values(grid_size)
        den = self.denominator.values(grid_size)
        if np.any(den == 0.0):
            raise ValidationError("rational denominator vanishes on the grid")
        return num / den


@dataclass(frozen=True)
class Tabulated(SpectralDensity):
    grid_values: tuple

    def __post_init__(self):
        vals = np.asarray(self.grid_values, dtype=float)
        if vals.ndim != 1:
            raise ValidationError("tabulated values must be a 1-d array")
        validate_grid_size(len(vals))
        if not np.all(np.isfinite(vals)):
            raise ValidationError("tabulated values must be finite")
        if np.any(vals < 0.0):
            raise ValidationError(
                f"tabulated density has a negative value (min {vals.min():g})"
            )
        object.__setattr__(self, "grid_values", tuple(float(v) for v in vals))

    def values(self, grid_size):
        grid_size = validate_grid_size(grid_size)
        stored = np.asarray(self.grid_values, dtype=float)
        G0 = len(stored)
        if grid_size == G0:
            return stored.copy()
        # trigonometric resampling onto the requested periodic grid
        from scipy.signal import resample

        vals = resample(stored, grid_size)
        # interpolation ripple near zeros is clipped; gross undershoot means
        # the tabulation is too coarse to resample faithfully
        floor = -1e-2 * max(stored.max(), 1.0)
        if np.any(vals < floor):
            raise ValidationError(
                "tabulated density resamples far below zero; supply it on the "
                "grid it will be used on or in parametric form"
            )
        return np.maximum(vals, 0.0)


@dataclass(frozen=True)
class Contaminated(SpectralDensity):
    base: SpectralDensity
    contamination: SpectralDensity
    epsilon: float

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValidationError(f"epsilon must lie in [0, 1], got {self.epsilon}")

    def values(self, grid_size):
        eps = float(self.epsilon)
        return (1.0 - eps) * self.base.values(grid_size) + eps * self.contamination.values(grid_size)


@dataclass(frozen=True)
class SumDensity(SpectralDensity):
    first: SpectralDensity
    second: SpectralDensity

    def values(self, grid_size):
        return self.first.values(grid_size) + self.second.values(grid_size)


ZERO = White(0.0)


def evaluate(density: SpectralDensity, grid_size: int) -> np.ndarray:
    """Length-G vector of density values at theta_m = -pi + 2*pi*m/G."""
    vals = density.values(validate_grid_size(grid_size))
    if np.any(vals < 0.0):
        raise ValidationError("density evaluated to a negative value")
    return vals


@dataclass
class FourierCoeffs:
    """Coefficients r_k, k = -max_lag..max_lag, of a grid function."""

    lags: np.ndarray
    values: np.ndarray

    def __getitem__(self, lag: int) -> complex:
        k = int(lag) + (len(self.lags) - 1) // 2
        if k < 0 or k >= len(self.lags):
            raise KeyError(f"lag {lag} outside stored range")
        return complex(self.values[k])

    @property
    def max_lag(self) -> int:
        return int(self.lags[-1])


def fourier_coeffs(grid_values, max_lag: int) -> FourierCoeffs:
    """r_k = (1/2pi) int exp(-ik theta) rho dtheta for k = -K..K, by FFT quadrature.

    For real input, conjugate symmetry r_{-k} = conj(r_k) is enforced exactly.
    """
    grid_values = np.asarray(grid_values)
    K = int(max_lag)
    G = len(grid_values)
    if K < 0:
        raise ValidationError("max_lag must be >= 0")
    if K >= G // 2:
        raise ValidationError(
            f"max_lag {K} is not resolvable on a grid of size {G} (need max_lag < G/2)"
        )
    lags = np.arange(-K, K + 1)
    vals = grid_coeffs(grid_values, lags)
    if np.isrealobj(grid_values):
        sym = 0.5 * (vals + np.conj(vals[::-1]))
        vals = sym
    return FourierCoeffs(lags=lags, values=vals)


@dataclass
class MinimalityResult:
    passes: bool
    integral: float
    history: tuple

    def __bool__(self):
        return self.passes


def check_minimality(f: SpectralDensity, g: SpectralDensity | None, alpha: float,
                     grid_size: int = 512) -> MinimalityResult:
    """Diagnose integrability of (f+g)**(-1/(alpha-1)) by grid refinement.

    Quadrature values at G, 2G and 4G are compared; growth by more than a
    factor of 2 across a refinement (or a non-positive grid value) reports a
    failure.  This is a heuristic, not a proof: samples cannot decide
    integrability, they can only flag divergence.
    """
    alpha = float(alpha)
    if not 1.0 < alpha <= 2.0:
        raise ValidationError(f"alpha must lie in (1, 2], got {alpha}")
    grid_size = validate_grid_size(grid_size)
    expo = -1.0 / (alpha - 1.0)
    history = []
    for G in (grid_size, 2 * grid_size, 4 * grid_size):
        vals = evaluate(f, G)
        if g is not None:
            vals = vals + evaluate(g, G)
        if np.any(vals <= 0.0):
            history.append(np.inf)
            continue
        integrand = vals**expo
        history.append(2.0 * np.pi * float(np.mean(integrand)))
    history = tuple(history)
    finite = all(np.isfinite(h) for h in history)
    passes = finite and all(
        history[i + 1] <= 2.0 * history[i] for i in range(len(history) - 1)
    )
    return MinimalityResult(passes=passes, integral=history[-1], history=history)


def validate_functional_coeffs(a, allow_zero: bool = False) -> np.ndarray:
    """Coerce the target-functional weights (a_0, ..., a_M) to a complex vector."""
    a = np.atleast_1d(np.asarray(a, dtype=complex))
    if a.ndim != 1 or len(a) == 0:
        raise ValidationError("functional coefficients must form a non-empty vector")
    if not np.all(np.isfinite(a)):
        raise ValidationError("functional coefficients must be finite")
    if not allow_zero and np.all(a == 0):
        raise ValidationError("at least one functional coefficient must be nonzero")
    return a


# ---------------------------------------------------------------------------
# JSON specification (shared by the CLI and by config-driven tests)

def density_from_spec(spec) -> SpectralDensity:
    """Build a density from its JSON-style specification dict."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValidationError("density spec must be an object with a 'kind' field")
    kind = spec["kind"]
    known = {
        "white": {"kind", "level"},
        "ma": {"kind", "coeffs", "scale"},
        "ar": {"kind", "coeffs", "scale"},
        "rational": {"kind", "numerator", "denominator"},
        "tabulated": {"kind", "values"},
        "contaminated": {"kind", "base", "contamination", "epsilon"},
    }
    if kind not in known:
        raise ValidationError(f"unknown density kind '{kind}'")
    extra = set(spec) - known[kind]
    if extra:
        raise ValidationError(f"unknown fields {sorted(extra)} in '{kind}' density spec")
    if kind == "white":
        return White(level=float(spec["level"]))
    if kind == "ma":
        return MovingAverage(coeffs=tuple(spec.get("coeffs", ())), scale=float(spec.get("scale", 1.0)))
    if kind == "ar":
        return Autoregressive(coeffs=tuple(spec.get("coeffs", ())), scale=float(spec.get("scale", 1.0)))
    if kind == "rational":
        num = density_from_spec(spec["numerator"])
        den = density_from_spec(spec["denominator"])
        if not isinstance(num, MovingAverage) or not isinstance(den, MovingAverage):
            raise ValidationError("rational numerator/denominator must be 'ma' specs")
        return Rational(numerator=num, denominator=den)
    if kind == "tabulated":
        return Tabulated(grid_values=tuple(spec["values"]))
    return Contaminated(
        base=density_from_spec(spec["base"]),
        contamination=density_from_spec(spec["contamination"]),
        epsilon=float(spec["epsilon"]),
    )


def density_to_spec(density: SpectralDensity):
    """Inverse of :func:`density_from_spec` for the supported kinds."""
    if isinstance(density, White):
        return {"kind": "white", "level": density.level}
    if isinstance(density, MovingAverage):
        return {"kind": "ma", "coeffs": [_real_or_pair(c) for c in density.coeffs], "scale": density.scale}
    if isinstance(density, Autoregressive):
        return {"kind": "ar", "coeffs": [_real_or_pair(c) for c in density.coeffs], "scale": density.scale}
    if isinstance(density, Rational):
        return {
            "kind": "rational",
            "numerator": density_to_spec(density.numerator),
            "denominator": density_to_spec(density.denominator),
        }
    if isinstance(density, Tabulated):
        return {"kind": "tabulated", "values": list(density.grid_values)}
    if isinstance(density, Contaminated):
        return {
            "kind": "contaminated",
            "base": density_to_spec(density.base),
            "contamination": density_to_spec(density.contamination),
            "epsilon": density.epsilon,
        }
    raise ValidationError(f"density {density!r} has no JSON form")


def _real_or_pair(c):
    c = complex(c)
    return c.real if c.imag == 0.0 else [c.real, c.imag]
