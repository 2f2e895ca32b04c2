import numpy as np
import pytest

from stable_extrap import Autoregressive, MovingAverage, Rational, White


def example_ar_density(rho=0.5, scale=1.0):
    """The worked one-pole density |1 - rho e^{-i theta}|^{-2}."""
    return Autoregressive(coeffs=(rho,), scale=scale)


def random_rational_density(rng, coeff_scale=0.35, min_scale=0.5, max_scale=2.0):
    """A random smooth rational density with well-separated poles and zeros."""
    kind = rng.integers(0, 3)
    scale = float(rng.uniform(min_scale, max_scale))
    c1 = float(rng.uniform(-coeff_scale, coeff_scale))
    c2 = float(rng.uniform(-coeff_scale, coeff_scale))
    if kind == 0:
        return MovingAverage(coeffs=(c1,), scale=scale)
    if kind == 1:
        return Autoregressive(coeffs=(c1,), scale=scale)
    return Rational(numerator=MovingAverage(coeffs=(c1,), scale=scale),
                    denominator=MovingAverage(coeffs=(c2,)))


def random_functional(rng, max_len=3, complex_ok=False):
    n = int(rng.integers(1, max_len + 1))
    a = rng.uniform(-1.0, 1.0, n)
    if complex_ok:
        a = a + 1j * rng.uniform(-1.0, 1.0, n)
    a[0] = a[0] if abs(a[0]) > 0.2 else 1.0
    return a


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
