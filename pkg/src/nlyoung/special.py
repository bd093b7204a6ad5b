"""Gamma and Beta functions via the Lanczos approximation (g=7, 9 coefficients)."""

from __future__ import annotations

import math
from dataclasses import dataclass

# Lanczos coefficients for g=7, n=9 (Godfrey's tabulation).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma(x: float) -> float:
    """Euler gamma function for real x (poles at non-positive integers)."""
    if x != x:
        return math.nan
    if x < 0.5:
        # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        s = math.sin(math.pi * x)
        if s == 0.0:
            raise ValueError(f"gamma pole at x={x}")
        return math.pi / (s * gamma(1.0 - x))
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc


def beta(a: float, b: float) -> float:
    """Euler beta B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b)."""
    return gamma(a) * gamma(b) / gamma(a + b)


@dataclass(frozen=True)
class GammaValue:
    """A gamma-function evaluation bundled with its argument."""

    argument: float
    value: float


def gamma_value(x: float) -> GammaValue:
    return GammaValue(argument=x, value=gamma(x))


def reciprocal_gamma_product(alpha: float) -> float:
    """1 / (Gamma(alpha) Gamma(1-alpha)) = sin(pi alpha) / pi, computed stably."""
    return math.sin(math.pi * alpha) / math.pi


__all__ = ["gamma", "beta", "GammaValue", "gamma_value", "reciprocal_gamma_product"]
