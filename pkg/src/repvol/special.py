"""Lobachevsky function and Bloch-Wigner dilogarithm."""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

from scipy.special import zeta


@lru_cache(maxsize=None)
def _lobachevsky_coefficients(terms: int = 40) -> tuple[float, ...]:
    # 2^(2n-1) |B_2n| / (n (2n)! (2n+1)) = zeta(2n) / (n (2n+1) pi^(2n)), n = 1..terms
    return tuple(float(zeta(2 * n)) / (n * (2 * n + 1) * math.pi ** (2 * n)) for n in range(1, terms + 1))


def lobachevsky(theta: float) -> float:
    """Lobachevsky function, -int_0^theta log|2 sin t| dt.

    Reduced to [0, pi/2] with pi-periodicity and oddness, then summed from the
    Taylor expansion of log(sin t / t), which converges with ratio <= 1/4 there.
    """
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    x = math.remainder(theta, math.pi)  # in [-pi/2, pi/2]
    sign = 1.0
    if x < 0:
        sign, x = -1.0, -x
    if x == 0.0:
        return 0.0
    x2 = x * x
    power = x * x2
    total = x - x * math.log(2 * x)
    for coef in _lobachevsky_coefficients():
        term = coef * power
        total += term
        if term < 1e-18:
            break
        power *= x2
    return sign * total


@lru_cache(maxsize=None)
def _li2_coefficients(terms: int = 40) -> tuple[float, ...]:
    # Li2(z) = sum_{n>=0} B_n u^(n+1) / (n+1)!,  u = -log(1 - z),  B_1 = -1/2;
    # B_2k / (2k+1)! = (-1)^(k+1) 2 zeta(2k) / ((2 pi)^(2k) (2k+1)), odd B_n vanish beyond n = 1
    coeffs = [1.0, -0.25] + [0.0] * (terms - 1)
    for n in range(2, terms + 1, 2):
        k = n // 2
        coeffs[n] = (-1) ** (k + 1) * 2 * float(zeta(n)) / ((2 * math.pi) ** n * (n + 1))
    return tuple(coeffs)


def _li2_reduced(z: complex) -> complex:
    u = -cmath.log(1 - z)
    total = 0j
    power = u
    for coef in _li2_coefficients():
        total += coef * power
        power *= u
    return total


def bloch_wigner(z: complex) -> float:
    """Bloch-Wigner dilogarithm D(z) = Im Li2(z) + arg(1 - z) log|z|.

    Equals the volume of the ideal tetrahedron with vertices 0, 1, inf, z
    when Im z > 0.  Real arguments (including 0 and 1) give 0.
    """
    z = complex(z)
    if z.imag == 0.0 or not (math.isfinite(z.real) and math.isfinite(z.imag)):
        return 0.0
    sign = 1.0
    if abs(z) > 1.0:
        z = 1.0 / z
        sign = -sign
    if z.real > 0.5:
        z = 1.0 - z
        sign = -sign
    value = _li2_reduced(z).imag + cmath.phase(1 - z) * math.log(abs(z))
    return sign * value
