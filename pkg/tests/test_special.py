import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from repvol.special import bloch_wigner, lobachevsky


def lob_oracle(theta):
    # Clausen: L(theta) = Cl_2(2 theta) / 2
    return float(mpmath.clsin(2, 2 * theta)) / 2


def bw_oracle(z):
    z = mpmath.mpc(z)
    return float(mpmath.im(mpmath.polylog(2, z)) + mpmath.arg(1 - z) * mpmath.log(abs(z)))


def test_lobachevsky_frozen_values():
    # Cl_2(2 theta) / 2 from mpmath at 30 digits
    assert lobachevsky(math.pi / 6) == pytest.approx(0.507470803204826812510601277137, abs=1e-14)
    assert lobachevsky(math.pi / 4) == pytest.approx(0.457982797088609507527301757466, abs=1e-14)
    assert lobachevsky(math.pi / 3) == pytest.approx(0.338313868803217875007067518092, abs=1e-14)
    assert lobachevsky(0.0) == 0.0
    assert lobachevsky(math.pi / 2) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("theta", [0.01, 0.3, 1.0, 1.5, 2.2, 3.1])
def test_lobachevsky_matches_direct_integral(theta):
    f = lambda t: -math.log(abs(2 * math.sin(t)))
    points = [math.pi / 2] if theta > math.pi / 2 else None
    value, _ = quad(f, 0, theta, points=points, limit=200, epsabs=1e-13)
    assert lobachevsky(theta) == pytest.approx(value, abs=1e-10)


@settings(max_examples=200, deadline=None)
@given(st.floats(-20, 20, allow_nan=False))
def test_lobachevsky_periodic_odd_and_clausen(theta):
    assert lobachevsky(theta) == pytest.approx(lob_oracle(theta), abs=1e-12)
    assert lobachevsky(-theta) == -lobachevsky(theta)
    assert lobachevsky(theta + math.pi) == pytest.approx(lobachevsky(theta), abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.01, 1.5))
def test_lobachevsky_duplication(theta):
    # L(2x) = 2 L(x) + 2 L(x + pi/2)
    assert lobachevsky(2 * theta) == pytest.approx(
        2 * lobachevsky(theta) + 2 * lobachevsky(theta + math.pi / 2), abs=1e-12)


def test_lobachevsky_rejects_non_finite():
    with pytest.raises(ValueError):
        lobachevsky(float("inf"))


def test_bloch_wigner_regular_ideal():
    w = cmath.exp(1j * math.pi / 3)
    assert bloch_wigner(w) == pytest.approx(1.0149416064096536, abs=1e-14)
    assert bloch_wigner(w) == pytest.approx(3 * lobachevsky(math.pi / 3), abs=1e-13)


def test_bloch_wigner_real_axis_is_zero():
    for x in (-3.0, 0.0, 0.5, 1.0, 7.0):
        assert bloch_wigner(x) == 0.0


def test_bloch_wigner_against_mpmath(rng):
    zs = rng.normal(scale=2.0, size=(300, 2)) @ np.array([1, 1j])
    worst = max(abs(bloch_wigner(z) - bw_oracle(z)) for z in zs)
    assert worst < 1e-13


@settings(max_examples=100, deadline=None)
@given(st.complex_numbers(max_magnitude=50, allow_nan=False, allow_infinity=False)
       .filter(lambda z: abs(z.imag) > 1e-6 and abs(z) > 1e-6))
def test_bloch_wigner_six_fold_symmetry(z):
    d = bloch_wigner(z)
    for image, sign in ((1 - 1 / z, 1), (1 / (1 - z), 1), (1 / z, -1), (1 - z, -1), (z / (z - 1), -1)):
        assert bloch_wigner(image) == pytest.approx(sign * d, abs=1e-11)
    assert bloch_wigner(z.conjugate()) == pytest.approx(-d, abs=1e-12)


def test_bloch_wigner_maximum_at_regular_point(rng):
    zs = rng.normal(size=(500, 2)) @ np.array([1, 1j])
    vmax = bloch_wigner(cmath.exp(1j * math.pi / 3))
    assert all(abs(bloch_wigner(z)) <= vmax + 1e-14 for z in zs)


@pytest.mark.parametrize("theta", [0.2, 0.9, 1.3, 2.5])
def test_lobachevsky_fourier_series(theta):
    k = np.arange(1, 200001)
    partial = 0.5 * np.sum(np.sin(2 * k * theta) / k**2)
    assert lobachevsky(theta) == pytest.approx(partial, abs=1e-9)
