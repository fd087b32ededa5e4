"""Acceptance criteria 1-8; a PASS/FAIL line per criterion is printed in the summary."""

import itertools
import math
import time

import mpmath
import numpy as np
import pytest
from scipy.integrate import quad

from conftest import random_ideal, random_isometry, random_point
from repvol import corpus
from repvol.developing import EquivarianceError, PlacementPolicy, develop, place_vertices
from repvol.hyperbolic import Isometry, act
from repvol.simplex import max_simplex_volume, simplex_volume
from repvol.special import bloch_wigner, lobachevsky
from repvol.triangulation import barycentric_subdivide, validate_cocycle
from repvol.volume import compute_volume, invariance_test, milnor_wood_report, subdivision_test

FIG8 = float(2 * mpmath.im(mpmath.polylog(2, mpmath.exp(1j * mpmath.pi / 3))))


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def integral_oracle(theta):
    """-int_0^theta log|2 sin t| dt with the log singularities at 0 and pi integrated exactly."""
    def smooth(t):
        return -math.log(math.sin(t) / (t * (math.pi - t))) if 0 < t < math.pi else -math.log(1 / math.pi)

    rest, _ = quad(smooth, 0, theta, epsabs=1e-13, epsrel=1e-12)
    q = math.pi - theta
    log_t = theta * math.log(theta) - theta
    log_pi_minus_t = -q * math.log(q) + q + math.pi * math.log(math.pi) - math.pi
    return -theta * math.log(2) - log_t - log_pi_minus_t + rest


@pytest.mark.criterion(1, "special functions against direct integration")
def test_criterion_1_special_functions():
    rng = np.random.default_rng(1)
    thetas = rng.uniform(0, math.pi, 100)
    oracle = [integral_oracle(th) for th in thetas]
    with Timer() as timer:
        values = [lobachevsky(th) for th in thetas]
        gap = bloch_wigner(complex(0.5, math.sqrt(3) / 2)) - 3 * lobachevsky(math.pi / 3)
    assert max(abs(v - o) for v, o in zip(values, oracle)) <= 1e-9
    assert abs(gap) <= 1e-8
    assert timer.elapsed < 1.0


def _sign(perm):
    return round(np.linalg.det(np.eye(len(perm))[list(perm)]))


@pytest.mark.criterion(2, "simplex volume: alternation, G-invariance, bound, cocycle")
def test_criterion_2_simplex_properties():
    tol = 1e-7
    rng = np.random.default_rng(2)
    vmax = max_simplex_volume(3)
    with Timer() as timer:
        for _ in range(200):
            pts = [random_point(rng, 3, ideal_prob=0.5, inf_prob=0.05) for _ in range(4)]
            base = simplex_volume(pts, tol)
            assert abs(base.value) <= vmax + base.est_error
            perm = tuple(rng.permutation(4))
            permuted = simplex_volume([pts[i] for i in perm], tol).value
            assert abs(permuted - _sign(perm) * base.value) <= 2 * tol
            g = random_isometry(rng, 3)
            moved = simplex_volume([act(g, p) for p in pts], tol).value
            assert abs(moved - base.value) <= 2 * tol
        for _ in range(50):
            pts = [random_point(rng, 3, ideal_prob=0.5, inf_prob=0.05) for _ in range(5)]
            total = sum((-1) ** i * simplex_volume(pts[:i] + pts[i + 1:], tol).value for i in range(5))
            assert abs(total) <= 5 * tol
    assert timer.elapsed < 60.0


@pytest.mark.criterion(3, "closed form vs quadrature on ideal tetrahedra")
def test_criterion_3_cross_path():
    rng = np.random.default_rng(3)
    with Timer() as timer:
        worst = 0.0
        for _ in range(50):
            pts = [random_ideal(rng) for _ in range(4)]
            closed = simplex_volume(pts, method="closed").value
            quadv = simplex_volume(pts, tol=1e-7, method="quadrature").value
            worst = max(worst, abs(closed - quadv))
    assert worst <= 1e-6
    assert timer.elapsed < 120.0


@pytest.mark.criterion(4, "figure-eight knot complement volume and Milnor-Wood ratio")
def test_criterion_4_figure_eight():
    assert FIG8 == pytest.approx(2.0298832128193, abs=1e-12)
    with Timer() as timer:
        t, c, p = corpus.load("figure_eight")
        report = compute_volume(t, c, p)
        mw = milnor_wood_report(report)
    assert abs(abs(report.total) - FIG8) <= 1e-6
    assert abs(mw.ratio - 1.0) <= 1e-5 and mw.passed
    assert timer.elapsed < 5.0


@pytest.mark.criterion(5, "punctured torus area 2 pi")
def test_criterion_5_punctured_torus():
    with Timer() as timer:
        t, c, p = corpus.load("punctured_torus")
        total = compute_volume(t, c, p).total
    assert abs(abs(total) - 2 * math.pi) <= 1e-9
    assert timer.elapsed < 1.0


@pytest.mark.criterion(6, "independence of placement, root and triangulation")
def test_criterion_6_choice_independence():
    with Timer() as timer:
        for name in ("figure_eight", "punctured_torus"):
            t, c, p = corpus.load(name)
            ts, cs = barycentric_subdivide(t, c)
            for tri, coc in ((t, c), (ts, cs)):
                report = invariance_test(tri, coc, p, samples=20, seed=6, tol=1e-7)
                assert report.passed and report.max_deviation <= 1e-6
        t, c, p = corpus.load("figure_eight")
        fig8 = subdivision_test(t, c, p, tol=1e-7)
        assert fig8.simplices_after == 48
        assert abs(fig8.delta) <= 5e-5 and fig8.passed
        t, c, p = corpus.load("punctured_torus")
        torus = subdivision_test(t, c, p)
        assert abs(torus.delta) <= 1e-12
        t, c, p = corpus.load("figure_eight_trivial")
        trivial = subdivision_test(t, c, p)
        assert trivial.vol_before == 0.0 and trivial.passed
    assert timer.elapsed < 300.0


@pytest.mark.criterion(7, "trivial and boundary-fixing representations")
def test_criterion_7_degenerate():
    for name in ("figure_eight_trivial", "punctured_torus_trivial"):
        t, c, p = corpus.load(name)
        assert compute_volume(t, c, p).total == 0.0
        assert compute_volume(t, c, p, PlacementPolicy("random", 1)).total == 0.0
    for name in ("figure_eight_upper", "punctured_torus_upper"):
        t, c, p = corpus.load(name)
        assert compute_volume(t, c, p).total == 0.0
        ts, cs = barycentric_subdivide(t, c)
        for seed in range(10):
            total = compute_volume(ts, cs, p, PlacementPolicy("random", seed), tol=1e-8).total
            assert abs(total) <= 1e-6


@pytest.mark.criterion(8, "validator flags single-entry perturbations")
def test_criterion_8_validator():
    t, c, p = corpus.load("figure_eight")
    for index, entry, delta in itertools.product(range(len(t.gluings)), range(4), (1e-3, 1e-3j)):
        m = c[t.gluings[index].src].matrix.copy()
        m[entry // 2, entry % 2] += delta
        bad = c.replace(t, index, Isometry(m.tolist(), 3, normalize=True))
        report = validate_cocycle(t, bad)
        assert not report.passed and report.max_residual >= 1e-4, (index, entry, delta)
        with pytest.raises(EquivarianceError):
            develop(t, bad, place_vertices(t, bad, p))
