import cmath
import math

import numpy as np
import pytest

from repvol.hyperbolic import ExtendedPoint, Isometry

ACCEPTANCE_RESULTS = {}


def random_isometry(rng, dim=3, scale=1.0):
    if dim == 2:
        m = rng.normal(scale=scale, size=(2, 2))
        if np.linalg.det(m) < 0:
            m[0] = -m[0]
    else:
        m = rng.normal(scale=scale, size=(2, 2)) + 1j * rng.normal(scale=scale, size=(2, 2))
    return Isometry(m.tolist(), dim, normalize=True)


def random_point(rng, dim=3, ideal_prob=0.5, inf_prob=0.0):
    if rng.uniform() < inf_prob:
        return ExtendedPoint.infinity(dim)
    if rng.uniform() < ideal_prob:
        z = complex(*rng.normal(size=2)) if dim == 3 else float(rng.normal())
        return ExtendedPoint.ideal(dim, z)
    h = math.exp(rng.normal(scale=0.5))
    return ExtendedPoint.interior(*rng.normal(size=dim - 1), h)


def random_ideal(rng, dim=3):
    return random_point(rng, dim, ideal_prob=1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


OMEGA = cmath.exp(1j * math.pi / 3)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    key = (number, title)
    failed = report.failed
    if report.when == "call" or failed:
        previous = ACCEPTANCE_RESULTS.get(key, True)
        ACCEPTANCE_RESULTS[key] = previous and not failed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), ok in sorted(ACCEPTANCE_RESULTS.items()):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
