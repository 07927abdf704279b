import random
from fractions import Fraction
from pathlib import Path

import pytest

from k3walls.fibers import WeierstrassData
from k3walls.poly import BinaryForm, power

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

POINTS = [None, 0, 1, -1, 2, -2, 3, Fraction(1, 2), Fraction(-2, 3)]


def random_form(rng, degree, height=9):
    return BinaryForm.from_coeffs(rng.randint(-height, height) for _ in range(degree + 1))


def random_weierstrass(rng, N=2, planted=True):
    """Random data; with ``planted`` some points get shared zeros of A and B."""
    if not planted:
        return WeierstrassData(N, random_form(rng, 4 * N), random_form(rng, 6 * N))
    a = BinaryForm.constant(rng.choice([1, -1, 2]))
    b = BinaryForm.constant(rng.choice([1, -3, 5]))
    for p in rng.sample(POINTS, rng.randint(0, 3)):
        t = BinaryForm.linear(p)
        a = a * power(t, rng.randint(0, min(3, 4 * N - a.degree)))
        b = b * power(t, rng.randint(0, min(5, 6 * N - b.degree)))
    a = a * random_form(rng, 4 * N - a.degree)
    b = b * random_form(rng, 6 * N - b.degree)
    if a.is_zero() and b.is_zero():
        return random_weierstrass(rng, N, planted)
    return WeierstrassData(N, a, b)


def random_gl2(rng, height=3, unimodular=False):
    """Integer matrix with nonzero (or unit) determinant."""
    if unimodular:
        m = ((1, 0), (0, 1))
        for _ in range(rng.randint(1, 4)):
            k = rng.randint(-height, height)
            e = ((1, k), (0, 1)) if rng.random() < 0.5 else ((1, 0), (k, 1))
            m = tuple(
                tuple(sum(m[i][j] * e[j][l] for j in range(2)) for l in range(2)) for i in range(2)
            )
        return m
    while True:
        m = tuple(tuple(rng.randint(-height, height) for _ in range(2)) for _ in range(2))
        if m[0][0] * m[1][1] - m[0][1] * m[1][0]:
            return m


@pytest.fixture
def rng():
    return random.Random(20240611)


# -- acceptance reporting ---------------------------------------------------------

_RESULTS = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    _RESULTS.append((number, title, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok in sorted(_RESULTS):
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}")
