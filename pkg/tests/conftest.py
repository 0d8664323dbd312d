import math
import os
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from rectloci.geom import Line, SymMat2

settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ROOT = Path(__file__).resolve().parents[1]
SCENES = ROOT / "docs" / "scenes"

coord = st.floats(-5.0, 5.0, allow_nan=False)
angle = st.floats(0.0, math.pi, allow_nan=False, exclude_max=True)
points = st.tuples(coord, coord)


@st.composite
def lines(draw):
    return Line.from_point_direction(draw(points), (math.cos(a := draw(angle)), math.sin(a)))


@st.composite
def spd_det1(draw):
    """SPD matrix with determinant 1, condition number at most ~50."""
    phi = draw(angle)
    lam = draw(st.floats(1.0, 7.0))
    c, s = math.cos(phi), math.sin(phi)
    r = np.array([[c, -s], [s, c]])
    return SymMat2.from_array(r @ np.diag([lam, 1.0 / lam]) @ r.T)


def random_spd_det1(rng, n, max_log=2.0):
    """``n`` random SPD determinant-1 matrices as an ``(n, 2, 2)`` array."""
    phi = rng.uniform(0, math.pi, n)
    lam = np.exp(rng.uniform(-max_log, max_log, n))
    c, s = np.cos(phi), np.sin(phi)
    a11 = lam * c * c + s * s / lam
    a12 = (lam - 1.0 / lam) * c * s
    a22 = lam * s * s + c * c / lam
    return np.stack([np.stack([a11, a12], -1), np.stack([a12, a22], -1)], -2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, collected by tests/test_acceptance.py
CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        verdict, title = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}  {title}")
