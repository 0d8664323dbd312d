"""Named configurations and a seeded corpus covering every locus kind."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .catalog import LineSet4
from .cone import HRCone, LinePair, generating_lines
from .geom import Line, SymMat2


@dataclass(frozen=True)
class Config:
    name: str
    expected: str
    p1: LinePair
    p2: LinePair


def four_branch_pairs() -> tuple[LinePair, LinePair]:
    """Generating pairs of ``z^2 = (x-1)^2 + y^2`` and ``z^2 = 2x^2 + y^2/2``."""
    unit = LinePair(Line.vertical(1.0), Line.horizontal(0.0))
    other = generating_lines(HRCone(SymMat2.diag(2.0, 0.5), (0.0, 0.0))).pair
    return unit, other


FOUR_BRANCH_POINTS = (
    (1.0, 2.0),
    (2.0, math.sqrt(14.0)),
    (3.0, math.sqrt(28.0)),
    (4.0, math.sqrt(46.0)),
)


def generic_lines() -> LineSet4:
    """No two parallel, no two perpendicular, no three concurrent."""
    return LineSet4.of(
        Line.from_slope_intercept(0.3, 1.0),
        Line.from_slope_intercept(-1.7, 0.5),
        Line.from_slope_intercept(2.9, -2.0),
        Line.through((1.0, 0.0), (0.2, 5.0)),
    )


def square_lines() -> LineSet4:
    """``A, C`` and ``B, D`` are opposite sides of the square ``[0, 2]^2``."""
    return LineSet4.of(Line.vertical(0.0), Line.horizontal(0.0), Line.vertical(2.0), Line.horizontal(2.0))


def two_orthogonal_pairs() -> LineSet4:
    """``y = x``, ``y = -x``, ``y = x + 2``, ``y = -x + 2``."""
    return LineSet4.of(
        Line.from_slope_intercept(1.0, 0.0),
        Line.from_slope_intercept(-1.0, 0.0),
        Line.from_slope_intercept(1.0, 2.0),
        Line.from_slope_intercept(-1.0, 2.0),
    )


# ---------------------------------------------------------------------------
# Random corpus


def _unit(a: float) -> np.ndarray:
    return np.array([math.cos(a), math.sin(a)])


def _crossing_pair(p, a1: float, a2: float) -> LinePair:
    return LinePair(Line.from_point_direction(p, _unit(a1)), Line.from_point_direction(p, _unit(a2)))


def _parallel_pair(p, a: float, halfgap: float) -> LinePair:
    n = _unit(a + 0.5 * math.pi)
    p = np.asarray(p, dtype=float)
    return LinePair(
        Line.from_point_direction(p + halfgap * n, _unit(a)), Line.from_point_direction(p - halfgap * n, _unit(a))
    )


def _oblique(rng, lo: float = 0.25) -> float:
    """An angle between two lines, bounded away from parallel and perpendicular."""
    return rng.uniform(lo, 0.5 * math.pi - lo) * rng.choice([-1, 1])


def _pt(rng, r: float = 4.0) -> np.ndarray:
    return rng.uniform(-r, r, 2)


def _hyperbola(rng) -> Config:
    while True:
        p1 = _crossing_pair(_pt(rng), a := rng.uniform(0, math.pi), a + _oblique(rng))
        p2 = _crossing_pair(_pt(rng), b := rng.uniform(0, math.pi), b + _oblique(rng))
        # reject translates (same cone matrix) and near-shared lines
        if abs(math.sin(a - b)) < 0.1:
            continue
        if any(l.same_as(m, 0.2) for l in p1.lines() for m in p2.lines()):
            continue
        return Config("crossing pairs", "hyperbola", p1, p2)


def _shared(rng) -> Config:
    p = _pt(rng)
    a = rng.uniform(0, math.pi)
    shared = Line.from_point_direction(p, _unit(a))
    q = shared.point_at(rng.uniform(2.0, 5.0) * rng.choice([-1, 1]) + shared.param_of(p))
    l1 = Line.from_point_direction(p, _unit(a + _oblique(rng)))
    l2 = Line.from_point_direction(tuple(q), _unit(a + _oblique(rng)))
    return Config("shared line", "degenerate-hyperbola", LinePair(l1, shared), LinePair(shared, l2))


def _line(rng, i: int) -> Config:
    kind = i % 4
    if kind == 0:
        a, t = rng.uniform(0, math.pi), _oblique(rng)
        return Config("translates", "line", _crossing_pair(_pt(rng), a, a + t), _crossing_pair(_pt(rng), a, a + t))
    if kind == 1:
        a, b = rng.uniform(0, math.pi, 2)
        return Config(
            "orthogonal pairs", "line",
            _crossing_pair(_pt(rng), a, a + 0.5 * math.pi), _crossing_pair(_pt(rng), b, b + 0.5 * math.pi),
        )
    if kind == 2:
        p, a = _pt(rng), rng.uniform(0, math.pi)
        g1, g2 = rng.uniform(0.5, 3.0, 2)
        return Config("common midline", "line", _parallel_pair(p, a, g1), _parallel_pair(p + 3 * _unit(a), a, g2 + 0.1))
    # slab whose midline stays far from the crossing relative to the gap
    c = _pt(rng)
    a = rng.uniform(0, math.pi)
    theta = rng.uniform(0.3, 0.5 * math.pi - 0.3)
    cone = _crossing_pair(c, a, a + theta)
    b = rng.uniform(0, math.pi)
    delta = rng.uniform(2.0, 5.0)
    mid = c + delta * _unit(b + 0.5 * math.pi)
    # a gap well below every half-chord along the midline
    d = 0.8 * delta * math.tan(0.5 * theta) * abs(math.sin(b - a)) * abs(math.sin(b - a - theta))
    return Config("distant slab", "line", _parallel_pair(mid, b, max(d, 0.05)), cone)


def _gap(rng) -> Config:
    c = _pt(rng)
    a = rng.uniform(0, math.pi)
    cone = _crossing_pair(c, a, a + _oblique(rng))
    b = rng.uniform(0, math.pi)
    mid = c + rng.uniform(-0.5, 0.5) * _unit(b + 0.5 * math.pi)
    return Config("slab near crossing", "line-minus-segment", _parallel_pair(mid, b, rng.uniform(0.8, 3.0)), cone)


def _point(rng) -> Config:
    a = rng.uniform(0, math.pi)
    b = a + rng.uniform(0.3, math.pi - 0.3)
    return Config(
        "crossing midlines", "point",
        _parallel_pair(_pt(rng), a, rng.uniform(0.3, 3.0)), _parallel_pair(_pt(rng), b, rng.uniform(0.3, 3.0)),
    )


def _empty(rng) -> Config:
    p, a = _pt(rng), rng.uniform(0, math.pi)
    shift = rng.uniform(0.5, 3.0) * _unit(a + 0.5 * math.pi)
    return Config(
        "parallel midlines", "empty",
        _parallel_pair(p, a, rng.uniform(0.3, 3.0)), _parallel_pair(p + shift, a, rng.uniform(0.3, 3.0)),
    )


def _plane(rng) -> Config:
    p = _pt(rng)
    a, b = rng.uniform(0, math.pi, 2)
    return Config(
        "orthogonal pairs, one crossing", "plane",
        _crossing_pair(p, a, a + 0.5 * math.pi), _crossing_pair(p, b, b + 0.5 * math.pi),
    )


CORPUS_MIX = {
    "hyperbola": 25,
    "degenerate-hyperbola": 15,
    "line": 16,
    "line-minus-segment": 14,
    "point": 10,
    "empty": 10,
    "plane": 10,
}


def stratified_corpus(seed: int = 2024, mix: dict[str, int] = CORPUS_MIX) -> list[Config]:
    """Configurations grouped by the locus kind they are built to have."""
    rng = np.random.default_rng(seed)
    makers = {
        "hyperbola": lambda i: _hyperbola(rng),
        "degenerate-hyperbola": lambda i: _shared(rng),
        "line": lambda i: _line(rng, i),
        "line-minus-segment": lambda i: _gap(rng),
        "point": lambda i: _point(rng),
        "empty": lambda i: _empty(rng),
        "plane": lambda i: _plane(rng),
    }
    return [makers[k](i) for k, n in mix.items() for i in range(n)]
