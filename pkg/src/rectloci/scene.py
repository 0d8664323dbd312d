"""Scene files: labeled lines, optional pairings, metric and window.

A line is given either as ``{"label", "point", "direction"}`` or as
``{"label", "normal", "offset"}``; both are normalized on load and written
back in normal form.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .catalog import LABELS, LineSet4
from .cone import LinePair
from .errors import RectLocusError, SceneError
from .geom import Line, Point2, SymMat2
from .metric import InnerProduct
from .oracle import ScanWindow

DEFAULT_WINDOW = ScanWindow.square(10.0)


@dataclass(frozen=True)
class Scene:
    lines: tuple[tuple[str, Line], ...]
    pairings: tuple[str, ...] = ()
    metric: Optional[InnerProduct] = None
    window: ScanWindow = DEFAULT_WINDOW

    def __post_init__(self):
        labels = [l for l, _ in self.lines]
        if len(set(labels)) != len(labels):
            raise SceneError("labels must be unique", "lines")
        for i, p in enumerate(self.pairings):
            for group in p.split("|"):
                parse_pair(group, self, f"pairings[{i}]")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(l for l, _ in self.lines)

    def line(self, label: str) -> Line:
        return dict(self.lines)[label]

    def line_set(self) -> LineSet4:
        if sorted(self.labels) != list(LABELS):
            raise SceneError(f"the catalog needs exactly the labels {', '.join(LABELS)}", "lines")
        return LineSet4(dict(self.lines))

    def to_dict(self):
        out = {
            "lines": [
                {"label": l, "normal": list(line.normal), "offset": line.offset} for l, line in self.lines
            ],
            "window": {
                "lo": list(self.window.lo),
                "hi": list(self.window.hi),
                "resolution": self.window.resolution,
            },
        }
        if self.pairings:
            out["pairings"] = list(self.pairings)
        if self.metric is not None:
            m = self.metric.M
            out["metric"] = [m.a11, m.a12, m.a22]
        return out


def parse_pair(token: str, scene: Scene, where: str = "pair") -> tuple[str, str]:
    """``"AC"`` or ``"A,C"`` to a pair of existing labels."""
    parts = token.split(",") if "," in token else list(token)
    parts = [p.strip() for p in parts]
    if len(parts) != 2:
        raise SceneError(f"expected two labels, got {token!r}", where)
    for p in parts:
        if p not in scene.labels:
            raise SceneError(f"unknown label {p!r}", where)
    if parts[0] == parts[1]:
        raise SceneError(f"a pair needs two different lines, got {token!r}", where)
    return parts[0], parts[1]


def line_pair(scene: Scene, token: str, where: str = "pair") -> LinePair:
    a, b = parse_pair(token, scene, where)
    try:
        return LinePair(scene.line(a), scene.line(b))
    except RectLocusError as e:
        raise SceneError(str(e), where) from e


def _vec(v, where: str) -> tuple[float, float]:
    if not (isinstance(v, (list, tuple)) and len(v) == 2):
        raise SceneError("expected a list of two numbers", where)
    out = []
    for x in v:
        if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
            raise SceneError(f"expected a finite number, got {x!r}", where)
        out.append(float(x))
    return out[0], out[1]


def _num(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
        raise SceneError(f"expected a finite number, got {x!r}", where)
    return float(x)


def _line(d, where: str) -> tuple[str, Line]:
    if not isinstance(d, dict):
        raise SceneError("expected an object", where)
    label = d.get("label")
    if not isinstance(label, str) or not label or "|" in label or "," in label:
        raise SceneError("label must be a nonempty string without '|' or ','", f"{where}.label")
    try:
        if "normal" in d:
            return label, Line(_vec(d["normal"], f"{where}.normal"), _num(d.get("offset"), f"{where}.offset"))
        if "point" in d:
            return label, Line.from_point_direction(
                _vec(d["point"], f"{where}.point"), _vec(d.get("direction"), f"{where}.direction")
            )
    except SceneError:
        raise
    except RectLocusError as e:
        raise SceneError(str(e), where) from e
    raise SceneError("a line needs either normal/offset or point/direction", where)


def scene_from_dict(d) -> Scene:
    if not isinstance(d, dict):
        raise SceneError("scene must be a JSON object", "$")
    raw = d.get("lines")
    if not isinstance(raw, list) or not raw:
        raise SceneError("expected a nonempty list", "lines")
    lines = tuple(_line(x, f"lines[{i}]") for i, x in enumerate(raw))

    pairings = d.get("pairings", [])
    if not isinstance(pairings, list) or not all(isinstance(p, str) for p in pairings):
        raise SceneError("expected a list of strings such as \"AC|BD\"", "pairings")

    metric = None
    if d.get("metric") is not None:
        m = d["metric"]
        if not (isinstance(m, list) and len(m) == 3):
            raise SceneError("expected [m11, m12, m22]", "metric")
        vals = [_num(x, f"metric[{i}]") for i, x in enumerate(m)]
        try:
            metric = InnerProduct(SymMat2(*vals))
        except RectLocusError as e:
            raise SceneError(str(e), "metric") from e

    window = DEFAULT_WINDOW
    if d.get("window") is not None:
        w = d["window"]
        if not isinstance(w, dict):
            raise SceneError("expected an object", "window")
        res = w.get("resolution", 400)
        if isinstance(res, bool) or not isinstance(res, int):
            raise SceneError("expected an integer", "window.resolution")
        try:
            window = ScanWindow(
                Point2(*_vec(w.get("lo"), "window.lo")), Point2(*_vec(w.get("hi"), "window.hi")), res
            )
        except SceneError:
            raise
        except ValueError as e:
            raise SceneError(str(e), "window") from e
    return Scene(lines, tuple(pairings), metric, window)


def load_scene(source: Union[str, Path, dict]) -> Scene:
    if isinstance(source, dict):
        return scene_from_dict(source)
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as e:
        raise SceneError(str(e), str(path)) from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SceneError(f"invalid JSON: {e.msg}", f"{path}:{e.lineno}:{e.colno}") from e
    try:
        return scene_from_dict(data)
    except SceneError as e:
        raise SceneError(str(e), str(path)) from e


def dump_scene(scene: Scene) -> str:
    return json.dumps(scene.to_dict(), indent=2)
