"""Piecewise-linear spatial embeddings of K_n plus disjoint loops.

A scene stores vertex positions, optional bend points on each edge and any
number of extra closed polylines. Scenes are immutable; ``validate`` decides
whether the data is an honest embedding, and ``load``/``save`` handle the
JSON scene file format.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Mapping, NamedTuple

from .geometry import (
    DEFAULT_BOUND,
    Point3,
    cross,
    meet_only_at_shared,
    segments_intersect_3d,
)

Edge = tuple  # (i, j) with i < j


class SceneFormatError(ValueError):
    """Malformed scene data; ``location`` names the offending field."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class CoordinateOverflowError(SceneFormatError):
    """A coordinate exceeds the configured magnitude bound."""


class ValidityError(Exception):
    """The scene is not an embedding.

    ``violations`` lists ``(kind, label_a, label_b)`` tuples; labels are the
    segment labels produced by :meth:`SpatialScene.segments`.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        lines = [f"{kind}: {a} / {b}" if b is not None else f"{kind}: {a}" for kind, a, b in self.violations]
        super().__init__(f"{len(self.violations)} validity violation(s): " + "; ".join(lines[:10]))


class SegmentLabel(NamedTuple):
    """Which polyline unit a segment belongs to, and where.

    ``unit`` is ``("edge", i, j)`` with i < j or ``("loop", k)``.
    ``index`` is the segment position along the unit's reference direction.
    """

    unit: tuple
    index: int

    def __str__(self):
        if self.unit[0] == "edge":
            return f"edge {self.unit[1]}-{self.unit[2]}[{self.index}]"
        return f"loop {self.unit[1]}[{self.index}]"


def _point(value, location: str, bound: int) -> Point3:
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise SceneFormatError("expected [x, y, z]", location)
    coords = []
    for k, c in enumerate(value):
        if isinstance(c, bool) or not isinstance(c, int):
            raise SceneFormatError(f"coordinate must be an integer, got {c!r}", f"{location}[{k}]")
        if abs(c) > bound:
            raise CoordinateOverflowError(f"|{c}| exceeds bound {bound}", f"{location}[{k}]")
        coords.append(c)
    return Point3(*coords)


@dataclass(frozen=True)
class SpatialScene:
    n: int
    positions: tuple  # positions[v - 1] is vertex v
    waypoints: Mapping = field(default_factory=dict)  # (i, j), i < j -> tuple of Point3
    loops: tuple = ()
    bound: int = field(default=DEFAULT_BOUND, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 3:
            raise SceneFormatError(f"n must be an integer >= 3, got {self.n!r}", "n")
        if len(self.positions) != self.n:
            raise SceneFormatError(f"expected {self.n} positions, got {len(self.positions)}", "positions")
        positions = tuple(_point(p, f"positions[{v + 1}]", self.bound) for v, p in enumerate(self.positions))
        waypoints = {}
        for key, pts in dict(self.waypoints).items():
            i, j = key
            if not (1 <= i < j <= self.n):
                raise SceneFormatError(f"edge key {key!r} must satisfy 1 <= i < j <= n", "waypoints")
            pts = tuple(_point(p, f"waypoints[{i}-{j}][{k}]", self.bound) for k, p in enumerate(pts))
            if pts:
                waypoints[(i, j)] = pts
        loops = []
        for k, loop in enumerate(self.loops):
            if len(loop) < 3:
                raise SceneFormatError("a loop needs at least 3 points", f"loops[{k}]")
            loops.append(tuple(_point(p, f"loops[{k}][{t}]", self.bound) for t, p in enumerate(loop)))
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "waypoints", dict(sorted(waypoints.items())))
        object.__setattr__(self, "loops", tuple(loops))

    def position(self, v: int) -> Point3:
        return self.positions[v - 1]

    def edges(self) -> list:
        return list(combinations(range(1, self.n + 1), 2))

    def edge_polyline(self, i: int, j: int) -> tuple:
        """Points of the arc from vertex i to vertex j (either order)."""
        lo, hi = min(i, j), max(i, j)
        pts = (self.position(lo),) + self.waypoints.get((lo, hi), ()) + (self.position(hi),)
        return pts if i < j else pts[::-1]

    def loop_polyline(self, k: int) -> tuple:
        """Closed polyline of loop k, first point repeated at the end."""
        loop = self.loops[k]
        return loop + (loop[0],)

    def unit_polyline(self, unit: tuple) -> tuple:
        if unit[0] == "edge":
            return self.edge_polyline(unit[1], unit[2])
        return self.loop_polyline(unit[1])

    def units(self) -> list:
        return [("edge", i, j) for i, j in self.edges()] + [("loop", k) for k in range(len(self.loops))]

    def segments(self) -> Iterator[tuple]:
        """Yield ``(SegmentLabel, (a, b))`` for every segment in reference direction."""
        for unit in self.units():
            pts = self.unit_polyline(unit)
            for t in range(len(pts) - 1):
                yield SegmentLabel(unit, t), (pts[t], pts[t + 1])

    def with_loops(self, loops) -> "SpatialScene":
        return SpatialScene(self.n, self.positions, self.waypoints, tuple(loops), self.bound)


def unit_vertices(unit: tuple) -> frozenset:
    """Graph vertices a polyline unit is attached to (empty for loops)."""
    if unit[0] == "edge":
        return frozenset(unit[1:])
    return frozenset()


def units_share_endpoint(u1: tuple, u2: tuple) -> bool:
    return bool(unit_vertices(u1) & unit_vertices(u2))


def _shared_point(scene: SpatialScene, la: SegmentLabel, sa, lb: SegmentLabel, sb):
    """The polyline point two segments legitimately share, or None."""
    if la.unit == lb.unit:
        n_seg = len(scene.unit_polyline(la.unit)) - 1
        if lb.index == la.index + 1:
            return sa[1]
        if la.index == lb.index + 1:
            return sa[0]
        if la.unit[0] == "loop" and {la.index, lb.index} == {0, n_seg - 1}:
            return sa[0] if la.index == 0 else sa[1]
        return None
    common = unit_vertices(la.unit) & unit_vertices(lb.unit)
    if common:
        p = scene.position(next(iter(common)))
        if p in sa and p in sb:
            return p
    return None


def _polyline_corners(points, closed: bool):
    m = len(points)
    rng = range(m) if closed else range(1, m - 1)
    for t in rng:
        yield t, points[t - 1], points[t], points[(t + 1) % m]


def validate(scene: SpatialScene) -> None:
    """Raise ValidityError unless ``scene`` is a PL embedding of K_n plus its loops."""
    violations = []
    seen = {}
    for v, p in enumerate(scene.positions, start=1):
        if p in seen:
            violations.append(("coincident vertices", f"vertex {seen[p]}", f"vertex {v}"))
        seen[p] = v
    for (i, j), pts in scene.waypoints.items():
        for k, p in enumerate(pts):
            if p in seen:
                violations.append(("waypoint on vertex", f"edge {i}-{j} waypoint {k}", f"vertex {seen[p]}"))
    for unit in scene.units():
        closed = unit[0] == "loop"
        pts = scene.loops[unit[1]] if closed else scene.unit_polyline(unit)
        name = str(SegmentLabel(unit, 0)).rsplit("[", 1)[0]
        m = len(pts)
        for t in range(m if closed else m - 1):
            if pts[t] == pts[(t + 1) % m]:
                violations.append(("repeated point", f"{name} point {t}", None))
        for t, a, b, c in _polyline_corners(pts, closed):
            if a != b and b != c and cross((b[0] - a[0], b[1] - a[1], b[2] - a[2]),
                                           (c[0] - b[0], c[1] - b[1], c[2] - b[2])) == (0, 0, 0):
                violations.append(("collinear corner", f"{name} point {t}", None))
    if violations:
        raise ValidityError(violations)

    segs = list(scene.segments())
    for (la, sa), (lb, sb) in combinations(segs, 2):
        shared = _shared_point(scene, la, sa, lb, sb)
        if shared is None:
            if segments_intersect_3d(sa, sb):
                violations.append(("intersecting segments", str(la), str(lb)))
        else:
            other_a = sa[1] if sa[0] == shared else sa[0]
            other_b = sb[1] if sb[0] == shared else sb[0]
            if not meet_only_at_shared(shared, other_a, other_b):
                violations.append(("overlapping segments", str(la), str(lb)))
    if violations:
        raise ValidityError(violations)


def is_valid(scene: SpatialScene) -> bool:
    try:
        validate(scene)
    except ValidityError:
        return False
    return True


def _parse_edge_key(key: str, n: int) -> tuple:
    parts = key.split("-")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise SceneFormatError(f"malformed edge key {key!r}, expected 'i-j'", f"waypoints[{key!r}]")
    i, j = int(parts[0]), int(parts[1])
    if not (1 <= i < j <= n):
        raise SceneFormatError(f"edge key {key!r} must satisfy 1 <= i < j <= n", f"waypoints[{key!r}]")
    return i, j


def from_dict(data, bound: int = DEFAULT_BOUND) -> SpatialScene:
    if not isinstance(data, dict):
        raise SceneFormatError("scene must be a JSON object")
    unknown = set(data) - {"n", "positions", "waypoints", "loops"}
    if unknown:
        raise SceneFormatError(f"unknown field(s) {sorted(unknown)}")
    n = data.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 3:
        raise SceneFormatError(f"n must be an integer >= 3, got {n!r}", "n")
    raw_pos = data.get("positions")
    if not isinstance(raw_pos, dict):
        raise SceneFormatError("expected an object keyed by vertex id", "positions")
    expected = {str(v) for v in range(1, n + 1)}
    if set(raw_pos) != expected:
        raise SceneFormatError(f"keys must be exactly '1'..'{n}'", "positions")
    positions = tuple(_point(raw_pos[str(v)], f"positions[{v}]", bound) for v in range(1, n + 1))
    raw_wp = data.get("waypoints", {})
    if not isinstance(raw_wp, dict):
        raise SceneFormatError("expected an object keyed by 'i-j'", "waypoints")
    waypoints = {}
    for key, pts in raw_wp.items():
        edge = _parse_edge_key(key, n)
        if not isinstance(pts, list):
            raise SceneFormatError("expected a list of points", f"waypoints[{key}]")
        waypoints[edge] = tuple(_point(p, f"waypoints[{key}][{k}]", bound) for k, p in enumerate(pts))
    raw_loops = data.get("loops", [])
    if not isinstance(raw_loops, list):
        raise SceneFormatError("expected a list of loops", "loops")
    loops = []
    for k, loop in enumerate(raw_loops):
        if not isinstance(loop, list) or len(loop) < 3:
            raise SceneFormatError("a loop is a list of at least 3 points", f"loops[{k}]")
        loops.append(tuple(_point(p, f"loops[{k}][{t}]", bound) for t, p in enumerate(loop)))
    return SpatialScene(n, positions, waypoints, tuple(loops), bound)


def to_dict(scene: SpatialScene) -> dict:
    data = {
        "n": scene.n,
        "positions": {str(v): list(scene.position(v)) for v in range(1, scene.n + 1)},
    }
    if scene.waypoints:
        data["waypoints"] = {f"{i}-{j}": [list(p) for p in pts] for (i, j), pts in scene.waypoints.items()}
    data["loops"] = [[list(p) for p in loop] for loop in scene.loops]
    return data


def dumps(scene: SpatialScene) -> str:
    """Deterministic JSON text, one point per line."""
    def pt(p):
        return "[" + ", ".join(str(c) for c in p) + "]"

    lines = ["{", f'  "n": {scene.n},', '  "positions": {']
    lines += [f'    "{v}": {pt(scene.position(v))}' + ("," if v < scene.n else "") for v in range(1, scene.n + 1)]
    lines.append("  },")
    if scene.waypoints:
        lines.append('  "waypoints": {')
        items = list(scene.waypoints.items())
        for idx, ((i, j), pts) in enumerate(items):
            sep = "," if idx < len(items) - 1 else ""
            lines.append(f'    "{i}-{j}": [' + ", ".join(pt(p) for p in pts) + "]" + sep)
        lines.append("  },")
    if not scene.loops:
        lines.append('  "loops": []')
    else:
        lines.append('  "loops": [')
        for k, loop in enumerate(scene.loops):
            sep = "," if k < len(scene.loops) - 1 else ""
            lines.append("    [" + ", ".join(pt(p) for p in loop) + "]" + sep)
        lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads(text: str, bound: int = DEFAULT_BOUND) -> SpatialScene:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneFormatError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from exc
    return from_dict(data, bound)


def load(source, bound: int = DEFAULT_BOUND) -> SpatialScene:
    """Read a scene from a path or a text stream."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            return loads(fh.read(), bound)
    return loads(source.read(), bound)


def save(scene: SpatialScene, sink) -> None:
    """Write a scene to a path or a text stream."""
    text = dumps(scene)
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sink.write(text)


__all__ = [
    "SpatialScene",
    "SceneFormatError",
    "CoordinateOverflowError",
    "ValidityError",
    "SegmentLabel",
    "validate",
    "is_valid",
    "load",
    "loads",
    "save",
    "dumps",
    "from_dict",
    "to_dict",
    "units_share_endpoint",
    "unit_vertices",
]
