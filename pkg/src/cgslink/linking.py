"""Crossing tables and exact linking numbers for cycles and loops of a scene.

The table stores, for every ordered pair of polyline units that do not share
a graph vertex, the signed number of crossings where the first passes over
the second. A cycle-pair linking number is then a sum of p*q table entries.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .cycles import OrientedCycle, cycle_templates
from .geometry import (
    DegenerateProjection,
    ProjectionFrame,
    crossing_from_projected,
    frame_candidates,
)
from .scene import SpatialScene, units_share_endpoint


@dataclass(frozen=True)
class Loop:
    """Reference to the k-th extra loop of a scene."""

    index: int

    def __str__(self):
        return f"loop{self.index}"


def _relevant_unit_pairs(scene: SpatialScene):
    for u1, u2 in combinations(scene.units(), 2):
        if not units_share_endpoint(u1, u2):
            yield u1, u2


def _projected_units(scene: SpatialScene, frame: ProjectionFrame) -> dict:
    return {unit: [frame.project(p) for p in scene.unit_polyline(unit)] for unit in scene.units()}


def _over_counts(scene: SpatialScene, frame: ProjectionFrame) -> dict:
    """Map (over unit, under unit) -> signed crossing count; raises DegenerateProjection."""
    proj = _projected_units(scene, frame)
    counts = {}
    for u1, u2 in _relevant_unit_pairs(scene):
        pts1, pts2 = proj[u1], proj[u2]
        c12 = c21 = 0
        for s in range(len(pts1) - 1):
            a, b = pts1[s], pts1[s + 1]
            for t in range(len(pts2) - 1):
                crossing = crossing_from_projected(a, b, pts2[t], pts2[t + 1])
                if crossing is None:
                    continue
                if crossing.over == 0:
                    c12 += crossing.sign
                else:
                    c21 += crossing.sign
        counts[(u1, u2)] = c12
        counts[(u2, u1)] = c21
    return counts


def choose_frame(scene: SpatialScene) -> ProjectionFrame:
    """First frame of the deterministic candidate sequence with no degenerate pair."""
    return _search_frame(scene)[0]


def _search_frame(scene: SpatialScene):
    for frame in frame_candidates():
        try:
            return frame, _over_counts(scene, frame)
        except DegenerateProjection:
            continue


class CrossingTable:
    """Signed over-crossing counts between polyline units of one scene.

    ``edge_over[i, j, k, l]`` is the count for edge i->j passing over edge
    k->l (zero when the edges share a vertex). ``loop_over[r][k, l]`` and
    ``loop_under[r][k, l]`` hold loop r over, resp. under, edge k->l, and
    ``loop_loop[r, s]`` loop r over loop s. All arrays are read-only.
    """

    def __init__(self, scene: SpatialScene, frame: ProjectionFrame, counts: dict):
        self.scene = scene
        self.frame = frame
        self.n = n = scene.n
        n_loops = len(scene.loops)
        edge_over = np.zeros((n + 1,) * 4, dtype=np.int64)
        loop_over = np.zeros((n_loops, n + 1, n + 1), dtype=np.int64)
        loop_under = np.zeros((n_loops, n + 1, n + 1), dtype=np.int64)
        loop_loop = np.zeros((n_loops, n_loops), dtype=np.int64)
        for (ua, ub), c in counts.items():
            if ua[0] == "edge" and ub[0] == "edge":
                _, i, j = ua
                _, k, l = ub
                edge_over[i, j, k, l] = c
                edge_over[j, i, k, l] = -c
                edge_over[i, j, l, k] = -c
                edge_over[j, i, l, k] = c
            elif ua[0] == "loop" and ub[0] == "edge":
                _, k, l = ub
                loop_over[ua[1], k, l] = c
                loop_over[ua[1], l, k] = -c
            elif ua[0] == "edge" and ub[0] == "loop":
                _, k, l = ua
                loop_under[ub[1], k, l] = c
                loop_under[ub[1], l, k] = -c
            else:
                loop_loop[ua[1], ub[1]] = c
        for arr in (edge_over, loop_over, loop_under, loop_loop):
            arr.setflags(write=False)
        self.edge_over = edge_over
        self.loop_over = loop_over
        self.loop_under = loop_under
        self.loop_loop = loop_loop
        self._counts = dict(counts)

    def entry(self, a: tuple, b: tuple) -> int:
        """c(a, b) for units given as ("edge", i, j) in any direction or ("loop", k)."""
        sa, a = _reference_unit(a)
        sb, b = _reference_unit(b)
        if units_share_endpoint(a, b) or a == b:
            raise KeyError(f"no table entry for units sharing a vertex: {a}, {b}")
        return sa * sb * self._counts[(a, b)]

    def entries(self) -> dict:
        return dict(self._counts)

    def cycle_over_weights(self, cycle: OrientedCycle) -> np.ndarray:
        """Matrix W with W[k, l] = crossings of ``cycle`` over edge k->l."""
        v = np.asarray(cycle.vertices, dtype=np.intp)
        return self.edge_over[v, np.roll(v, -1)].sum(axis=0)


def _reference_unit(unit: tuple):
    if unit[0] == "edge":
        _, i, j = unit
        return (1, ("edge", i, j)) if i < j else (-1, ("edge", j, i))
    return 1, ("loop", unit[1])


def build_crossing_table(scene: SpatialScene, frame: ProjectionFrame | None = None) -> CrossingTable:
    """Crossing table of a validated scene, under ``frame`` or the first generic one."""
    if frame is None:
        frame, counts = _search_frame(scene)
    else:
        counts = _over_counts(scene, frame)
    return CrossingTable(scene, frame, counts)


def as_table(obj) -> CrossingTable:
    if isinstance(obj, CrossingTable):
        return obj
    if isinstance(obj, SpatialScene):
        return build_crossing_table(obj)
    raise TypeError(f"expected a SpatialScene or CrossingTable, got {type(obj).__name__}")


def _vertices(x) -> frozenset:
    return x.vertex_set if isinstance(x, OrientedCycle) else frozenset()


def linking_number(table, a, b) -> int:
    """Exact linking number of two disjoint cycles and/or loops.

    Counts crossings where ``a`` passes over ``b``; ``a`` and ``b`` are
    OrientedCycle or Loop instances.
    """
    table = as_table(table)
    if _vertices(a) & _vertices(b):
        raise ValueError(f"{a} and {b} share a vertex")
    if isinstance(a, Loop) and isinstance(b, Loop):
        if a.index == b.index:
            raise ValueError("a loop is not disjoint from itself")
        return int(table.loop_loop[a.index, b.index])
    if isinstance(a, Loop):
        w = table.loop_over[a.index]
        return int(sum(w[k, l] for k, l in b.edges()))
    if isinstance(b, Loop):
        w = table.loop_under[b.index]
        return int(sum(w[k, l] for k, l in a.edges()))
    e = table.edge_over
    return int(sum(e[i, j, k, l] for i, j in a.edges() for k, l in b.edges()))


def cycle_lk_values(weights: np.ndarray, vertex_set, p: int | None = None) -> np.ndarray:
    """Values sum(weights[e] for e in cycle) for every canonical cycle on ``vertex_set``.

    Rows follow the order of :func:`cycles.cycles_on`.
    """
    verts = np.asarray(sorted(vertex_set), dtype=np.intp)
    tmpl = cycle_templates(len(verts))
    seq = verts[tmpl]
    return weights[seq, np.roll(seq, -1, axis=1)].sum(axis=1)


def cycle_array_lk(weights: np.ndarray, cycles) -> np.ndarray:
    """Same as :func:`cycle_lk_values` for an explicit list of equal-length cycles."""
    if not cycles:
        return np.zeros(0, dtype=np.int64)
    seq = np.asarray([c.vertices for c in cycles], dtype=np.intp)
    return weights[seq, np.roll(seq, -1, axis=1)].sum(axis=1)


def polyline_of(scene: SpatialScene, x) -> list:
    """Closed polyline (first point repeated) traced by a cycle or loop."""
    if isinstance(x, Loop):
        return list(scene.loop_polyline(x.index))
    pts = []
    for i, j in x.edges():
        pts.extend(scene.edge_polyline(i, j)[:-1])
    pts.append(pts[0])
    return pts


def gauss_estimate(scene: SpatialScene, a, b) -> float:
    """Floating-point Gauss linking integral of two disjoint closed polylines.

    Each segment pair contributes the signed solid angle of the quadrilateral
    it spans, divided by 4*pi.
    """
    pa = np.asarray(polyline_of(scene, a), dtype=float)
    pb = np.asarray(polyline_of(scene, b), dtype=float)
    p1 = pa[:-1, None, :]
    p2 = pa[1:, None, :]
    p3 = pb[None, :-1, :]
    p4 = pb[None, 1:, :]
    r13, r14 = p3 - p1, p4 - p1
    r23, r24 = p3 - p2, p4 - p2
    r12, r34 = p2 - p1, p4 - p3

    def unit(v):
        norm = np.linalg.norm(v, axis=-1, keepdims=True)
        return np.divide(v, norm, out=np.zeros_like(v), where=norm > 0)

    n1 = unit(np.cross(r13, r14))
    n2 = unit(np.cross(r14, r24))
    n3 = unit(np.cross(r24, r23))
    n4 = unit(np.cross(r23, r13))

    def asin_dot(u, v):
        return np.arcsin(np.clip(np.sum(u * v, axis=-1), -1.0, 1.0))

    omega = asin_dot(n1, n2) + asin_dot(n2, n3) + asin_dot(n3, n4) + asin_dot(n4, n1)
    orient = np.sign(np.sum(np.cross(r34, r12) * r13, axis=-1))
    return float(np.sum(omega * orient) / (4.0 * math.pi))


__all__ = [
    "Loop",
    "CrossingTable",
    "choose_frame",
    "build_crossing_table",
    "as_table",
    "linking_number",
    "cycle_lk_values",
    "cycle_array_lk",
    "polyline_of",
    "gauss_estimate",
]
