"""Seeded construction of valid scenes.

All randomness comes from :class:`cgslink.rng.SplitMix64` seeded with the
caller's seed. Draw order (version 1):

* ``random_scene``: per attempt, vertex coordinates x, y, z for vertices
  1..n, then for each edge (i, j) in lexicographic order and each waypoint,
  an offset dx, dy, dz.
* ``threaded_loop_scene``: per attempt, vertex coordinates as above, then the
  chord endpoints a, b, then the spread vector r, then the offset h.

Failed attempts keep consuming the same stream, so a seed names one scene.
"""
from __future__ import annotations

import logging
from itertools import combinations

from .geometry import DEFAULT_BOUND, Point3
from .linking import build_crossing_table, cycle_lk_values
from .rng import SplitMix64
from .scene import CoordinateOverflowError, SpatialScene, ValidityError, validate

log = logging.getLogger(__name__)

DEFAULT_COORD_BOUND = 2 ** 10
DEFAULT_RETRY_BUDGET = 10_000


class GenerationError(RuntimeError):
    """No valid scene was found within the retry budget."""


def _check_bounds(coord_bound: int, bound: int, reach: int = 1) -> None:
    if coord_bound < 1:
        raise ValueError(f"coord_bound must be positive, got {coord_bound}")
    if coord_bound * reach > bound:
        raise ValueError(f"coord_bound {coord_bound} (reach x{reach}) exceeds bound {bound}")


def _random_point(rng: SplitMix64, lo: int, hi: int) -> Point3:
    return Point3(rng.randint(lo, hi), rng.randint(lo, hi), rng.randint(lo, hi))


def _clamp(v: int, cb: int) -> int:
    return max(-cb, min(cb, v))


def random_scene(
    n: int,
    seed: int,
    coord_bound: int = DEFAULT_COORD_BOUND,
    waypoints_per_edge: int = 0,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
    bound: int = DEFAULT_BOUND,
) -> SpatialScene:
    """Random K_n with vertices uniform in [-coord_bound, coord_bound]^3.

    Waypoint t of edge (i, j) sits at the point t/(w+1) of the way from i to
    j, displaced by a uniform offset in [-coord_bound/2, coord_bound/2]^3 and
    clamped to the cube.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    if waypoints_per_edge < 0:
        raise ValueError("waypoints_per_edge must be >= 0")
    _check_bounds(coord_bound, bound)
    rng = SplitMix64(seed)
    cb = coord_bound
    spread = max(1, cb // 2)
    w = waypoints_per_edge
    for _ in range(retry_budget):
        positions = tuple(_random_point(rng, -cb, cb) for _ in range(n))
        waypoints = {}
        if w:
            for i, j in combinations(range(1, n + 1), 2):
                a, b = positions[i - 1], positions[j - 1]
                pts = []
                for t in range(1, w + 1):
                    base = [a[k] + (b[k] - a[k]) * t // (w + 1) for k in range(3)]
                    off = _random_point(rng, -spread, spread)
                    pts.append(Point3(*(_clamp(base[k] + off[k], cb) for k in range(3))))
                waypoints[(i, j)] = tuple(pts)
        scene = SpatialScene(n, positions, waypoints, (), bound)
        try:
            validate(scene)
        except ValidityError:
            continue
        return scene
    raise GenerationError(f"no valid K_{n} scene for seed {seed} within {retry_budget} attempts")


def moment_curve_scene(n: int, spacing: int = 1, bound: int = DEFAULT_BOUND) -> SpatialScene:
    """Vertices (t, t^2, t^3) for t = spacing, 2*spacing, ..., n*spacing."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    if spacing < 1:
        raise ValueError(f"spacing must be >= 1, got {spacing}")
    if (spacing * n) ** 3 > bound:
        raise CoordinateOverflowError(f"t^3 = {(spacing * n) ** 3} exceeds bound {bound}", "positions")
    positions = tuple(Point3(t, t * t, t ** 3) for t in (spacing * k for k in range(1, n + 1)))
    return SpatialScene(n, positions, {}, (), bound)


def is_vacuous(table, loop_id: int = 0) -> bool:
    """True if the loop has zero linking number with every triangle of K_n."""
    w = table.loop_over[loop_id]
    return not any(cycle_lk_values(w, s).any() for s in combinations(range(1, table.n + 1), 3))


def threaded_loop_scene(
    n: int,
    seed: int,
    coord_bound: int = DEFAULT_COORD_BOUND,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
    bound: int = DEFAULT_BOUND,
) -> SpatialScene:
    """Random linear K_n plus one triangular loop threaded around a chord.

    Two loop corners straddle the midpoint M of a random edge (M + h +/- r)
    and the third sits at M - 8h, so the loop's triangle contains a segment
    through M. Attempts repeat until the scene is valid and the loop links
    some triangle; if only the second condition fails for the whole budget,
    the last valid scene is returned and a warning logged.
    """
    if n < 4:
        raise ValueError(f"n must be >= 4, got {n}")
    _check_bounds(coord_bound, bound, reach=10)
    rng = SplitMix64(seed)
    cb = coord_bound
    r_spread = max(1, cb // 2)
    h_spread = max(1, cb // 8)
    last_valid = None
    for _ in range(retry_budget):
        positions = tuple(_random_point(rng, -cb, cb) for _ in range(n))
        a = rng.randbelow(n)
        b = rng.randbelow(n - 1)
        if b >= a:
            b += 1
        pa, pb = positions[a], positions[b]
        mid = [(pa[k] + pb[k]) // 2 for k in range(3)]
        r = _random_point(rng, -r_spread, r_spread)
        h = _random_point(rng, -h_spread, h_spread)
        loop = (
            Point3(*(mid[k] + h[k] + r[k] for k in range(3))),
            Point3(*(mid[k] + h[k] - r[k] for k in range(3))),
            Point3(*(mid[k] - 8 * h[k] for k in range(3))),
        )
        scene = SpatialScene(n, positions, {}, (loop,), bound)
        try:
            validate(scene)
        except ValidityError:
            continue
        last_valid = scene
        if not is_vacuous(build_crossing_table(scene), 0):
            return scene
    if last_valid is None:
        raise GenerationError(f"no valid loop + K_{n} scene for seed {seed} within {retry_budget} attempts")
    log.warning("loop + K_%d scene for seed %d is vacuous (loop links no triangle)", n, seed)
    return last_valid


__all__ = [
    "GenerationError",
    "random_scene",
    "moment_curve_scene",
    "threaded_loop_scene",
    "is_vacuous",
    "DEFAULT_COORD_BOUND",
    "DEFAULT_RETRY_BUDGET",
]
