"""Slow, independent reference computations used to derive expected values.

Nothing here imports the enumeration, crossing or solid-angle code under
test; each function takes a different route to the same quantity.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np


def brute_cycles(n, p, vertices=None):
    """p-cycles of the complete graph as frozensets of undirected edges, deduplicated."""
    vertices = list(vertices) if vertices is not None else list(range(1, n + 1))
    seen = set()
    for vs in combinations(vertices, p):
        for perm in permutations(vs):
            edges = frozenset(frozenset((perm[t], perm[(t + 1) % p])) for t in range(p))
            seen.add(edges)
    return seen


def edge_vertices(cycle_edges):
    return frozenset(v for e in cycle_edges for v in e)


def brute_pairs(n, p, q):
    """Unordered disjoint (p,q) pairs as frozensets of two edge-sets."""
    ps = brute_cycles(n, p)
    qs = ps if p == q else brute_cycles(n, q)
    pairs = set()
    for a in ps:
        va = edge_vertices(a)
        for b in qs:
            if a != b and not (va & edge_vertices(b)):
                pairs.add(frozenset((a, b)))
    return pairs


def gauss_midpoint(poly_a, poly_b, steps=60):
    """Gauss double integral by the midpoint rule on each segment pair."""
    a = np.asarray(poly_a, dtype=float)
    b = np.asarray(poly_b, dtype=float)
    u = (np.arange(steps) + 0.5) / steps
    xa, da = [], []
    for s in range(len(a) - 1):
        d = a[s + 1] - a[s]
        xa.append(a[s] + u[:, None] * d)
        da.append(np.repeat(d[None, :] / steps, steps, axis=0))
    xb, db = [], []
    for s in range(len(b) - 1):
        d = b[s + 1] - b[s]
        xb.append(b[s] + u[:, None] * d)
        db.append(np.repeat(d[None, :] / steps, steps, axis=0))
    xa, da, xb, db = map(np.concatenate, (xa, da, xb, db))
    r = xa[:, None, :] - xb[None, :, :]
    num = np.einsum("ijk,ijk->ij", r, np.cross(da[:, None, :], db[None, :, :]))
    den = np.linalg.norm(r, axis=-1) ** 3
    return float(np.sum(num / den) / (4 * math.pi))


def closed_polyline(scene, cycle_vertices):
    pts = []
    for t in range(len(cycle_vertices)):
        i, j = cycle_vertices[t], cycle_vertices[(t + 1) % len(cycle_vertices)]
        lo, hi = min(i, j), max(i, j)
        arc = [scene.positions[lo - 1], *scene.waypoints.get((lo, hi), ()), scene.positions[hi - 1]]
        if i > j:
            arc = arc[::-1]
        pts.extend(arc[:-1])
    pts.append(pts[0])
    return pts


def _solve_fraction(rows, rhs):
    """Gaussian elimination over Fractions; returns one solution or None."""
    m = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    piv_cols = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c] / m[r][c]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        piv_cols.append(c)
        r += 1
    for k in range(r, len(m)):
        if m[k][-1] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for k, c in enumerate(piv_cols):
        sol[c] = m[k][-1] / m[k][c]
    return sol


def fraction_segments_intersect(s1, s2):
    """Exact closed-segment intersection by solving a + s(b-a) = c + t(d-c).

    Degenerate (parallel) systems fall back to endpoint containment checks.
    """
    a, b = s1
    c, d = s2

    def point_on(p, e0, e1):
        dirv = [e1[k] - e0[k] for k in range(3)]
        sol = _solve_fraction([[dirv[k]] for k in range(3)], [p[k] - e0[k] for k in range(3)])
        return sol is not None and 0 <= sol[0] <= 1

    if any(point_on(p, c, d) for p in (a, b)) or any(point_on(p, a, b) for p in (c, d)):
        return True
    rows = [[b[k] - a[k], -(d[k] - c[k])] for k in range(3)]
    rhs = [c[k] - a[k] for k in range(3)]
    det_rank = _solve_fraction(rows, rhs)
    if det_rank is None:
        return False
    u = [b[k] - a[k] for k in range(3)]
    v = [d[k] - c[k] for k in range(3)]
    cr = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
    if cr == (0, 0, 0):
        # parallel: only endpoint containment can produce contact, handled above
        return False
    s, t = det_rank
    return 0 <= s <= 1 and 0 <= t <= 1
