"""Exact integer predicates for 3D segments and their projections.

All arithmetic uses Python integers, so every determinant is evaluated
exactly regardless of coordinate magnitude.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

DEFAULT_BOUND = 2 ** 20


class Point3(NamedTuple):
    x: int
    y: int
    z: int

    def __sub__(self, other):  # type: ignore[override]
        return Point3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __add__(self, other):  # type: ignore[override]
        return Point3(self.x + other.x, self.y + other.y, self.z + other.z)


class Segment3(NamedTuple):
    a: Point3
    b: Point3

    def reversed(self) -> "Segment3":
        return Segment3(self.b, self.a)


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def cross(u, v) -> Point3:
    return Point3(
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u, v) -> int:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def det3(u, v, w) -> int:
    """Determinant of the 3x3 matrix with rows u, v, w."""
    return dot(u, cross(v, w))


def orientation3d(p, q, r, s) -> int:
    """Sign of det[q - p, r - p, s - p]."""
    qp = (q[0] - p[0], q[1] - p[1], q[2] - p[2])
    rp = (r[0] - p[0], r[1] - p[1], r[2] - p[2])
    sp = (s[0] - p[0], s[1] - p[1], s[2] - p[2])
    return _sign(det3(qp, rp, sp))


def orient2d(a, b, c) -> int:
    """Twice the signed area of triangle abc."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment_2d(a, b, c) -> bool:
    # c is known to be collinear with a, b
    return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])


def segments_intersect_2d(p1, p2, q1, q2) -> bool:
    """Closed-segment intersection test in the plane."""
    o1 = orient2d(p1, p2, q1)
    o2 = orient2d(p1, p2, q2)
    o3 = orient2d(q1, q2, p1)
    o4 = orient2d(q1, q2, p2)
    if ((o1 > 0 and o2 < 0) or (o1 < 0 and o2 > 0)) and ((o3 > 0 and o4 < 0) or (o3 < 0 and o4 > 0)):
        return True
    if o1 == 0 and _on_segment_2d(p1, p2, q1):
        return True
    if o2 == 0 and _on_segment_2d(p1, p2, q2):
        return True
    if o3 == 0 and _on_segment_2d(q1, q2, p1):
        return True
    if o4 == 0 and _on_segment_2d(q1, q2, p2):
        return True
    return False


def _bbox_disjoint(s1, s2) -> bool:
    for k in range(3):
        if max(s1[0][k], s1[1][k]) < min(s2[0][k], s2[1][k]):
            return True
        if max(s2[0][k], s2[1][k]) < min(s1[0][k], s1[1][k]):
            return True
    return False


def segments_intersect_3d(s1, s2) -> bool:
    """True iff the closed segments share at least one point."""
    if _bbox_disjoint(s1, s2):
        return False
    a, b = s1
    c, d = s2
    if orientation3d(a, b, c, d) != 0:
        return False
    # Coplanar: project onto a coordinate plane that is injective on the
    # common plane (or on the common line, when all four are collinear).
    normal = cross(_vsub(b, a), _vsub(c, a))
    if normal == (0, 0, 0):
        normal = cross(_vsub(b, a), _vsub(d, a))
    if normal == (0, 0, 0):
        normal = cross(_vsub(d, c), _vsub(a, c))
    if normal == (0, 0, 0):
        normal = cross(_vsub(d, c), _vsub(b, c))
    if normal == (0, 0, 0):
        return _collinear_overlap(s1, s2)
    drop = max(range(3), key=lambda k: abs(normal[k]))
    keep = [k for k in range(3) if k != drop]

    def pr(p):
        return (p[keep[0]], p[keep[1]])

    return segments_intersect_2d(pr(a), pr(b), pr(c), pr(d))


def _vsub(u, v):
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def _collinear_overlap(s1, s2) -> bool:
    # All four endpoints lie on one line; compare along a varying axis.
    pts = [s1[0], s1[1], s2[0], s2[1]]
    axis = next((k for k in range(3) if len({p[k] for p in pts}) > 1), None)
    if axis is None:
        return True
    lo1, hi1 = sorted((s1[0][axis], s1[1][axis]))
    lo2, hi2 = sorted((s2[0][axis], s2[1][axis]))
    return lo1 <= hi2 and lo2 <= hi1


def meet_only_at_shared(p, a, b) -> bool:
    """For segments p->a and p->b sharing endpoint p, True iff they meet only at p."""
    pa = _vsub(a, p)
    pb = _vsub(b, p)
    if cross(pa, pb) != (0, 0, 0):
        return True
    return dot(pa, pb) < 0


@dataclass(frozen=True)
class ProjectionFrame:
    """Projection along ``d`` onto the plane spanned by ``u`` and ``v``.

    The basis is always stored right-handed, i.e. ``det(u, v, d) > 0``, so the
    viewer sits at ``+infinity * d`` and sees ``(u, v)`` counter-clockwise.
    """

    d: tuple
    u: tuple
    v: tuple

    def __post_init__(self):
        if det3(self.u, self.v, self.d) == 0:
            raise ValueError("degenerate projection frame: det(u, v, d) == 0")

    @classmethod
    def from_direction(cls, d) -> "ProjectionFrame":
        """Complete ``d`` with the pair of standard basis vectors maximising |det|."""
        d = tuple(int(c) for c in d)
        if d == (0, 0, 0):
            raise ValueError("zero projection direction")
        basis = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        best = None
        for i in range(3):
            for j in range(i + 1, 3):
                det = det3(basis[i], basis[j], d)
                if det != 0 and (best is None or abs(det) > abs(best[0])):
                    best = (det, basis[i], basis[j])
        det, u, v = best
        if det < 0:
            u, v = v, u
        return cls(d, u, v)

    def project(self, p) -> tuple[int, int, int]:
        """Integer plane coordinates and depth of ``p``, all scaled by det(u, v, d)."""
        return (det3(p, self.v, self.d), det3(self.u, p, self.d), det3(self.u, self.v, p))


def frame_candidates():
    """Deterministic frame sequence: d=(0,0,1), then d=(1,k,k^2) for k=1,2,..."""
    yield ProjectionFrame((0, 0, 1), (1, 0, 0), (0, 1, 0))
    k = 1
    while True:
        yield ProjectionFrame.from_direction((1, k, k * k))
        k += 1


class Crossing(NamedTuple):
    over: int  # 0 if the first segment is over, 1 if the second
    sign: int


class DegenerateProjection(Exception):
    """The projection of a segment pair is not in general position."""


def crossing_from_projected(pa, pb, qa, qb) -> Optional[Crossing]:
    """Crossing of two segments given their projected (x, y, depth) endpoints.

    Raises DegenerateProjection when the projected pair is not generic.
    """
    if pa[0] == pb[0] and pa[1] == pb[1]:
        raise DegenerateProjection("first segment is parallel to the projection direction")
    if qa[0] == qb[0] and qa[1] == qb[1]:
        raise DegenerateProjection("second segment is parallel to the projection direction")
    if max(pa[0], pb[0]) < min(qa[0], qb[0]) or max(qa[0], qb[0]) < min(pa[0], pb[0]):
        return None
    if max(pa[1], pb[1]) < min(qa[1], qb[1]) or max(qa[1], qb[1]) < min(pa[1], pb[1]):
        return None
    o1 = orient2d(pa, pb, qa)
    o2 = orient2d(pa, pb, qb)
    o3 = orient2d(qa, qb, pa)
    o4 = orient2d(qa, qb, pb)
    if o1 == 0 or o2 == 0 or o3 == 0 or o4 == 0:
        if segments_intersect_2d(pa, pb, qa, qb):
            raise DegenerateProjection("projected segments touch or overlap")
        return None
    if (o1 > 0) == (o2 > 0) or (o3 > 0) == (o4 > 0):
        return None
    # Crossing parameters: s = o3/(o3-o4) on the first, t = o1/(o1-o2) on the second.
    den_s = o3 - o4
    den_t = o1 - o2
    depth_p_num = pa[2] * den_s + o3 * (pb[2] - pa[2])
    depth_q_num = qa[2] * den_t + o1 * (qb[2] - qa[2])
    # compare depth_p_num/den_s with depth_q_num/den_t without dividing
    lhs = depth_p_num * den_t
    rhs = depth_q_num * den_s
    if den_s * den_t < 0:
        lhs, rhs = -lhs, -rhs
    if lhs == rhs:
        raise ValueError("segments intersect in space")
    dp = (pb[0] - pa[0], pb[1] - pa[1])
    dq = (qb[0] - qa[0], qb[1] - qa[1])
    if lhs > rhs:
        return Crossing(0, _sign(dp[0] * dq[1] - dp[1] * dq[0]))
    return Crossing(1, _sign(dq[0] * dp[1] - dq[1] * dp[0]))


def projected_crossing(s1, s2, frame: ProjectionFrame) -> Optional[Crossing]:
    """Signed crossing of directed segments ``s1``, ``s2`` seen along ``frame.d``.

    Returns None when the projections are disjoint. The sign is the 2D cross
    product (over direction) x (under direction). Raises DegenerateProjection
    if either segment projects to a point, the projections overlap, or an
    endpoint of one projects onto the other.
    """
    return crossing_from_projected(
        frame.project(s1[0]), frame.project(s1[1]), frame.project(s2[0]), frame.project(s2[1])
    )
