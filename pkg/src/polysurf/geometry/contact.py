"""Exact classification of how two polygons meet.

Non-coplanar pairs can only meet on the line common to both supporting
planes, so each polygon is cut by that line into parameter intervals and the
intervals are intersected.  Coplanar pairs go through a small segment
arrangement in the shared plane.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

from .primitives import (
    Point3,
    Polygon,
    add,
    bboxes_overlap,
    cross,
    cross2,
    dot,
    is_zero,
    on_segment2,
    point_in_polygon2,
    project,
    scale,
    segments_intersect2,
    signed_area2,
    sub,
)
from .scalar import HALF


class Contact(str, enum.Enum):
    DISJOINT = "Disjoint"
    SINGLE_CORNER = "SingleCorner"
    SHARED_SIDE = "SharedSide"
    VIOLATION = "Violation"


@dataclass(frozen=True)
class ContactClass:
    tag: Contact
    witness: Any = None
    detail: str = field(default="", compare=False)

    @property
    def is_side(self) -> bool:
        return self.tag is Contact.SHARED_SIDE


DISJOINT = ContactClass(Contact.DISJOINT)


def _seg_key(a, b):
    return (a, b) if a <= b else (b, a)


def plane_line(p: Polygon, q: Polygon):
    """Origin and direction of the line where the supporting planes meet.

    Returns None for parallel (or equal) planes.
    """
    n1, n2 = p.plane.normal, q.plane.normal
    direction = cross(n1, n2)
    if is_zero(direction):
        return None
    d1, d2 = -p.plane.d, -q.plane.d
    # point x with n1.x = d1, n2.x = d2, direction.x = 0
    # x = (d1 (n2 x dir) + d2 (dir x n1)) / |dir|^2
    denom = dot(direction, direction)
    origin = add(scale(cross(n2, direction), d1), scale(cross(direction, n1), d2))
    origin = scale(origin, 1 / denom)
    return origin, direction


def line_intervals(poly: Polygon, origin, direction) -> list:
    """Closed parameter intervals of poly ∩ {origin + t*direction}.

    The line must lie in the polygon's supporting plane.  Intervals are
    (t0, t1) with t0 <= t1, sorted and pairwise disjoint.
    """
    axis = poly.axis
    o = project(origin, axis)
    v = project(direction, axis)
    pts = [project(c, axis) for c in poly.corners]
    vv = v[0] * v[0] + v[1] * v[1]
    crit = set()
    k = len(pts)
    for i in range(k):
        a, b = pts[i], pts[(i + 1) % k]
        e = (b[0] - a[0], b[1] - a[1])
        ao = (a[0] - o[0], a[1] - o[1])
        den = cross2(v, e)
        if den == 0:
            if cross2(ao, v) == 0:
                crit.add((ao[0] * v[0] + ao[1] * v[1]) / vv)
                bo = (b[0] - o[0], b[1] - o[1])
                crit.add((bo[0] * v[0] + bo[1] * v[1]) / vv)
            continue
        # o + t v = a + u e
        t = cross2(ao, e) / den
        u = cross2(ao, v) / den
        if 0 <= u <= 1:
            crit.add(t)
    if not crit:
        return []
    ts = sorted(crit)
    if poly.convex:
        return [(ts[0], ts[-1])]

    def inside(t):
        return point_in_polygon2((o[0] + v[0] * t, o[1] + v[1] * t), pts) >= 0

    out = []
    cur = None
    for i, t in enumerate(ts):
        if inside(t):
            if cur is None:
                cur = [t, t]
            else:
                cur[1] = t
        else:
            if cur is not None:
                out.append(tuple(cur))
                cur = None
        if i + 1 < len(ts):
            mid = (t + ts[i + 1]) * HALF
            if inside(mid):
                if cur is None:
                    cur = [t, t]
                cur[1] = ts[i + 1]
            elif cur is not None:
                out.append(tuple(cur))
                cur = None
    if cur is not None:
        out.append(tuple(cur))
    return out


def intersect_intervals(xs: list, ys: list) -> list:
    out = []
    i = j = 0
    while i < len(xs) and j < len(ys):
        lo = max(xs[i][0], ys[j][0])
        hi = min(xs[i][1], ys[j][1])
        if lo <= hi:
            out.append((lo, hi))
        if xs[i][1] < ys[j][1]:
            i += 1
        else:
            j += 1
    return out


def _plane_values_separate(p: Polygon, q: Polygon) -> bool:
    """True when all corners of p are strictly on one side of q's plane."""
    s = None
    for c in p.corners:
        v = q.plane.side(c)
        if v == 0:
            return False
        if s is None:
            s = v
        elif v != s:
            return False
    return True


def _classify_piece(p: Polygon, q: Polygon, a: Point3, b: Point3 | None) -> ContactClass:
    if b is None or a == b:
        if p.has_corner(a) and q.has_corner(a):
            return ContactClass(Contact.SINGLE_CORNER, a)
        return ContactClass(Contact.VIOLATION, a, "single contact point is not a corner of both")
    if p.has_side(a, b) and q.has_side(a, b):
        return ContactClass(Contact.SHARED_SIDE, _seg_key(a, b))
    if p.has_side(a, b) or q.has_side(a, b):
        return ContactClass(Contact.VIOLATION, _seg_key(a, b), "contact segment is a side of only one polygon")
    return ContactClass(Contact.VIOLATION, _seg_key(a, b), "contact segment is not a side")


def classify_contact(p: Polygon, q: Polygon) -> ContactClass:
    """Disjoint, SingleCorner, SharedSide or Violation (with a witness)."""
    if not bboxes_overlap(p, q):
        return DISJOINT
    if p.plane == q.plane:
        return _classify_coplanar(p, q)
    if _plane_values_separate(p, q) or _plane_values_separate(q, p):
        return DISJOINT
    line = plane_line(p, q)
    if line is None:
        # parallel distinct planes
        return DISJOINT
    origin, direction = line
    common = intersect_intervals(line_intervals(p, origin, direction), line_intervals(q, origin, direction))
    if not common:
        return DISJOINT

    def at(t):
        return add(origin, scale(direction, t))

    if len(common) > 1:
        return ContactClass(
            Contact.VIOLATION,
            tuple(at(t0) for t0, _ in common),
            f"intersection has {len(common)} components",
        )
    t0, t1 = common[0]
    if t0 == t1:
        return _classify_piece(p, q, at(t0), None)
    return _classify_piece(p, q, at(t0), at(t1))


def plane_line_segments(p: Polygon, q: Polygon):
    """The pieces of p and of q on their common plane line.

    Returns (origin, direction, intervals_of_p, intervals_of_q); used as a
    disjointness certificate for non-coplanar pairs.
    """
    line = plane_line(p, q)
    if line is None:
        raise ValueError("supporting planes are parallel")
    origin, direction = line
    return origin, direction, line_intervals(p, origin, direction), line_intervals(q, origin, direction)


# --- coplanar pairs ---------------------------------------------------------


def _ccw(pts):
    return pts if signed_area2(pts) > 0 else pts[::-1]


def _split_sides(pts, others):
    """Sides of pts split at every point where the other boundary meets them."""
    k = len(pts)
    ko = len(others)
    out = []
    for i in range(k):
        a, b = pts[i], pts[(i + 1) % k]
        cuts = {a, b}
        for j in range(ko):
            c, d = others[j], others[(j + 1) % ko]
            hit = segments_intersect2(a, b, c, d)
            if hit is None:
                continue
            if isinstance(hit[0], tuple):
                cuts.update(hit)
            else:
                cuts.add(hit)
        kx = 0 if a[0] != b[0] else 1
        rev = a[kx] > b[kx]
        order = sorted(cuts, key=lambda p: p[kx], reverse=rev)
        for s, t in zip(order, order[1:]):
            out.append((s, t))
    return out


def _interiors_overlap(P, Q):
    """A point where the interiors overlap (or a side midpoint next to it), else None."""
    for mine, other in ((P, Q), (Q, P)):
        for a, b in _split_sides(mine, other):
            m = ((a[0] + b[0]) * HALF, (a[1] + b[1]) * HALF)
            where = point_in_polygon2(m, other)
            if where > 0:
                return m
            if where == 0:
                # sub-edge runs along the other's boundary; same direction means
                # both interiors lie on the same (left) side
                ko = len(other)
                for j in range(ko):
                    c, d = other[j], other[(j + 1) % ko]
                    if on_segment2(m, c, d):
                        if (b[0] - a[0]) * (d[0] - c[0]) + (b[1] - a[1]) * (d[1] - c[1]) > 0:
                            return m
                        break
    return None


def _touch_pieces(P, Q) -> list:
    pieces = []
    kp, kq = len(P), len(Q)
    for i in range(kp):
        a, b = P[i], P[(i + 1) % kp]
        for j in range(kq):
            hit = segments_intersect2(a, b, Q[j], Q[(j + 1) % kq])
            if hit is not None:
                pieces.append(hit if isinstance(hit[0], tuple) else (hit, hit))
    return pieces


def _pieces_touch(s, t) -> bool:
    a, b = s
    c, d = t
    if a == b and c == d:
        return a == c
    if a == b:
        return on_segment2(a, c, d)
    if c == d:
        return on_segment2(c, a, b)
    return segments_intersect2(a, b, c, d) is not None


def _components(pieces):
    parent = list(range(len(pieces)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            if find(i) != find(j) and _pieces_touch(pieces[i], pieces[j]):
                parent[find(i)] = find(j)
    groups = {}
    for i, s in enumerate(pieces):
        groups.setdefault(find(i), []).append(s)
    return list(groups.values())


def _component_shape(group):
    """(a, None) for a point, (a, b) for a single straight segment, else None."""
    pts = {p for s in group for p in s}
    if len(pts) == 1:
        return next(iter(pts)), None
    pts = sorted(pts)
    a, b = pts[0], pts[-1]
    for p in pts:
        if (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) != 0:
            return None
    # every point of [a, b] must be covered by a segment piece
    segs = sorted((tuple(sorted(s)) for s in group if s[0] != s[1]))
    if not segs:
        return None
    reach = segs[0][0]
    if reach != a:
        return None
    for s0, s1 in segs:
        if s0 > reach:
            return None
        reach = max(reach, s1)
    if reach != b:
        return None
    return a, b


def _classify_coplanar(p: Polygon, q: Polygon) -> ContactClass:
    axis = p.axis
    P = _ccw([project(c, axis) for c in p.corners])
    Q = _ccw([project(c, axis) for c in q.corners])
    lift = {}
    for c in p.corners + q.corners:
        lift[project(c, axis)] = c

    def up(uv):
        got = lift.get(uv)
        if got is not None:
            return got
        return _unproject(uv, axis, p.plane)

    inside = _interiors_overlap(P, Q)
    if inside is not None:
        return ContactClass(Contact.VIOLATION, up(inside), "relative interiors overlap")
    pieces = _touch_pieces(P, Q)
    if not pieces:
        return DISJOINT
    groups = _components(pieces)
    if len(groups) > 1:
        return ContactClass(
            Contact.VIOLATION,
            tuple(up(g[0][0]) for g in groups),
            f"intersection has {len(groups)} components",
        )
    shape = _component_shape(groups[0])
    if shape is None:
        return ContactClass(Contact.VIOLATION, tuple(up(s[0]) for s in groups[0]), "contact is not a point or a straight segment")
    a, b = shape
    return _classify_piece(p, q, up(a), None if b is None else up(b))


def _unproject(uv, axis, plane):
    u, v = uv
    if axis == 2:
        x, y = u, v
        z = -(plane.a * x + plane.b * y + plane.d) / plane.c
        return Point3(x, y, z)
    if axis == 0:
        y, z = u, v
        x = -(plane.b * y + plane.c * z + plane.d) / plane.a
        return Point3(x, y, z)
    z, x = u, v
    y = -(plane.a * x + plane.c * z + plane.d) / plane.b
    return Point3(x, y, z)
