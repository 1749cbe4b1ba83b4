"""Points, planes, polygons and the orientation predicate."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .scalar import ZERO, Scalar, fmt, scalar, sign


class GeometryError(ValueError):
    pass


class NotCoplanar(GeometryError):
    pass


class Degenerate(GeometryError):
    pass


class SelfIntersecting(GeometryError):
    pass


class Point3(NamedTuple):
    x: Scalar
    y: Scalar
    z: Scalar

    @classmethod
    def of(cls, x, y, z) -> "Point3":
        return cls(scalar(x), scalar(y), scalar(z))

    def __repr__(self) -> str:
        return f"({fmt(self.x)}, {fmt(self.y)}, {fmt(self.z)})"


def pt(x, y, z) -> Point3:
    return Point3(scalar(x), scalar(y), scalar(z))


def sub(a, b) -> Point3:
    return Point3(a[0] - b[0], a[1] - b[1], a[2] - b[2])


def add(a, b) -> Point3:
    return Point3(a[0] + b[0], a[1] + b[1], a[2] + b[2])


def scale(a, k) -> Point3:
    return Point3(a[0] * k, a[1] * k, a[2] * k)


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a, b) -> Point3:
    return Point3(
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def lerp(a, b, t) -> Point3:
    return Point3(a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t, a[2] + (b[2] - a[2]) * t)


def midpoint(a, b) -> Point3:
    return lerp(a, b, scalar("1/2"))


def norm_inf(v):
    return max(abs(v[0]), abs(v[1]), abs(v[2]))


def dist2(a, b):
    d = sub(a, b)
    return dot(d, d)


def is_zero(v) -> bool:
    return v[0] == 0 and v[1] == 0 and v[2] == 0


def orient3d(p, q, r, s) -> int:
    """Sign of det[q-p, r-p, s-p]; +1 for a right-handed tetrahedron."""
    return sign(dot(cross(sub(q, p), sub(r, p)), sub(s, p)))


def collinear(a, b, c) -> bool:
    return is_zero(cross(sub(b, a), sub(c, a)))


@dataclass(frozen=True)
class Plane:
    """The plane a*x + b*y + c*z + d = 0 with canonical integer coefficients.

    Canonical means coprime integers whose first nonzero entry is positive,
    so equal planes compare equal.
    """

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def from_coefficients(cls, a, b, c, d) -> "Plane":
        coeffs = [scalar(v) for v in (a, b, c, d)]
        if coeffs[0] == 0 and coeffs[1] == 0 and coeffs[2] == 0:
            raise Degenerate("plane normal is zero")
        den = 1
        for v in coeffs:
            den = den * int(v.denominator) // gcd(den, int(v.denominator))
        ints = [int(v * den) for v in coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints]
        lead = next(v for v in ints if v != 0)
        if lead < 0:
            ints = [-v for v in ints]
        return cls(*ints)

    @classmethod
    def through(cls, point, normal) -> "Plane":
        return cls.from_coefficients(normal[0], normal[1], normal[2], -dot(normal, point))

    @property
    def normal(self) -> Point3:
        return Point3(scalar(self.a), scalar(self.b), scalar(self.c))

    def value(self, p):
        return self.a * p[0] + self.b * p[1] + self.c * p[2] + self.d

    def side(self, p) -> int:
        return sign(self.value(p))

    def flipped_normal(self) -> Point3:
        return Point3(scalar(-self.a), scalar(-self.b), scalar(-self.c))

    def __repr__(self) -> str:
        return f"Plane({self.a}x + {self.b}y + {self.c}z + {self.d} = 0)"


def newell_normal(corners: Sequence[Point3]) -> Point3:
    """Area-weighted normal of a closed polygon (twice the vector area)."""
    nx = ny = nz = ZERO
    k = len(corners)
    for i in range(k):
        a = corners[i]
        b = corners[(i + 1) % k]
        nx += (a[1] - b[1]) * (a[2] + b[2])
        ny += (a[2] - b[2]) * (a[0] + b[0])
        nz += (a[0] - b[0]) * (a[1] + b[1])
    return Point3(nx, ny, nz)


def plane_of_points(corners: Sequence[Point3]) -> tuple[Plane, Point3]:
    """Canonical plane through a coplanar cycle, plus its oriented Newell normal."""
    if len(corners) < 3:
        raise Degenerate("need at least three corners")
    base = corners[0]
    normal = None
    for i in range(1, len(corners) - 1):
        n = cross(sub(corners[i], base), sub(corners[i + 1], base))
        if not is_zero(n):
            normal = n
            break
    if normal is None:
        # maybe a non-consecutive triple is independent
        for i in range(1, len(corners)):
            for j in range(i + 1, len(corners)):
                n = cross(sub(corners[i], base), sub(corners[j], base))
                if not is_zero(n):
                    normal = n
                    break
            if normal is not None:
                break
    if normal is None:
        raise Degenerate("all corners are collinear")
    for c in corners:
        if dot(normal, sub(c, base)) != 0:
            raise NotCoplanar(f"corner {c!r} is off the plane of the others")
    newell = newell_normal(corners)
    if is_zero(newell):
        raise SelfIntersecting("polygon has zero vector area")
    return Plane.through(base, newell), newell


def supporting_plane(poly) -> Plane:
    if isinstance(poly, Polygon):
        return poly.plane
    return plane_of_points([Point3(*map(scalar, c)) for c in poly])[0]


# --- 2D helpers (points are (u, v) tuples of mpq) -------------------------


def drop_axis(normal) -> int:
    ax = [abs(normal[0]), abs(normal[1]), abs(normal[2])]
    return ax.index(max(ax))


def project(p, axis: int) -> tuple:
    if axis == 0:
        return (p[1], p[2])
    if axis == 1:
        return (p[2], p[0])
    return (p[0], p[1])


def orient2d(a, b, c) -> int:
    return sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def signed_area2(pts) -> Scalar:
    s = ZERO
    k = len(pts)
    for i in range(k):
        a, b = pts[i], pts[(i + 1) % k]
        s += a[0] * b[1] - a[1] * b[0]
    return s


def on_segment2(p, a, b) -> bool:
    """p on the closed segment ab (2D)."""
    if orient2d(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_intersect2(a, b, c, d):
    """Intersection of closed segments ab and cd.

    Returns None, a point, or a pair of points (a collinear overlap).
    """
    o1, o2 = orient2d(a, b, c), orient2d(a, b, d)
    o3, o4 = orient2d(c, d, a), orient2d(c, d, b)
    if o1 == 0 and o2 == 0:
        # collinear: overlap along the dominant coordinate
        k = 0 if a[0] != b[0] else 1
        lo1, hi1 = sorted((a, b), key=lambda p: p[k])
        lo2, hi2 = sorted((c, d), key=lambda p: p[k])
        lo = lo1 if lo1[k] >= lo2[k] else lo2
        hi = hi1 if hi1[k] <= hi2[k] else hi2
        if lo[k] > hi[k]:
            return None
        if lo[k] == hi[k]:
            return lo
        return (lo, hi)
    if o1 * o2 > 0 or o3 * o4 > 0:
        return None
    if o1 == 0:
        return c
    if o2 == 0:
        return d
    if o3 == 0:
        return a
    if o4 == 0:
        return b
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    t = cross2((c[0] - a[0], c[1] - a[1]), s) / cross2(r, s)
    return (a[0] + r[0] * t, a[1] + r[1] * t)


def point_in_polygon2(p, pts) -> int:
    """+1 strictly inside, 0 on the boundary, -1 outside (any simple polygon)."""
    k = len(pts)
    inside = False
    for i in range(k):
        a, b = pts[i], pts[(i + 1) % k]
        if on_segment2(p, a, b):
            return 0
        if (a[1] > p[1]) != (b[1] > p[1]):
            # x coordinate of the crossing compared exactly
            lhs = (p[0] - a[0]) * (b[1] - a[1])
            rhs = (b[0] - a[0]) * (p[1] - a[1])
            if (b[1] - a[1]) > 0:
                crosses = lhs < rhs
            else:
                crosses = lhs > rhs
            if crosses:
                inside = not inside
    return 1 if inside else -1


def _is_simple2(pts) -> bool:
    k = len(pts)
    for i in range(k):
        a, b = pts[i], pts[(i + 1) % k]
        for j in range(i + 1, k):
            c, d = pts[j], pts[(j + 1) % k]
            hit = segments_intersect2(a, b, c, d)
            if hit is None:
                continue
            if j == i + 1:
                # consecutive sides meet only at b
                if isinstance(hit[0], tuple) or hit != b:
                    return False
            elif i == 0 and j == k - 1:
                if isinstance(hit[0], tuple) or hit != a:
                    return False
            else:
                return False
    return True


class Polygon:
    """A simple closed polygon in 3-space with exact corners.

    Construction rejects repeated consecutive corners, collinear corner sets,
    non-coplanar corners and self-intersecting cycles.
    """

    __slots__ = ("corners", "id", "plane", "normal", "axis", "_cache")

    def __init__(self, corners: Iterable, id=None):
        cs = tuple(c if isinstance(c, Point3) else Point3(*map(scalar, c)) for c in corners)
        if len(cs) < 3:
            raise Degenerate("a polygon needs at least three corners")
        for i in range(len(cs)):
            if cs[i] == cs[(i + 1) % len(cs)]:
                raise Degenerate(f"repeated consecutive corner {cs[i]!r}")
        plane, normal = plane_of_points(cs)
        self.corners = cs
        self.id = id
        self.plane = plane
        self.normal = normal
        self.axis = drop_axis(normal)
        self._cache = {}
        if not _is_simple2(self.uv()):
            raise SelfIntersecting("corner cycle is not simple")

    def __len__(self) -> int:
        return len(self.corners)

    def __iter__(self):
        return iter(self.corners)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polygon) and self.corners == other.corners and self.id == other.id

    def __hash__(self) -> int:
        return hash((self.corners, self.id))

    def __repr__(self) -> str:
        return f"Polygon(id={self.id!r}, corners={list(self.corners)!r})"

    def with_corners(self, corners) -> "Polygon":
        return Polygon(corners, self.id)

    def with_id(self, id) -> "Polygon":
        p = Polygon.__new__(Polygon)
        p.corners, p.id, p.plane, p.normal, p.axis = self.corners, id, self.plane, self.normal, self.axis
        p._cache = self._cache
        return p

    def sides(self):
        k = len(self.corners)
        return [(self.corners[i], self.corners[(i + 1) % k]) for i in range(k)]

    def uv(self) -> list:
        """Corners projected to 2D, oriented counter-clockwise."""
        got = self._cache.get("uv")
        if got is None:
            got = [project(c, self.axis) for c in self.corners]
            if self.normal[self.axis] < 0:
                # projection along a negative normal flips orientation
                got = [(v, u) for (u, v) in got]
            self._cache["uv"] = got
        return got

    @property
    def corner_set(self) -> frozenset:
        got = self._cache.get("corner_set")
        if got is None:
            got = self._cache["corner_set"] = frozenset(self.corners)
        return got

    @property
    def side_set(self) -> frozenset:
        got = self._cache.get("side_set")
        if got is None:
            got = self._cache["side_set"] = frozenset(frozenset(s) for s in self.sides())
        return got

    def has_corner(self, p) -> bool:
        return p in self.corner_set

    def has_side(self, a, b) -> bool:
        return frozenset((a, b)) in self.side_set

    @property
    def bbox(self):
        got = self._cache.get("bbox")
        if got is None:
            xs = [c[0] for c in self.corners]
            ys = [c[1] for c in self.corners]
            zs = [c[2] for c in self.corners]
            got = self._cache["bbox"] = ((min(xs), min(ys), min(zs)), (max(xs), max(ys), max(zs)))
        return got

    @property
    def convex(self) -> bool:
        got = self._cache.get("convex")
        if got is None:
            got = self._cache["convex"] = is_strictly_convex(self)
        return got


def is_strictly_convex(poly: Polygon) -> bool:
    """Every corner is a strict extreme point."""
    pts = poly.uv()
    k = len(pts)
    for i in range(k):
        if orient2d(pts[i - 1], pts[i], pts[(i + 1) % k]) <= 0:
            return False
    return True


def bboxes_overlap(p: Polygon, q: Polygon) -> bool:
    (a0, a1), (b0, b1) = p.bbox, q.bbox
    return all(a0[i] <= b1[i] and b0[i] <= a1[i] for i in range(3))


def polygon_area2_vec(poly: Polygon) -> Point3:
    return newell_normal(poly.corners)
