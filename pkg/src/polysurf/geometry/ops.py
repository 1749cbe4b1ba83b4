"""Half-space cuts, projective maps and rational circle points."""
from __future__ import annotations

from typing import Sequence

from .primitives import Degenerate, GeometryError, Plane, Point3, Polygon, lerp
from .scalar import ONE, Scalar, scalar


class MapsToInfinity(GeometryError):
    def __init__(self, corner):
        super().__init__(f"corner {corner!r} maps to the plane at infinity")
        self.corner = corner


def cut_polygon_by_halfspace(poly: Polygon, h: Plane, keep: int = -1) -> Polygon | None:
    """poly ∩ {x : sign(h(x)) in (0, keep)}; None when nothing 2D survives.

    ``keep=-1`` keeps the closed side where the plane value is <= 0, ``+1``
    the side where it is >= 0.  Meant for convex input; a nonconvex polygon
    cut into several pieces raises from the Polygon constructor.
    """
    if keep not in (-1, 1):
        raise ValueError("keep must be -1 or +1")
    vals = [h.value(c) * keep for c in poly.corners]
    if all(v >= 0 for v in vals):
        return poly
    if all(v <= 0 for v in vals):
        return None
    out = []
    k = len(poly.corners)
    for i in range(k):
        a, va = poly.corners[i], vals[i]
        b, vb = poly.corners[(i + 1) % k], vals[(i + 1) % k]
        if va >= 0:
            out.append(a)
        if (va > 0 and vb < 0) or (va < 0 and vb > 0):
            out.append(lerp(a, b, va / (va - vb)))
    dedup = []
    for c in out:
        if not dedup or dedup[-1] != c:
            dedup.append(c)
    while len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    if len(dedup) < 3:
        return None
    try:
        return Polygon(dedup, poly.id)
    except Degenerate:
        # survivors all collinear: only a segment is left
        return None


def transform_point(T: Sequence[Sequence], p) -> Point3:
    hx = T[0][0] * p[0] + T[0][1] * p[1] + T[0][2] * p[2] + T[0][3]
    hy = T[1][0] * p[0] + T[1][1] * p[1] + T[1][2] * p[2] + T[1][3]
    hz = T[2][0] * p[0] + T[2][1] * p[1] + T[2][2] * p[2] + T[2][3]
    w = T[3][0] * p[0] + T[3][1] * p[1] + T[3][2] * p[2] + T[3][3]
    if w == 0:
        raise MapsToInfinity(p)
    return Point3(scalar(hx / w), scalar(hy / w), scalar(hz / w))


def as_matrix(T) -> list:
    rows = [[scalar(v) for v in row] for row in T]
    if len(rows) != 4 or any(len(r) != 4 for r in rows):
        raise ValueError("projective map must be 4x4")
    return rows


def apply_projective(T, poly: Polygon) -> Polygon:
    """Image of poly under the homogeneous 4x4 map T (column-vector convention)."""
    M = as_matrix(T)
    return Polygon([transform_point(M, c) for c in poly.corners], poly.id)


def circle_direction(t) -> tuple[Scalar, Scalar]:
    """Rational point on the unit circle: ((1-t²)/(1+t²), 2t/(1+t²))."""
    t = scalar(t)
    den = ONE + t * t
    return (ONE - t * t) / den, 2 * t / den


def homography_2d(src, dst) -> list:
    """3x3 projective map of the plane sending four points to four points."""
    # unknowns h00..h21 with h22 = 1
    rows, rhs = [], []
    for (x, y), (u, v) in zip(src, dst):
        x, y, u, v = map(scalar, (x, y, u, v))
        rows.append([x, y, ONE, 0, 0, 0, -u * x, -u * y])
        rhs.append(u)
        rows.append([0, 0, 0, x, y, ONE, -v * x, -v * y])
        rhs.append(v)
    sol = solve_exact(rows, rhs)
    return [sol[0:3], sol[3:6], [sol[6], sol[7], ONE]]


def solve_exact(A, b) -> list:
    """Gaussian elimination over the rationals; raises on a singular system."""
    n = len(A)
    M = [[scalar(v) for v in row] + [scalar(bv)] for row, bv in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise GeometryError("singular linear system")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] * inv
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] / M[i][i] for i in range(n)]


def convex_hull_2d(points) -> list:
    """Exact convex hull, counter-clockwise, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]
