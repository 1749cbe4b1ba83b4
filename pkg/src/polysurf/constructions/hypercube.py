"""Hypercubes by shear, cut, mirror, slice and projective restore."""
from __future__ import annotations

from ..geometry.ops import apply_projective, cut_polygon_by_halfspace, homography_2d
from ..geometry.primitives import Plane, Point3, Polygon
from ..geometry.scalar import ONE, ZERO, Scalar, scalar
from ..graphs import hypercube
from ..surface import Mode, Surface, validate
from .base import ConstructionFailed, ConstructionResult, finish


def _pow2_at_least(x: Scalar) -> Scalar:
    v = ONE
    while v < x:
        v *= 2
    return v


def _pow2_below(x: Scalar) -> Scalar:
    v = ONE
    while v >= x:
        v /= 2
    return v


def _unit_square() -> Polygon:
    return Polygon([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)], "")


def _shear(polys: list[Polygon]) -> list[Polygon]:
    """z <- z - A (x - x0) so exactly the corners on x = 1 go below z = 0."""
    xmax = max(c.x for p in polys for c in p.corners if c.x != 1)
    x0 = (xmax + 1) / 2
    need = ZERO
    for p in polys:
        for c in p.corners:
            if c.x == 1:
                need = max(need, c.z / (1 - x0))
            else:
                need = max(need, -c.z / (x0 - c.x))
    A = _pow2_at_least(need + 1)
    T = [[1, 0, 0, 0], [0, 1, 0, 0], [-A, 0, 1, A * x0], [0, 0, 0, 1]]
    out = [apply_projective(T, p) for p in polys]
    for p in out:
        for c in p.corners:
            if (c.x == 1) != (c.z < 0) or c.z == 0:
                raise ConstructionFailed("shear did not separate the x = 1 sides")
    return out


def _mirror(p: Polygon, bit: str) -> Polygon:
    return Polygon([Point3(c.x, c.y, -c.z) for c in p.corners], p.id + bit)


def _slice_params(polys: list[Polygon]):
    """Slice line y = k (x - t) through every polygon's floor-side corner."""
    # each polygon has exactly one corner on y = 0 besides the origin: (c0, 0)
    c0s = []
    nexts = []
    for p in polys:
        cs = p.corners
        n = len(cs)
        for i, c in enumerate(cs):
            if c.y == 0 and c.x > 0:
                c0s.append(c.x)
                # its neighbour that is not on y = 0 is the far end of the z = 0 side
                a, b = cs[i - 1], cs[(i + 1) % n]
                nexts.append(a if a.y != 0 else b)
    t = _pow2_below(min(c0s))
    bound = 1 / (1 - t)
    for q in nexts:
        if q.x > t:
            bound = min(bound, q.y / (q.x - t))
    k = _pow2_below(bound)
    return t, k


def _step(polys: list[Polygon]) -> list[Polygon]:
    sheared = _shear(polys)
    floor = Plane.from_coefficients(0, 0, 1, 0)
    upper = []
    for p in sheared:
        cut = cut_polygon_by_halfspace(p, floor, keep=1)
        if cut is None:
            raise ConstructionFailed("cut removed a whole polygon")
        upper.append(cut)
    glued = [p.with_id(p.id + "0") for p in upper] + [_mirror(p, "1") for p in upper]
    t, k = _slice_params(upper)
    # keep y >= k (x - t); the coefficients get normalised, so ask a point
    plane = Plane.from_coefficients(-k, 1, 0, k * t)
    keep = plane.side(Point3(ZERO, ONE, ZERO))
    sliced = []
    for p in glued:
        cut = cut_polygon_by_halfspace(p, plane, keep=keep)
        if cut is None or len(cut) != len(p) + 1:
            raise ConstructionFailed("slice did not remove exactly one corner")
        sliced.append(cut)
    H = homography_2d(
        [(0, 0), (t, 0), (t + 1 / k, 1), (0, 1)],
        [(0, 0), (1, 0), (1, 1), (0, 1)],
    )
    T = [
        [H[0][0], H[0][1], 0, H[0][2]],
        [H[1][0], H[1][1], 0, H[1][2]],
        [0, 0, 1, 0],
        [H[2][0], H[2][1], 0, H[2][2]],
    ]
    for x, y in ((0, 0), (t, 0), (t + 1 / k, 1), (0, 1)):
        if H[2][0] * x + H[2][1] * y + H[2][2] <= 0:
            raise ConstructionFailed("projective map sends the working region through infinity")
    return [apply_projective(T, p) for p in sliced]


def hypercube_polygons(d: int, check_steps: bool = True) -> list[Polygon]:
    if d < 0:
        raise ValueError("d >= 0 required")
    polys = [_unit_square()]
    for step in range(d):
        polys = _step(polys)
        if check_steps:
            rep = validate(Surface(polys, Mode.CONVEX))
            if not rep.valid:
                raise ConstructionFailed(f"step {step + 1}: {rep.violations[0].description}")
    return polys


def realize_hypercube(d: int) -> ConstructionResult:
    """2^d polygons, each a (d+4)-gon, realizing Q_d."""
    polys = hypercube_polygons(d)
    return finish(Surface(polys, Mode.CONVEX), hypercube(d))
