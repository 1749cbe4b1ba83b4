"""A family of surfaces whose average degree tends to 12.

Grid: octagon cells of a truncated square tiling centred at the integer
points (i, j) with |i| + |j| <= ell, written in the rotated coordinates
u = x + y, v = x - y so the square holes have sides parallel to the axes.
Each octagon's corners are concyclic, so lifting to w = (u^2 + v^2) / 2 puts
every cell on a plane.  On each of its four hole sides an octagon gets a
2-corner bump (a "connector" parallel to the side, slightly inside the hole),
which turns it into a 16-gon on the same plane.

The lifted grid is stood upright (v becomes the height, w points away from the
axis) and m copies are placed around the z-axis.  Connectors on u = const
lines of one copy are collinear and get one vertical polygon per line.
Connectors on v = const sides are all at distinct heights; the m copies of one
such connector span a horizontal polygon inside the ring.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..geometry.ops import circle_direction, convex_hull_2d
from ..geometry.primitives import Point3, Polygon
from ..geometry.scalar import ONE, ZERO, Scalar, scalar
from ..graphs import Graph
from ..surface import Mode, Surface
from .base import ConstructionFailed, ConstructionResult, finish

A = scalar("1/4")        # octagon corners (i +- A, j +- 1/2), (i +- 1/2, j +- A)
T = scalar("1/4")        # connector inset along its side, as a fraction of the side
DELTA_V = scalar("1/32")  # offset of vertical connectors into the hole
DELTA_H = scalar("1/64")  # base offset of horizontal connectors


def cell_count(ell: int) -> int:
    return 2 * ell * ell + 2 * ell + 1


def grid_cells(ell: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(-ell, ell + 1) for j in range(-ell, ell + 1) if abs(i) + abs(j) <= ell]


def _uv(x, y) -> tuple[Scalar, Scalar]:
    return x + y, x - y


def lift_plane(i: int, j: int):
    """w on the plane through the lifted corners of octagon (i, j), as a function of (u, v)."""
    r2 = A * A + scalar("1/4")
    # on the circle: x^2 + y^2 = 2ix + 2jy - i^2 - j^2 + r^2
    const = r2 - i * i - j * j

    def w(u, v):
        return i * (u + v) + j * (u - v) + const

    return w


@dataclass(frozen=True)
class Connector:
    cell: tuple[int, int]
    kind: str        # "v": on a u = const line, "h": on a v = const line
    key: tuple       # vertical: the line u = key[1]; horizontal: an index
    a: tuple         # endpoints in (u, v)
    b: tuple


def _octagon_uv(i: int, j: int) -> list:
    """Counter-clockwise corners (in x, y) with the four hole sides tagged."""
    h = scalar("1/2")
    xy = [
        (i + h, j - A), (i + h, j + A),   # right side, shared with (i+1, j)
        (i + A, j + h), (i - A, j + h),   # top, shared with (i, j+1)
        (i - h, j + A), (i - h, j - A),   # left
        (i - A, j - h), (i + A, j - h),   # bottom
    ]
    return [_uv(scalar(x), scalar(y)) for x, y in xy]


# hole sides of the octagon, as (start corner index, kind, outward direction in (u, v))
_HOLE_SIDES = (
    (1, "v", (ONE, ZERO)),    # top-right: u = i+j+1/2+A, hole at larger u
    (3, "h", (ZERO, -ONE)),   # top-left: v = i-j-1/2-A, hole at smaller v
    (5, "v", (-ONE, ZERO)),   # bottom-left: u = i+j-1/2-A
    (7, "h", (ZERO, ONE)),    # bottom-right: v = i-j+1/2+A
)


def _grid(ell: int):
    """16-gons in (u, v) per cell and the connector list."""
    cells = grid_cells(ell)
    m = len(cells)
    cell_polys = {}
    connectors = []
    h_index = 0
    for i, j in cells:
        octo = _octagon_uv(i, j)
        out = []
        tags = {s: (kind, n) for s, kind, n in _HOLE_SIDES}
        for k in range(8):
            p, q = octo[k], octo[(k + 1) % 8]
            out.append(p)
            if k not in tags:
                continue
            kind, n = tags[k]
            if kind == "v":
                d = DELTA_V
                key = ("v", p[0] + d * n[0])
            else:
                # distinct heights: no two horizontal connectors on one line
                d = DELTA_H + scalar(h_index) / (10 * m * m)
                key = ("h", h_index)
                h_index += 1
            pa = (p[0] + T * (q[0] - p[0]) + d * n[0], p[1] + T * (q[1] - p[1]) + d * n[1])
            pb = (q[0] + T * (p[0] - q[0]) + d * n[0], q[1] + T * (p[1] - q[1]) + d * n[1])
            out += [pa, pb]
            connectors.append(Connector((i, j), kind, key, pa, pb))
        cell_polys[(i, j)] = out
    return cell_polys, connectors


@dataclass(frozen=True)
class Placement:
    radius: Scalar
    lift_scale: Scalar
    frames: tuple   # (cos, sin) per copy

    def point(self, k: int, u, v, w) -> Point3:
        c, s = self.frames[k]
        r = self.radius + self.lift_scale * w
        return Point3(r * c - u * s, r * s + u * c, v)


def _placement(ell: int, copies: int) -> Placement:
    frames = []
    for k in range(copies):
        theta = 2 * math.pi * k / copies
        if theta > math.pi:
            theta -= 2 * math.pi
        t = Fraction(math.tan(theta / 2)).limit_denominator(1 << 12)
        frames.append(circle_direction(scalar(t)))
    return Placement(
        radius=scalar(4 * (ell + 1) * copies),
        lift_scale=ONE / (8 * copies * ell),
        frames=tuple(frames),
    )


def _has_side(hull, a, b) -> bool:
    k = len(hull)
    for i in range(k):
        if {hull[i], hull[(i + 1) % k]} == {a, b}:
            return True
    return False


def density_surface(ell: int) -> tuple[Surface, Graph]:
    if ell < 1:
        raise ValueError("ell >= 1 required")
    m = cell_count(ell)
    cell_polys, connectors = _grid(ell)
    place = _placement(ell, m)
    planes = {c: lift_plane(*c) for c in cell_polys}
    polys = []
    labels = []
    edges = set()

    def add(poly, label):
        labels.append(label)
        polys.append(poly)

    for k in range(m):
        for c, uvs in cell_polys.items():
            w = planes[c]
            add(Polygon([place.point(k, u, v, w(u, v)) for u, v in uvs], ("oct", k, *c)), ("oct", k, *c))
        for i, j in cell_polys:
            for nb in ((i + 1, j), (i, j + 1)):
                if nb in cell_polys:
                    edges.add((("oct", k, i, j), ("oct", k, *nb)))

    # vertical polygons, one per copy and line
    lines: dict = {}
    for con in connectors:
        if con.kind == "v":
            lines.setdefault(con.key, []).append(con)
    for k in range(m):
        for key, cons in sorted(lines.items(), key=lambda kv: kv[0][1]):
            u0 = key[1]
            pts2 = []
            segs = []
            for con in cons:
                w = planes[con.cell]
                a2 = (con.a[1], w(*con.a))
                b2 = (con.b[1], w(*con.b))
                pts2 += [a2, b2]
                segs.append((a2, b2))
            vs = [p[0] for p in pts2]
            apex = ((min(vs) + max(vs)) / 2, max(p[1] for p in pts2) + 1)
            hull = convex_hull_2d(pts2 + [apex])
            if not all(_has_side(hull, a2, b2) for a2, b2 in segs):
                raise ConstructionFailed("vertical connectors are not in convex position")
            label = ("vert", k, u0)
            add(Polygon([place.point(k, u0, v, w) for v, w in hull], label), label)
            for con in cons:
                edges.add((("oct", k, *con.cell), label))

    # horizontal polygons, one per connector index, spanning all copies
    for con in connectors:
        if con.kind != "h":
            continue
        w = planes[con.cell]
        z = con.a[1]
        pts = []
        segs = []
        for k in range(m):
            pa = place.point(k, con.a[0], z, w(*con.a))
            pb = place.point(k, con.b[0], z, w(*con.b))
            pts += [(pa.x, pa.y), (pb.x, pb.y)]
            segs.append(((pa.x, pa.y), (pb.x, pb.y)))
        hull = convex_hull_2d(pts)
        if len(hull) != 2 * m or not all(_has_side(hull, a, b) for a, b in segs):
            raise ConstructionFailed("horizontal connectors are not in convex position")
        label = ("hor", con.key[1])
        add(Polygon([Point3(x, y, z) for x, y in hull], label), label)
        for k in range(m):
            edges.add((("oct", k, *con.cell), label))

    index = {lab: n for n, lab in enumerate(labels)}
    target = Graph(len(labels), [(index[a], index[b]) for a, b in edges], labels)
    return Surface(polys, Mode.CONVEX), target


def inner_cells(ell: int) -> list[tuple[int, int]]:
    """Cells with all four grid neighbours."""
    cells = set(grid_cells(ell))
    return [(i, j) for i, j in sorted(cells)
            if all(nb in cells for nb in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)))]


def density_family(ell: int) -> ConstructionResult:
    s, target = density_surface(ell)
    res = finish(s, target)
    adj = res.report.adjacency
    m = cell_count(ell)
    inner_ids = {("oct", k, *c) for k in range(m) for c in inner_cells(ell)}
    inner_degrees = sorted({adj.degree(adj.index(pid)) for pid in inner_ids})
    extra = {
        "ell": ell,
        "cells_per_grid": m,
        "octagons": m * m,
        "inner_octagons": len(inner_ids),
        "inner_degrees": inner_degrees,
        "adjacencies": adj.m,
        "average_degree": 2 * adj.m / adj.n,
        "inner_bound": 6 * len(inner_ids),
    }
    return ConstructionResult(res.surface, res.realization, res.target, res.report, res.stats, extra)
