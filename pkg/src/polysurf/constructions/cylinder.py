"""Subdivided graphs: copies of one polygon around the z-axis plus trapezoids."""
from __future__ import annotations

from ..geometry.ops import circle_direction
from ..geometry.primitives import Point3, Polygon, lerp
from ..geometry.scalar import ONE, Scalar, scalar
from ..graphs import Graph, subdivide_graph
from ..surface import Mode, Surface
from .base import ConstructionResult, finish


class TooFewEdges(ValueError):
    pass


def profile(m: int) -> list[tuple[Scalar, Scalar]]:
    """Corners (height, depth) of the 2m-gon P.

    p_1 and p_2m sit at depth 0 (the long side); the rest follow the parabola
    depth = c * u * (U - u).  The last height is 2m - 1/2 rather than 2m - 1,
    so no two heights are symmetric about U/2 and no short side is parallel
    to the long side.
    """
    us = [scalar(j) for j in range(2 * m - 1)] + [scalar(2 * m) - scalar("1/2")]
    top = us[-1]
    c = 2 / (top * top)  # peak depth 1/2
    return [(u, c * u * (top - u)) for u in us]


def realize_subdivision_cylinder(g: Graph, k: int = 1) -> ConstructionResult:
    """Realize the graph with every edge subdivided k times."""
    if g.m < 2:
        raise TooFewEdges("need at least two edges")
    if k < 1:
        raise ValueError("k >= 1 required")
    edges = g.edges()
    prof = profile(len(edges))
    dirs = [circle_direction(scalar(i + 1) / (g.n + 1)) for i in range(g.n)]

    def corner(i: int, j: int) -> Point3:
        # j is 0-based here: corner p_{j+1} of the copy for vertex i
        u, depth = prof[j]
        rho = ONE - depth
        c, s = dirs[i]
        return Point3(rho * c, rho * s, u)

    polys = [Polygon([corner(i, j) for j in range(len(prof))], g.labels[i]) for i in range(g.n)]
    target = subdivide_graph(g, k)
    for e, (a, b) in enumerate(edges):
        lo = (corner(a, 2 * e), corner(b, 2 * e))
        hi = (corner(a, 2 * e + 1), corner(b, 2 * e + 1))
        # pieces ordered from vertex a towards vertex b
        for t in range(k):
            f0, f1 = scalar(t) / k, scalar(t + 1) / k
            quad = [lerp(*lo, f0), lerp(*lo, f1), lerp(*hi, f1), lerp(*hi, f0)]
            polys.append(Polygon(quad, ("sub", g.labels[a], g.labels[b], t)))
    return finish(Surface(polys, Mode.CONVEX), target)
