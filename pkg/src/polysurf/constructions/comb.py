"""Comb polygons: realizes every graph with (nonconvex) polygons."""
from __future__ import annotations

from ..geometry.ops import circle_direction
from ..geometry.primitives import Point3, Polygon
from ..geometry.scalar import scalar
from ..graphs import Graph
from ..surface import Mode, Surface
from .base import ConstructionResult, finish


def comb_polygons(g: Graph) -> list[Polygon]:
    """One comb per vertex, all hanging off the x-axis.

    Vertex i lives in the half-plane spanned by the x-axis and the rational
    unit direction (0, c_i, s_i).  Edge number e owns the axis segment
    [2e+1, 2e+2]; both endpoints grow a tooth down to that segment, so the
    segment is a side of exactly those two combs.
    """
    edges = g.edges()
    length = 2 * len(edges) + 3
    teeth: list[list[int]] = [[] for _ in range(g.n)]
    for e, (u, v) in enumerate(edges):
        teeth[u].append(e)
        teeth[v].append(e)
    polys = []
    for i in range(g.n):
        c, s = circle_direction(scalar(i + 1) / (g.n + 1))

        def at(x, r):
            x, r = scalar(x), scalar(r)
            return Point3(x, r * c, r * s)

        outline = [at(0, 1)]
        for e in sorted(teeth[i]):
            a, b = 2 * e + 1, 2 * e + 2
            outline += [at(a, 1), at(a, 0), at(b, 0), at(b, 1)]
        outline += [at(length, 1), at(length, 2), at(0, 2)]
        polys.append(Polygon(outline, g.labels[i]))
    return polys


def realize_comb(g: Graph) -> ConstructionResult:
    return finish(Surface(comb_polygons(g), Mode.GENERAL), g)
