"""Flat realizations of planar graphs.

Pipeline: join components with bridge edges, triangulate by stellating every
face (faces whose boundary walk repeats a vertex get a ring of helper
vertices first), take the dual of the triangulation, draw it with Tutte's
barycentric method so every face is strictly convex, then keep the faces of
the original vertices and side-trim the bridges.
"""
from __future__ import annotations

import math
from fractions import Fraction

import networkx as nx
import numpy as np
from gmpy2 import mpq
from scipy.sparse import lil_matrix
from scipy.sparse.linalg import spsolve

from ..geometry.ops import circle_direction
from ..geometry.primitives import Point3, Polygon
from ..geometry.scalar import ZERO, scalar
from ..graphs import Graph, is_planar
from ..surface import Mode, Surface, side_trim
from .base import ConstructionFailed, ConstructionResult, finish


class NotPlanar(ValueError):
    pass


SNAP_BITS = 48


def _faces(emb) -> list[list]:
    seen = set()
    out = []
    for u, v in emb.edges():
        if (u, v) not in seen:
            out.append(emb.traverse_face(u, v, mark_half_edges=seen))
    return out


def triangulate(g: Graph, bridges) -> tuple[nx.Graph, object]:
    """Stellated triangulation of g + bridges; helper nodes are tuples."""
    base = g.to_networkx()
    base.add_edges_from(bridges)
    ok, emb = nx.check_planarity(base)
    if not ok:
        raise NotPlanar("graph is not planar")
    tri = nx.Graph(base)
    for f, walk in enumerate(_faces(emb)):
        k = len(walk)
        center = ("c", f)
        if len(set(walk)) == k:
            tri.add_edges_from((center, w) for w in walk)
            continue
        ring = [("h", f, i) for i in range(k)]
        for i in range(k):
            tri.add_edge(ring[i], walk[i])
            tri.add_edge(ring[i], walk[(i + 1) % k])
            tri.add_edge(ring[i], ring[(i + 1) % k])
            tri.add_edge(ring[i], center)
    ok, temb = nx.check_planarity(tri)
    if not ok or tri.number_of_edges() != 3 * tri.number_of_nodes() - 6:
        raise ConstructionFailed("stellation did not produce a triangulation")
    return tri, temb


def _rotation_faces(temb, v) -> list[frozenset]:
    nb = list(temb.neighbors_cw_order(v))
    return [frozenset((v, nb[i], nb[(i + 1) % len(nb)])) for i in range(len(nb))]


def _outer_positions(k: int) -> list[tuple]:
    """k rational points exactly on the unit circle, in angular order."""
    pts = []
    for i in range(k):
        theta = -math.pi + (2 * math.pi * (i + 0.5)) / k
        t = mpq(Fraction(math.tan(theta / 2)).limit_denominator(1 << 20))
        c, s = circle_direction(t)
        pts.append((c, s))
    return pts


def _snap(x: float, bits: int) -> mpq:
    return mpq(round(x * (1 << bits)), 1 << bits)


def tutte_drawing(temb, tri: nx.Graph, root) -> dict:
    """Exact rational positions for the dual vertices (triangles)."""
    faces = {}
    for v in tri.nodes():
        for f in _rotation_faces(temb, v):
            faces.setdefault(f, None)
    dual_adj: dict = {f: set() for f in faces}
    for u, v in tri.edges():
        both = [f for f in _rotation_faces(temb, u) if v in f]
        if len(both) != 2:
            raise ConstructionFailed("edge is not between two triangles")
        a, b = both
        dual_adj[a].add(b)
        dual_adj[b].add(a)
    outer = _rotation_faces(temb, root)
    pos = dict(zip(outer, _outer_positions(len(outer))))
    inner = [f for f in faces if f not in pos]
    index = {f: i for i, f in enumerate(inner)}
    n = len(inner)
    if n == 0:
        return pos
    A = lil_matrix((n, n))
    bx = np.zeros(n)
    by = np.zeros(n)
    for f, i in index.items():
        A[i, i] = len(dual_adj[f])
        for h in dual_adj[f]:
            if h in index:
                A[i, index[h]] -= 1
            else:
                bx[i] += float(pos[h][0])
                by[i] += float(pos[h][1])
    A = A.tocsr()
    xs, ys = spsolve(A, bx), spsolve(A, by)
    for f, i in index.items():
        pos[f] = (_snap(xs[i], SNAP_BITS), _snap(ys[i], SNAP_BITS))
    return pos


def _lift(xy) -> Point3:
    return Point3(scalar(xy[0]), scalar(xy[1]), ZERO)


def _small_cases(g: Graph) -> Surface:
    squares = [
        Polygon([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)], g.labels[0]),
    ]
    if g.n == 2:
        x0 = 1 if g.m else 2
        squares.append(Polygon([(x0, 0, 0), (x0 + 1, 0, 0), (x0 + 1, 1, 0), (x0, 1, 0)], g.labels[1]))
    return Surface(squares[: g.n], Mode.CONVEX)


def planar_flat_surface(g: Graph) -> Surface:
    if not is_planar(g):
        raise NotPlanar("graph is not planar")
    if g.n <= 2:
        return _small_cases(g)
    comps = g.components()
    bridges = [(comps[i][0], comps[i + 1][0]) for i in range(len(comps) - 1)]
    tri, temb = triangulate(g, bridges)
    root = next(v for v in tri.nodes() if isinstance(v, tuple) and v[0] == "c")
    pos = tutte_drawing(temb, tri, root)
    polys = []
    for v in range(g.n):
        corners = [_lift(pos[f]) for f in _rotation_faces(temb, v)]
        polys.append(Polygon(corners, g.labels[v]))
    s = Surface(polys, Mode.CONVEX)
    for u, v in bridges:
        shared = set(polys[u].side_set) & set(polys[v].side_set)
        if len(shared) != 1:
            raise ConstructionFailed("bridge polygons do not share exactly one side")
        a, b = tuple(next(iter(shared)))
        s = side_trim(s, (a, b), check=False)
    return s


def realize_planar_flat(g: Graph) -> ConstructionResult:
    return finish(planar_flat_surface(g), g)
