"""The eight-polygon K4,4 surface."""
from __future__ import annotations

from ..geometry.ops import cut_polygon_by_halfspace
from ..geometry.primitives import Plane, Point3, Polygon, norm_inf, sub
from ..geometry.scalar import scalar
from ..graphs import Graph, complete_bipartite
from ..surface import Mode, Surface, corner_trim_many, side_trim
from .base import ConstructionResult, finish
from .k44_table import RAW, VERTICAL

DIAGONAL = ("P_diag1", "P_diag2")
SLAB = scalar("99/10")

# the two unwanted contacts: vert1/vert2 and vert3/vert4
EXTRA_SIDES = (
    ((-6, 0, -10), (-6, 0, 10)),
    ((6, 0, 10), (18, -12, -10)),
)


def raw_surface() -> Surface:
    """The unclipped coordinates; not a valid surface."""
    return Surface([Polygon([c.split(",") for c in cs], name) for name, cs in RAW.items()], Mode.CONVEX)


def slab_trims(s: Surface) -> dict:
    """Per-corner trim sizes that land the diagonal polygons' slanted sides on the slab.

    Each |z| = 10 corner of a diagonal polygon gets the max-norm eps for which
    the new corner on its slanted side has |z| = 99/10.  Trimming the same
    corner in every incident polygon keeps those sides shared in full.
    """
    out = {}
    depth = 10 - SLAB
    for name in DIAGONAL:
        cs = s.polygon(name).corners
        k = len(cs)
        for i, c in enumerate(cs):
            if abs(c.z) != 10:
                continue
            for nb in (cs[i - 1], cs[(i + 1) % k]):
                if nb.z != c.z:
                    out[c] = norm_inf(sub(nb, c)) * depth / abs(nb.z - c.z)
    return out


def clipped_surface() -> Surface:
    """Diagonal polygons cut to -99/10 <= z <= 99/10; realizes K4,4 plus two edges."""
    s = corner_trim_many(raw_surface(), slab_trims(raw_surface()))
    top = Plane.from_coefficients(0, 0, 1, -SLAB)
    bot = Plane.from_coefficients(0, 0, 1, SLAB)
    polys = []
    for p in s.polygons:
        if p.id in DIAGONAL:
            p = cut_polygon_by_halfspace(p, top, keep=-1)
            p = cut_polygon_by_halfspace(p, bot, keep=1)
        polys.append(p)
    return s.replace(polys)


def k44_target() -> Graph:
    g = complete_bipartite(4, 4)
    return g.relabelled(list(VERTICAL) + ["P_top", "P_bot", "P_diag1", "P_diag2"])


def realize_k44() -> ConstructionResult:
    s = clipped_surface()
    for side in EXTRA_SIDES:
        s = side_trim(s, side)
    return finish(s, k44_target())
