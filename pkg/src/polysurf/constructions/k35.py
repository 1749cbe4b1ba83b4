"""K3,5 inside a triangular prism.

The prism has lateral edges through e1, e2, e3 in direction (1, 1, 1); face f
spans edges f and f+1 and a face point (s, h) lifts to
e_f + s (e_{f+1} - e_f) + h (1, 1, 1).  Each colourful polygon has a
supporting plane, given here by its heights on the three edges, so in every
face it leaves a straight "supporting line".  In each face the five lines bound
a pentagonal cell.  The gray polygon of the face is the hull of five short
segments, one on each cell side; the colourful polygon of colour c is the hull
of its three short segments.  Where on its cell side each short segment sits
was derived once by search and is frozen below.  The colourful polygons are
shown pairwise disjoint by intersecting each with the line common to the two
supporting planes.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..geometry.contact import intersect_intervals, plane_line_segments
from ..geometry.ops import convex_hull_2d
from ..geometry.primitives import Point3, Polygon, drop_axis, newell_normal
from ..geometry.scalar import ONE, ZERO, Scalar, scalar
from ..graphs import Graph, complete_bipartite
from ..surface import Mode, Surface
from .base import ConstructionResult, finish


class CoordinateDerivationFailed(RuntimeError):
    """The frozen parameters no longer produce the intended configuration."""


# HEIGHTS[k][c]: height of colour c's plane on prism edge k
HEIGHTS = (
    (-7, -24, -26, 97, -71),
    (1, -54, 89, -53, -45),
    (-93, 81, 32, 43, 64),
)
# cell side per face: "L" when the cell lies above colour c's line
SIDES = ("ULUUL", "LUULU", "LULUL")
# POSITIONS[c][f]: centre of colour c's segment along its cell side in face f
POSITIONS = (
    ("1/100", "24/25", "1/100"),
    ("49/50", "24/25", "4/25"),
    ("3/10", "21/25", "1/100"),
    ("1/100", "23/25", "1/100"),
    ("7/10", "3/10", "3/10"),
)
HALF_WIDTH = scalar("1/250")
COLOURS = 5
GRAY_IDS = ("G0", "G1", "G2")
COLOUR_IDS = tuple(f"P{c}" for c in range(COLOURS))
# the three pairs singled out for a line certificate; realize_k35 checks all ten
CERTIFIED_PAIRS = (("P1", "P2"), ("P1", "P3"), ("P2", "P3"))

_E = (Point3(ONE, ZERO, ZERO), Point3(ZERO, ONE, ZERO), Point3(ZERO, ZERO, ONE))


def lift(f: int, s, h) -> Point3:
    a, b = _E[f], _E[(f + 1) % 3]
    return Point3(*(a[i] + s * (b[i] - a[i]) + h for i in range(3)))


def _lines(f: int) -> list[tuple[Scalar, Scalar]]:
    """(intercept, slope) of every colour's line in face f, over s in [0, 1]."""
    left, right = HEIGHTS[f], HEIGHTS[(f + 1) % 3]
    return [(scalar(left[c]), scalar(right[c] - left[c])) for c in range(COLOURS)]


def _clip(poly, a, b, keep_above):
    sign = 1 if keep_above else -1
    out = []
    k = len(poly)
    for i in range(k):
        p, q = poly[i], poly[(i + 1) % k]
        vp = sign * (p[1] - a - b * p[0])
        vq = sign * (q[1] - a - b * q[0])
        if vp >= 0:
            out.append(p)
        if (vp > 0 > vq) or (vp < 0 < vq):
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    dedup = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    while len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def cell_sides(f: int) -> dict:
    """s-range of each colour's side of the pentagonal cell in face f."""
    lines = _lines(f)
    big = scalar(10**6)
    cell = [(ZERO, -big), (ONE, -big), (ONE, big), (ZERO, big)]
    for (a, b), side in zip(lines, SIDES[f]):
        cell = _clip(cell, a, b, side == "L")
        if len(cell) < 3:
            raise CoordinateDerivationFailed(f"face {f}: empty cell")
    if len(cell) != 5 or not all(ZERO < p[0] < ONE for p in cell):
        raise CoordinateDerivationFailed(f"face {f}: cell is not a pentagon inside the face")
    out = {}
    for i in range(5):
        p, q = cell[i], cell[(i + 1) % 5]
        owners = [c for c, (a, b) in enumerate(lines) if p[1] == a + b * p[0] and q[1] == a + b * q[0]]
        if len(owners) != 1 or owners[0] in out:
            raise CoordinateDerivationFailed(f"face {f}: cell sides do not match the colours")
        out[owners[0]] = (min(p[0], q[0]), max(p[0], q[0]))
    return out


def segments() -> dict:
    """(colour, face) -> the two face points (s, h) of the short segment."""
    out = {}
    for f in range(3):
        lines = _lines(f)
        sides = cell_sides(f)
        for c in range(COLOURS):
            lo, hi = sides[c]
            mid = scalar(POSITIONS[c][f])
            a, b = lines[c]
            pts = []
            for t in (mid - HALF_WIDTH, mid + HALF_WIDTH):
                if not ZERO < t < ONE:
                    raise CoordinateDerivationFailed("segment leaves its cell side")
                s = lo + t * (hi - lo)
                pts.append((s, a + b * s))
            out[(c, f)] = pts
    return out


def _polygon_from_points(points: list[Point3], pid, expect: int) -> Polygon:
    axis = drop_axis(newell_normal(points))
    keep = [i for i in range(3) if i != axis]
    back = {(p[keep[0]], p[keep[1]]): p for p in points}
    hull = convex_hull_2d(list(back))
    if len(hull) != expect:
        raise CoordinateDerivationFailed(f"{pid}: hull has {len(hull)} corners, expected {expect}")
    return Polygon([back[h] for h in hull], pid)


def k35_surface() -> Surface:
    segs = segments()
    grays = []
    for f in range(3):
        pts = [(s, h) for c in range(COLOURS) for s, h in segs[(c, f)]]
        hull = convex_hull_2d(pts)
        if len(hull) != 2 * COLOURS:
            raise CoordinateDerivationFailed(f"gray polygon {f} is not a {2 * COLOURS}-gon")
        grays.append(Polygon([lift(f, s, h) for s, h in hull], GRAY_IDS[f]))
    colourful = []
    for c in range(COLOURS):
        pts = [lift(f, s, h) for f in range(3) for s, h in segs[(c, f)]]
        colourful.append(_polygon_from_points(pts, COLOUR_IDS[c], 6))
    return Surface(grays + colourful, Mode.CONVEX)


@dataclass(frozen=True)
class Certificate:
    pair: tuple
    origin: Point3
    direction: Point3
    first: list
    second: list

    @property
    def disjoint(self) -> bool:
        return not intersect_intervals(self.first, self.second)


def k35_certificates(s: Surface, pairs=None) -> list[Certificate]:
    """Pieces of two colourful polygons on their common plane line."""
    if pairs is None:
        pairs = list(combinations(COLOUR_IDS, 2))
    out = []
    for a, b in pairs:
        origin, direction, ia, ib = plane_line_segments(s.polygon(a), s.polygon(b))
        out.append(Certificate((a, b), origin, direction, ia, ib))
    return out


def k35_target() -> Graph:
    return complete_bipartite(3, COLOURS).relabelled(list(GRAY_IDS) + list(COLOUR_IDS))


def realize_k35() -> ConstructionResult:
    s = k35_surface()
    certs = k35_certificates(s)
    bad = [c.pair for c in certs if not c.disjoint]
    if bad:
        raise CoordinateDerivationFailed(f"colourful polygons meet on their plane line: {bad}")
    return finish(s, k35_target(), certificates=certs)
