"""Polygon collections: validation, adjacency graphs and local edits."""
from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Sequence

from .geometry.contact import DISJOINT, Contact, ContactClass, classify_contact
from .geometry.ops import cut_polygon_by_halfspace
from .geometry.primitives import (
    GeometryError,
    Plane,
    Point3,
    Polygon,
    add,
    cross,
    dist2,
    dot,
    midpoint,
    norm_inf,
    point_in_polygon2,
    project,
    scale,
    sub,
)
from .geometry.scalar import ONE, ZERO, Scalar, scalar
from .graphs import Graph, find_isomorphism


class InvalidSurface(ValueError):
    def __init__(self, report: "VerificationReport"):
        first = report.violations[0] if report.violations else None
        super().__init__(f"surface is invalid: {first.description if first else 'unknown'}")
        self.report = report


class EpsTooLarge(ValueError):
    pass


class NoSecondPolygon(ValueError):
    pass


class DeltaInfeasible(ValueError):
    pass


class Mode(str, enum.Enum):
    CONVEX = "convex"
    GENERAL = "general"


def _point(p) -> Point3:
    return p if isinstance(p, Point3) else Point3(*map(scalar, p))


@dataclass(frozen=True)
class Surface:
    polygons: tuple
    mode: Mode = Mode.CONVEX

    def __init__(self, polygons: Iterable[Polygon], mode: Mode | str = Mode.CONVEX):
        polys = []
        for i, p in enumerate(polygons):
            if not isinstance(p, Polygon):
                p = Polygon(p, i)
            elif p.id is None:
                p = p.with_id(i)
            polys.append(p)
        ids = [p.id for p in polys]
        if len(set(ids)) != len(ids):
            raise ValueError("polygon ids must be unique")
        object.__setattr__(self, "polygons", tuple(polys))
        object.__setattr__(self, "mode", Mode(mode))

    def __len__(self) -> int:
        return len(self.polygons)

    @property
    def ids(self) -> list:
        return [p.id for p in self.polygons]

    def index(self, pid) -> int:
        for i, p in enumerate(self.polygons):
            if p.id == pid:
                return i
        raise KeyError(pid)

    def polygon(self, pid) -> Polygon:
        return self.polygons[self.index(pid)]

    def replace(self, polys: Iterable[Polygon]) -> "Surface":
        return Surface(polys, self.mode)

    def without(self, pids) -> "Surface":
        drop = set(pids)
        return Surface([p for p in self.polygons if p.id not in drop], self.mode)


@dataclass(frozen=True)
class Violation:
    items: tuple
    description: str
    witness: Any = None


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    contacts: dict
    violations: list
    adjacency: Graph

    def contact(self, a, b) -> ContactClass:
        got = self.contacts.get((a, b))
        if got is None:
            got = self.contacts.get((b, a), DISJOINT)
        return got

    def shared_pairs(self) -> list:
        return [k for k, c in self.contacts.items() if c.is_side]


@dataclass(frozen=True)
class Realization:
    surface: Surface
    vertex_map: dict = field(hash=False)

    def check(self, g: Graph) -> bool:
        ids = self.surface.ids
        if sorted(self.vertex_map) != list(range(g.n)) or sorted(map(repr, self.vertex_map.values())) != sorted(map(repr, ids)):
            return False
        adj = adjacency_graph(self.surface)
        pos = {pid: i for i, pid in enumerate(ids)}
        want = {frozenset((pos[self.vertex_map[u]], pos[self.vertex_map[v]])) for u, v in g.edges()}
        return want == {frozenset(e) for e in adj.edges()}


# --- validation ---------------------------------------------------------------


def candidate_pairs(polys: Sequence[Polygon]) -> list:
    """Index pairs whose bounding boxes meet (sweep along x)."""
    order = sorted(range(len(polys)), key=lambda i: polys[i].bbox[0][0])
    out = []
    active = []
    for i in order:
        lo, hi = polys[i].bbox
        active = [j for j in active if polys[j].bbox[1][0] >= lo[0]]
        for j in active:
            jl, jh = polys[j].bbox
            if all(lo[k] <= jh[k] and jl[k] <= hi[k] for k in (1, 2)):
                out.append((min(i, j), max(i, j)))
        active.append(i)
    out.sort()
    return out


def _classify_chunk(args):
    polys, pairs = args
    return [classify_contact(polys[i], polys[j]) for i, j in pairs]


def _thread_cap(threads) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("POLYSURF_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            return 1
    return 1


def _classify_all(polys, pairs, threads):
    workers = _thread_cap(threads)
    if workers == 1 or len(pairs) < 400:
        return [classify_contact(polys[i], polys[j]) for i, j in pairs]
    size = (len(pairs) + workers - 1) // workers
    chunks = [pairs[k:k + size] for k in range(0, len(pairs), size)]
    # results are merged in pair order, so the report does not depend on scheduling
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_classify_chunk, [(polys, c) for c in chunks]))
    return [c for part in parts for c in part]


def validate(s: Surface, closed: bool = False, threads: int | None = None) -> VerificationReport:
    """Check the surface rules; failures are reported, never raised.

    ``closed`` additionally demands that every side is shared by exactly two
    polygons.  ``threads`` (or POLYSURF_THREADS) caps worker processes for
    the pairwise pass.
    """
    polys = s.polygons
    ids = [p.id for p in polys]
    violations = []
    if s.mode is Mode.CONVEX:
        for p in polys:
            if not p.convex:
                violations.append(Violation((p.id,), "polygon is not strictly convex"))
    pairs = candidate_pairs(polys)
    results = _classify_all(polys, pairs, threads)
    contacts = {}
    edges = []
    for (i, j), c in zip(pairs, results):
        if c.tag is Contact.DISJOINT:
            continue
        contacts[(ids[i], ids[j])] = c
        if c.tag is Contact.VIOLATION:
            violations.append(Violation((ids[i], ids[j]), c.detail, c.witness))
        elif c.tag is Contact.SHARED_SIDE:
            edges.append((i, j))
    # side multiplicity; with valid pairs this is also the triple rule
    owners: dict = {}
    for i, p in enumerate(polys):
        for side in p.side_set:
            owners.setdefault(side, []).append(i)
    for side, who in owners.items():
        if len(who) > 2:
            violations.append(Violation(
                tuple(ids[i] for i in who),
                f"side shared by {len(who)} polygons",
                tuple(sorted(side)),
            ))
        elif closed and len(who) == 1:
            violations.append(Violation((ids[who[0]],), "side is not shared (closed mode)", tuple(sorted(side))))
    adjacency = Graph(len(polys), edges, ids)
    return VerificationReport(not violations, contacts, violations, adjacency)


def adjacency_graph(s: Surface) -> Graph:
    report = validate(s)
    if not report.valid:
        raise InvalidSurface(report)
    return report.adjacency


def realizes(s: Surface, g: Graph, report: VerificationReport | None = None) -> Realization | None:
    """Witness isomorphism from g onto the adjacency graph, or None."""
    if report is None:
        report = validate(s)
    if not report.valid:
        raise InvalidSurface(report)
    adj = report.adjacency
    iso = find_isomorphism(g, adj)
    if iso is None:
        return None
    return Realization(s, {v: adj.labels[x] for v, x in iso.items()})


def triangle_halfspace_ok(s: Surface, report: VerificationReport | None = None) -> bool:
    """For each adjacency triangle uvw, P_v and P_w lie weakly on one side of P_u's plane."""
    if report is None:
        report = validate(s)
    adj = report.adjacency
    polys = s.polygons
    for u in range(adj.n):
        plane = polys[u].plane
        nb = sorted(adj.adj[u])
        for a in range(len(nb)):
            for b in range(a + 1, len(nb)):
                v, w = nb[a], nb[b]
                if not adj.has_edge(v, w):
                    continue
                signs = {plane.side(c) for c in polys[v].corners + polys[w].corners} - {0}
                if len(signs) > 1:
                    return False
    return True


# --- safe bounds ----------------------------------------------------------------


def point_polygon_dist2(c: Point3, poly: Polygon) -> Scalar:
    """Exact squared Euclidean distance from a point to a closed polygon."""
    n = poly.plane.normal
    val = poly.plane.value(c)
    nn = dot(n, n)
    foot = sub(c, scale(n, val / nn))
    axis = poly.axis
    if point_in_polygon2(project(foot, axis), [project(q, axis) for q in poly.corners]) >= 0:
        return val * val / nn
    best = None
    for a, b in poly.sides():
        ab = sub(b, a)
        t = dot(sub(c, a), ab) / dot(ab, ab)
        t = min(max(t, ZERO), ONE)
        d = dist2(c, add(a, scale(ab, t)))
        if best is None or d < best:
            best = d
    return best


def _incident_side_lengths(s: Surface, corner: Point3) -> list:
    out = []
    for p in s.polygons:
        cs = p.corners
        k = len(cs)
        for i, c in enumerate(cs):
            if c == corner:
                out.append(norm_inf(sub(cs[i - 1], c)))
                out.append(norm_inf(sub(cs[(i + 1) % k], c)))
    return out


def _power_of_two_below(bound: Scalar) -> Scalar:
    eps = ONE
    while eps > bound:
        eps /= 2
    while eps * 2 <= bound:
        eps *= 2
    return eps


def safe_eps(s: Surface, corner) -> Scalar:
    """Largest power of two at most 1/4 of the corner's clearance.

    Clearance is the shortest incident side (max-norm) and the distance to
    every polygon not incident to the corner.
    """
    corner = _point(corner)
    lengths = _incident_side_lengths(s, corner)
    if not lengths:
        raise ValueError(f"{corner!r} is not a corner of any polygon")
    side = min(lengths)
    eps = _power_of_two_below(side / 4)
    for p in s.polygons:
        if p.has_corner(corner):
            continue
        lo, hi = p.bbox
        # max-norm gap to the bounding box is a cheap lower bound
        gap = max(max(lo[k] - corner[k], corner[k] - hi[k], ZERO) for k in range(3))
        if gap > 8 * eps:
            continue
        d2 = point_polygon_dist2(corner, p)
        # Euclidean distance d bounds the max-norm gap from below by d/sqrt(3) > d/2
        while (8 * eps) ** 2 > d2:
            eps /= 2
    return eps


# --- trims -------------------------------------------------------------------------


def _step(a: Point3, b: Point3, eps) -> Point3:
    """Point at max-norm distance eps from a towards b."""
    d = sub(b, a)
    return add(a, scale(d, eps / norm_inf(d)))


def _trim_polygon(p: Polygon, targets: dict) -> tuple:
    """Replace every corner in ``targets`` (corner -> eps) by two nearby corners."""
    cs = p.corners
    k = len(cs)
    out = []
    for i, c in enumerate(cs):
        eps = targets.get(c)
        if eps is None:
            out.append(c)
        else:
            out.append(_step(c, cs[i - 1], eps))
            out.append(_step(c, cs[(i + 1) % k], eps))
    return tuple(out)


def _check_eps(s: Surface, corner: Point3, eps) -> None:
    lengths = _incident_side_lengths(s, corner)
    if not lengths:
        raise ValueError(f"{corner!r} is not a corner of any polygon")
    if eps <= 0:
        raise EpsTooLarge("eps must be positive")
    if 2 * eps >= min(lengths):
        raise EpsTooLarge(f"eps {eps} is not below half the shortest incident side at {corner!r}")


def _require_same(before: VerificationReport, after: VerificationReport, expect: set, what: str):
    if not after.valid:
        raise EpsTooLarge(f"{what} produced an invalid surface: {after.violations[0].description}")
    if after.adjacency.labelled_edges() != expect:
        raise EpsTooLarge(f"{what} changed the adjacency graph")


def corner_trim(s: Surface, corner, eps=None, check: bool = True) -> Surface:
    """Cut the corner off every polygon incident to it at max-norm distance eps.

    Distances are measured in the max-norm along each side so the new
    corners stay rational and coincide across polygons sharing a side.
    """
    corner = _point(corner)
    eps = safe_eps(s, corner) if eps is None else scalar(eps)
    _check_eps(s, corner, eps)
    polys = [p.with_corners(_trim_polygon(p, {corner: eps})) if p.has_corner(corner) else p for p in s.polygons]
    out = s.replace(polys)
    if check:
        before = validate(s)
        if not before.valid:
            raise InvalidSurface(before)
        _require_same(before, validate(out), before.adjacency.labelled_edges(), "corner trim")
    return out


def corner_trim_many(s: Surface, targets: dict, check: bool = False) -> Surface:
    """Several corner trims at once ({corner: eps}); corners must be far apart."""
    targets = {_point(c): scalar(e) for c, e in targets.items()}
    for c, e in targets.items():
        _check_eps(s, c, e)
    polys = [
        p.with_corners(_trim_polygon(p, targets)) if any(p.has_corner(c) for c in targets) else p
        for p in s.polygons
    ]
    out = s.replace(polys)
    if check:
        before = validate(s)
        _require_same(before, validate(out), before.adjacency.labelled_edges(), "corner trim")
    return out


def _side_trim_polys(s: Surface, a: Point3, b: Point3, eps) -> list:
    polys = []
    drop = {_step(a, b, eps), _step(b, a, eps)}
    for p in s.polygons:
        if not (p.has_corner(a) or p.has_corner(b)):
            polys.append(p)
            continue
        cs = _trim_polygon(p, {c: eps for c in (a, b) if p.has_corner(c)})
        if p.has_side(a, b):
            cs = tuple(c for c in cs if c not in drop)
        polys.append(p.with_corners(cs))
    return polys


def side_trim(s: Surface, side, eps=None, check: bool = True) -> Surface:
    """Corner-trim both ends of a side, then drop the two new corners on it."""
    a, b = (_point(x) for x in side)
    if not any(p.has_side(a, b) for p in s.polygons):
        raise ValueError(f"({a!r}, {b!r}) is not a side of any polygon")
    if eps is None:
        eps = min(safe_eps(s, a), safe_eps(s, b))
    eps = scalar(eps)
    _check_eps(s, a, eps)
    _check_eps(s, b, eps)
    out = s.replace(_side_trim_polys(s, a, b, eps))
    if check:
        before = validate(s)
        if not before.valid:
            raise InvalidSurface(before)
        owners = [p.id for p in s.polygons if p.has_side(a, b)]
        expect = before.adjacency.labelled_edges()
        if len(owners) == 2:
            expect = expect - {frozenset(owners)}
        _require_same(before, validate(out), expect, "side trim")
    return out


def _inward(p: Polygon, a: Point3, b: Point3) -> Point3:
    """In-plane direction perpendicular to side ab pointing into p (max-norm 1)."""
    u = cross(p.plane.normal, sub(b, a))
    # any corner not on the side's line tells which way is inside
    for c in p.corners:
        v = dot(u, sub(c, a))
        if v != 0:
            if v < 0:
                u = scale(u, -1)
            break
    return scale(u, ONE / norm_inf(u))


def _cut_near_side(p: Polygon, a: Point3, b: Point3, m: Point3, delta) -> tuple:
    u = _inward(p, a, b)
    base = add(m, scale(u, delta))
    plane = Plane.through(base, u)
    # keep the part on the far side from the shared side
    keep = 1 if plane.side(add(base, u)) > 0 else -1
    cut = cut_polygon_by_halfspace(p, plane, keep)
    if cut is None:
        raise GeometryError("cut removed the whole polygon")
    on = [c for c in cut.corners if plane.side(c) == 0]
    if len(on) != 2:
        raise GeometryError("cut does not leave a single new side")
    d = sub(b, a)
    on.sort(key=lambda c: dot(c, d))
    return cut, on


def subdivide_side(s: Surface, side, delta=None, new_id: Hashable | None = None) -> Surface:
    """Insert a polygon R between the two polygons sharing ``side``.

    The adjacency u-v becomes the path u-R-v.
    """
    a, b = (_point(x) for x in side)
    owners = [i for i, p in enumerate(s.polygons) if p.has_side(a, b)]
    if len(owners) != 2:
        raise NoSecondPolygon(f"side is shared by {len(owners)} polygon(s), need exactly two")
    before = validate(s)
    if not before.valid:
        raise InvalidSurface(before)
    i, j = owners
    P, Q = s.polygons[i], s.polygons[j]
    if new_id is None:
        new_id = f"{P.id}|{Q.id}"
    if new_id in s.ids:
        raise ValueError(f"id {new_id!r} already used")
    eps = min(safe_eps(s, a), safe_eps(s, b))
    trimmed = _side_trim_polys(s, a, b, eps)
    m = midpoint(a, b)
    with_mid = {}
    for idx in (i, j):
        p = trimmed[idx]
        orig = s.polygons[idx]
        cs = list(p.corners)
        # the side ab became the chord between a's and b's surviving new corners
        a_in = _step(a, _neighbour_other(orig, a, b), eps)
        b_in = _step(b, _neighbour_other(orig, b, a), eps)
        k = len(cs)
        for t in range(k):
            if {cs[t], cs[(t + 1) % k]} == {a_in, b_in}:
                cs.insert(t + 1, m)
                break
        else:
            raise GeometryError("trimmed side not found")
        with_mid[idx] = p.with_corners(cs)
    expect = before.adjacency.labelled_edges() - {frozenset((P.id, Q.id))}
    expect |= {frozenset((P.id, new_id)), frozenset((Q.id, new_id))}
    delta = eps / 2 if delta is None else scalar(delta)
    for _ in range(65):
        try:
            newP, xs = _cut_near_side(with_mid[i], a, b, m, delta)
            newQ, ys = _cut_near_side(with_mid[j], a, b, m, delta)
            R = Polygon([xs[0], xs[1], ys[1], ys[0]], new_id)
        except GeometryError:
            delta /= 2
            continue
        polys = list(trimmed)
        polys[i], polys[j] = newP, newQ
        polys.append(R)
        out = s.replace(polys)
        rep = validate(out)
        if rep.valid and rep.adjacency.labelled_edges() == expect:
            return out
        delta /= 2
    raise DeltaInfeasible("no admissible offset found after 64 halvings")


def _neighbour_other(p: Polygon, c: Point3, other: Point3) -> Point3:
    """The neighbour of corner c in p that is not ``other``."""
    cs = p.corners
    k = len(cs)
    i = cs.index(c)
    prev, nxt = cs[i - 1], cs[(i + 1) % k]
    return prev if nxt == other else nxt
