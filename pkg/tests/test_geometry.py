import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import orient_oracle, random_pair, to_polygon
from polysurf.constructions import raw_surface
from polysurf.geometry import (
    Contact,
    Degenerate,
    MapsToInfinity,
    NotCoplanar,
    Plane,
    Point3,
    Polygon,
    SelfIntersecting,
    apply_projective,
    circle_direction,
    classify_contact,
    cut_polygon_by_halfspace,
    is_strictly_convex,
    orient3d,
    scalar,
    supporting_plane,
)
from polysurf.geometry.primitives import orient2d

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
points = st.tuples(rationals, rationals, rationals).map(lambda t: Point3.of(*t))


def square(x0=0, y0=0, z=0, pid="s", size=1):
    return Polygon([(x0, y0, z), (x0 + size, y0, z), (x0 + size, y0 + size, z), (x0, y0 + size, z)], pid)


# --- scalars and predicates -------------------------------------------------------


def test_scalar_parsing():
    assert scalar("3/6") == F(1, 2)
    assert scalar("-7") == -7
    assert scalar("1.25") == F(5, 4)
    with pytest.raises(ValueError):
        scalar(" ")
    with pytest.raises(ValueError):
        scalar("1/0")
    with pytest.raises(TypeError):
        scalar(object())


def test_orient3d_examples():
    o, x, y, z = (0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)
    assert orient3d(*(Point3.of(*p) for p in (o, x, y, (1, 1, 0)))) == 0
    assert orient3d(*(Point3.of(*p) for p in (o, x, y, z))) == 1


@given(points, points, points, points)
def test_orient3d_matches_cofactor_oracle(p, q, r, s):
    assert orient3d(p, q, r, s) == orient_oracle(p, q, r, s)


@given(points, points, points, points)
def test_orient3d_antisymmetric(p, q, r, s):
    assert orient3d(p, q, r, s) == -orient3d(q, p, r, s)


# --- planes and polygons ----------------------------------------------------------


def test_supporting_plane_examples():
    assert supporting_plane(square()) == Plane(0, 0, 1, 0)
    top = raw_surface().polygon("P_top")
    assert supporting_plane(top) == Plane(0, 0, 1, -10)


def test_plane_canonical_form():
    p = Plane.from_coefficients(F(-2, 3), 0, F(4, 3), 2)
    assert (p.a, p.b, p.c, p.d) == (1, 0, -2, -3)
    with pytest.raises(Degenerate):
        Plane.from_coefficients(0, 0, 0, 1)


@given(st.integers(0, 3), st.booleans())
def test_plane_independent_of_cycle_start_and_direction(shift, reverse):
    cs = [(0, 0, 1), (2, 0, 3), (3, 2, 6), (0, 3, 4)]
    cs = cs[shift:] + cs[:shift]
    if reverse:
        cs = cs[::-1]
    assert supporting_plane(Polygon(cs)) == supporting_plane(Polygon([(0, 0, 1), (2, 0, 3), (3, 2, 6), (0, 3, 4)]))


def test_supporting_plane_commutes_with_rigid_motion():
    # rotation by the rational angle with cos 3/5, sin 4/5 about z, then a shift
    T = [[F(3, 5), F(-4, 5), 0, 1], [F(4, 5), F(3, 5), 0, -2], [0, 0, 1, 7], [0, 0, 0, 1]]
    poly = Polygon([(0, 0, 0), (2, 0, 1), (2, 2, 3), (0, 2, 2)])
    moved = apply_projective(T, poly)
    plane = supporting_plane(moved)
    assert all(plane.side(c) == 0 for c in moved.corners)


def test_polygon_rejects_bad_input():
    with pytest.raises(Degenerate):
        Polygon([(0, 0, 0), (1, 0, 0)])
    with pytest.raises(Degenerate):
        Polygon([(0, 0, 0), (1, 0, 0), (1, 0, 0), (0, 1, 0)])
    with pytest.raises(Degenerate):
        Polygon([(0, 0, 0), (1, 0, 0), (2, 0, 0)])
    with pytest.raises(NotCoplanar):
        Polygon([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 1)])
    with pytest.raises(SelfIntersecting):
        Polygon([(0, 0, 0), (1, 1, 0), (1, 0, 0), (0, 1, 0)])


def test_strict_convexity_examples():
    assert is_strictly_convex(square())
    assert not is_strictly_convex(Polygon([(0, 0, 0), (F(1, 2), 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)]))
    top = Polygon([(-6, 0, 10), (-5, -1, 10), (5, -1, 10), (6, 0, 10), (5, 1, 10), (-5, 1, 10)])
    assert is_strictly_convex(top)
    assert not is_strictly_convex(Polygon([(0, 0, 0), (2, 0, 0), (1, 1, 0), (2, 2, 0), (0, 2, 0)]))


# --- contacts -------------------------------------------------------------------


def test_contact_examples():
    got = classify_contact(square(0, pid="a"), square(1, pid="b"))
    assert got.tag is Contact.SHARED_SIDE
    assert set(got.witness) == {Point3.of(1, 0, 0), Point3.of(1, 1, 0)}

    assert classify_contact(square(0), square(1, 1)).tag is Contact.SINGLE_CORNER
    assert classify_contact(square(0), square(3)).tag is Contact.DISJOINT
    assert classify_contact(square(0), square(F(1, 2))).tag is Contact.VIOLATION
    # corner of one in the middle of the other's side
    assert classify_contact(square(0), square(1, F(1, 2))).tag is Contact.VIOLATION

    raw = raw_surface()
    got = classify_contact(raw.polygon("P_vert1"), raw.polygon("P_vert2"))
    assert got.tag is Contact.SHARED_SIDE
    assert set(got.witness) == {Point3.of(-6, 0, 10), Point3.of(-6, 0, -10)}
    assert classify_contact(raw.polygon("P_diag1"), raw.polygon("P_top")).tag is Contact.VIOLATION


def test_contact_perpendicular_pairs():
    base = square(0, 0, 0, "a", 2)
    wall = Polygon([(2, 0, 0), (2, 2, 0), (2, 2, 1), (2, 0, 1)], "w")
    assert classify_contact(base, wall).tag is Contact.SHARED_SIDE
    through = Polygon([(1, -1, -1), (1, 3, -1), (1, 3, 1), (1, -1, 1)], "t")
    assert classify_contact(base, through).tag is Contact.VIOLATION
    # wall standing on part of a side
    part = Polygon([(2, 0, 0), (2, 1, 0), (2, 1, 1), (2, 0, 1)], "p")
    assert classify_contact(base, part).tag is Contact.VIOLATION


def test_contact_nonconvex():
    ell = Polygon([(0, 0, 0), (2, 0, 0), (2, 1, 0), (1, 1, 0), (1, 2, 0), (0, 2, 0)], "L")
    # a square sitting in the notch touches two sides: not a single side
    notch = Polygon([(1, 1, 0), (2, 1, 0), (2, 2, 0), (1, 2, 0)], "n")
    assert classify_contact(ell, notch).tag is Contact.VIOLATION
    # a vertical wall across both arms of a U meets it in two pieces
    u = Polygon([(0, 0, 0), (3, 0, 0), (3, 2, 0), (2, 2, 0), (2, 1, 0), (1, 1, 0), (1, 2, 0), (0, 2, 0)], "U")
    wall = Polygon([(-1, F(3, 2), -1), (4, F(3, 2), -1), (4, F(3, 2), 1), (-1, F(3, 2), 1)], "w")
    got = classify_contact(u, wall)
    assert got.tag is Contact.VIOLATION and len(got.witness) == 2
    side = Polygon([(2, 0, 0), (2, 1, 0), (3, 1, 0), (3, 0, 0)], "r")
    assert classify_contact(ell, side).tag is Contact.SHARED_SIDE


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_contact_symmetric_and_witness_on_both_planes(seed):
    p, q, _ = random_pair(random.Random(seed))
    P, Q = to_polygon(p, "p"), to_polygon(q, "q")
    a, b = classify_contact(P, Q), classify_contact(Q, P)
    assert a.tag == b.tag
    if a.tag is Contact.DISJOINT or P.plane == Q.plane:
        return
    w = a.witness
    pts = [w] if isinstance(w, Point3) else list(w)
    for x in pts:
        assert P.plane.side(x) == 0 and Q.plane.side(x) == 0


# --- cuts, projective maps, circle points ---------------------------------------------


def test_cut_examples():
    sq = square()
    assert cut_polygon_by_halfspace(sq, Plane.from_coefficients(0, 0, 1, -5), keep=-1) is sq
    half = cut_polygon_by_halfspace(sq, Plane.from_coefficients(2, 0, 0, -1), keep=-1)
    assert set(half.corners) == {Point3.of(0, 0, 0), Point3.of(F(1, 2), 0, 0), Point3.of(F(1, 2), 1, 0), Point3.of(0, 1, 0)}
    assert cut_polygon_by_halfspace(sq, Plane.from_coefficients(1, 0, 0, 1), keep=-1) is None
    # a plane touching only one side leaves nothing 2D on its far half
    assert cut_polygon_by_halfspace(sq, Plane.from_coefficients(1, 0, 0, 0), keep=-1) is None
    with pytest.raises(ValueError):
        cut_polygon_by_halfspace(sq, Plane.from_coefficients(1, 0, 0, 0), keep=0)


def test_cut_keeps_corner_on_plane():
    tri = Polygon([(0, 0, 0), (2, 0, 0), (1, 1, 0)])
    cut = cut_polygon_by_halfspace(tri, Plane.from_coefficients(0, 1, 0, -1), keep=-1)
    assert cut.corners == tri.corners


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32), rationals, rationals, rationals, rationals, st.sampled_from([-1, 1]))
def test_cut_output_in_halfspace_and_convex(seed, a, b, c, d, keep):
    if a == b == c == 0:
        a = F(1)
    p, _, _ = random_pair(random.Random(seed))
    poly = to_polygon(p, "p")
    h = Plane.from_coefficients(a, b, c, d)
    out = cut_polygon_by_halfspace(poly, h, keep)
    if out is None:
        return
    assert all(h.side(x) * keep >= 0 for x in out.corners)
    assert is_strictly_convex(out)


def test_projective_examples():
    poly = Polygon([(0, 0, 0), (1, 0, 0), (1, 1, 1)])
    ident = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert apply_projective(ident, poly).corners == poly.corners
    double = [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 1]]
    assert apply_projective(double, poly).corners == tuple(Point3.of(*(2 * v for v in c)) for c in poly.corners)
    to_inf = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]]
    with pytest.raises(MapsToInfinity):
        apply_projective(to_inf, poly)


def test_projective_cone_to_prism_keeps_faces_planar():
    # the map (x, y, z) -> (x, y, z) / (1 - z) sends the cone over the unit
    # square with apex (0, 0, 1) towards a prism; faces must stay planar
    T = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, -1, 1]]
    face = Polygon([(1, 0, 0), (0, 1, 0), (0, F(1, 2), F(1, 2)), (F(1, 2), 0, F(1, 2))])
    img = apply_projective(T, face)
    a, b, c, d = img.corners
    assert orient3d(a, b, c, d) == 0


def test_circle_direction_examples():
    assert circle_direction(0) == (1, 0)
    assert circle_direction(1) == (0, 1)
    assert circle_direction(F(1, 2)) == (F(3, 5), F(4, 5))


@given(rationals)
def test_circle_direction_on_unit_circle(t):
    x, y = circle_direction(t)
    assert x * x + y * y == 1


def test_orient2d_sign():
    assert orient2d((0, 0), (1, 0), (0, 1)) == 1
    assert orient2d((0, 0), (1, 0), (2, 0)) == 0
