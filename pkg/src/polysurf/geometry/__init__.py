"""Exact rational geometry: predicates, polygons, contacts, cuts."""
from .contact import Contact, ContactClass, classify_contact, plane_line_segments
from .ops import (
    MapsToInfinity,
    apply_projective,
    circle_direction,
    cut_polygon_by_halfspace,
    homography_2d,
    transform_point,
)
from .primitives import (
    Degenerate,
    GeometryError,
    NotCoplanar,
    Plane,
    Point3,
    Polygon,
    SelfIntersecting,
    is_strictly_convex,
    orient3d,
    pt,
    supporting_plane,
)
from .scalar import Scalar, fmt, scalar

__all__ = [
    "Contact",
    "ContactClass",
    "Degenerate",
    "GeometryError",
    "MapsToInfinity",
    "NotCoplanar",
    "Plane",
    "Point3",
    "Polygon",
    "Scalar",
    "SelfIntersecting",
    "apply_projective",
    "circle_direction",
    "classify_contact",
    "cut_polygon_by_halfspace",
    "fmt",
    "homography_2d",
    "is_strictly_convex",
    "orient3d",
    "plane_line_segments",
    "pt",
    "scalar",
    "supporting_plane",
    "transform_point",
]
