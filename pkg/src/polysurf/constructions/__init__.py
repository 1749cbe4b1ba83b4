"""Surface constructions; each one verifies its output before returning."""
from .base import ConstructionFailed, ConstructionResult, Stats, finish
from .comb import comb_polygons, realize_comb
from .cylinder import TooFewEdges, profile, realize_subdivision_cylinder
from .density import density_family, density_surface
from .hypercube import hypercube_polygons, realize_hypercube
from .k35 import CoordinateDerivationFailed, k35_certificates, realize_k35
from .k44 import clipped_surface, k44_target, raw_surface, realize_k44
from .planar import NotPlanar, planar_flat_surface, realize_planar_flat

__all__ = [
    "ConstructionFailed",
    "ConstructionResult",
    "CoordinateDerivationFailed",
    "NotPlanar",
    "Stats",
    "TooFewEdges",
    "clipped_surface",
    "comb_polygons",
    "density_family",
    "density_surface",
    "finish",
    "hypercube_polygons",
    "k35_certificates",
    "k44_target",
    "profile",
    "planar_flat_surface",
    "raw_surface",
    "realize_comb",
    "realize_hypercube",
    "realize_k35",
    "realize_k44",
    "realize_planar_flat",
    "realize_subdivision_cylinder",
]
