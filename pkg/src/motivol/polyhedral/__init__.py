"""Exact polyhedral geometry: H-polyhedra, chi', lattice polygons, lower hulls."""
from .lattice import LatticePolygon, convex_hull, lattice_counts, lattice_length
from .polyhedron import (
    Cell,
    CellComplex,
    QPolyhedron,
    chi_prime,
    dimension,
    faces,
    is_bounded,
    relint_chi,
)
from .subdivision import (
    LiftedPoint,
    RegularSubdivision,
    SubdivisionCell,
    SubdivisionEdge,
    regular_subdivision,
)

__all__ = [
    "Cell",
    "CellComplex",
    "LatticePolygon",
    "LiftedPoint",
    "QPolyhedron",
    "RegularSubdivision",
    "SubdivisionCell",
    "SubdivisionEdge",
    "chi_prime",
    "convex_hull",
    "dimension",
    "faces",
    "is_bounded",
    "lattice_counts",
    "lattice_length",
    "regular_subdivision",
    "relint_chi",
]
