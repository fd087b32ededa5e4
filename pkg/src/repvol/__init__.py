"""Volumes of representations of manifold groups into Isom+(H^n), n = 2, 3."""

from .developing import PlacementPolicy, develop, place_vertices
from .hyperbolic import ExtendedPoint, Isometry, act, classify, fixed_points
from .simplex import GeodesicSimplex, VolumeValue, cross_ratio, max_simplex_volume, simplex_volume
from .special import bloch_wigner, lobachevsky
from .triangulation import (
    PeripheralData,
    TransitionCocycle,
    Triangulation,
    barycentric_subdivide,
    parse,
    serialize,
    validate_cocycle,
)
from .volume import VolumeReport, compute_volume, invariance_test, milnor_wood_report, subdivision_test

__version__ = "0.1.0"

__all__ = [
    "ExtendedPoint", "GeodesicSimplex", "Isometry", "PeripheralData", "PlacementPolicy",
    "TransitionCocycle", "Triangulation", "VolumeReport", "VolumeValue", "act",
    "barycentric_subdivide", "bloch_wigner", "classify", "compute_volume", "cross_ratio",
    "develop", "fixed_points", "invariance_test", "lobachevsky", "max_simplex_volume",
    "milnor_wood_report", "parse", "place_vertices", "serialize", "simplex_volume",
    "subdivision_test", "validate_cocycle",
]
