"""Exact tools for Weierstrass K3 fibrations and their stable-pair compactifications."""

from .checker import ComponentKind, ComponentSpec, FiberEntry, GluingEdge, SurfaceGraph, Violation
from .fibers import FiberType, WeierstrassData, classify_all, classify_place, discriminant
from .git import MarkedTriple, hm_oracle, marked_stability
from .poly import INFINITE, BinaryForm, Place, place_decompose
from .strata import enumerate_strata, surface_type_catalog
from .walls import enumerate_walls

__version__ = "0.1.0"

__all__ = [
    "INFINITE",
    "BinaryForm",
    "ComponentKind",
    "ComponentSpec",
    "FiberEntry",
    "FiberType",
    "GluingEdge",
    "MarkedTriple",
    "Place",
    "SurfaceGraph",
    "Violation",
    "WeierstrassData",
    "classify_all",
    "classify_place",
    "discriminant",
    "enumerate_strata",
    "enumerate_walls",
    "hm_oracle",
    "marked_stability",
    "place_decompose",
    "surface_type_catalog",
    "__version__",
]
