"""Point-pushing pseudo-Anosov maps from signed Gauss codes: induced tracks,
exact incidence matrices, certified dilatation enclosures and closed-form bounds."""

from __future__ import annotations

from .bounds import algebraic_lower_bounds, dilatation_bounds, least_dilatation_bounds, power_curve_bounds
from .curve import CurveDiagram, SurfaceSig, load_curve, make_diagram, parse_curve, surface_and_filling
from .families import closed_form_power, fixed_family, winding_curve, winding_family
from .incidence import IncidenceMatrix, incidence_matrix, pass_matrix
from .pretrack import build_pretrack, classify_regions, reduced_to_full
from .spectral import is_primitive, pf_enclosure

__version__ = "0.1.0"

__all__ = [
    "CurveDiagram",
    "IncidenceMatrix",
    "SurfaceSig",
    "algebraic_lower_bounds",
    "build_pretrack",
    "classify_regions",
    "closed_form_power",
    "dilatation_bounds",
    "fixed_family",
    "incidence_matrix",
    "is_primitive",
    "least_dilatation_bounds",
    "load_curve",
    "make_diagram",
    "parse_curve",
    "pass_matrix",
    "pf_enclosure",
    "power_curve_bounds",
    "reduced_to_full",
    "surface_and_filling",
    "winding_curve",
    "winding_family",
]
