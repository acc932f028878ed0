"""Exact tropical complete-intersection curves on the standard tropical plane."""

from .curve import TropicalCurveGraph, components_and_betti, count_cells, curve_genus, intersection_curve
from .dual_complex import check_balancing, domain_of_monomial, hypersurface_complex, primitive_vector, ray_intersections
from .errors import *  # noqa: F401,F403
from .quarter_planes import QuarterPlane, marked_subcomplex, restrict_to_quarter_plane, staircase_functions
from .skeleton import Genus3Class, Multigraph, classify_genus3, is_lollipop, multigraph_genus, skeletonize
from .subdivision import Verdict, cayley_subdivision, cell_volume, certify_smooth_ci, regular_subdivision
from .trop_core import (
    TropPoly,
    argmax_terms,
    evaluate,
    homogenize,
    newton_polytope,
    normalize_to_standard_plane,
    slice_restrict,
    standard_plane,
)

__version__ = "0.1.0"
