"""Exact intersection theory, pre-shrinkability and toric fan sections for snc surfaces."""
from .lattice import (Basis, BasisMismatchError, DivisorClass, GramForm, QuadraticIrrational,
                      combine, pair, render_class)
from .planner import (Recipe, classify_quotient, exceptional_candidates, orbifold_canonical,
                      plan_embeddings)
from .shrink import (ShrinkReport, certificate_verify, condition_i_inequalities, decide,
                     decide_rank2, search_rank_n)
from .snc import (Gluing, SncSurface, cy_check, j_squared_component, load_snc, parse_snc, rank2,
                  triple_intersection)
from .surfaces import (NamedCurve, SurfaceModel, adjunction_genus, builtin_surface,
                       candidate_negative_classes, parse_curve)
from .tables import TableEntry, load_tables
from .toric import (FanSection, StackyTriangle, SurfaceId, detect_flops, fan_to_snc, hj_resolve,
                    identify_surface, lattice_points, quotient_to_triangle, render_svg,
                    self_intersections, toric_triples, triangulate, weights_to_triangle)

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "BasisMismatchError",
    "DivisorClass",
    "FanSection",
    "Gluing",
    "GramForm",
    "NamedCurve",
    "QuadraticIrrational",
    "Recipe",
    "ShrinkReport",
    "SncSurface",
    "StackyTriangle",
    "SurfaceId",
    "SurfaceModel",
    "TableEntry",
    "adjunction_genus",
    "builtin_surface",
    "candidate_negative_classes",
    "certificate_verify",
    "classify_quotient",
    "combine",
    "condition_i_inequalities",
    "cy_check",
    "decide",
    "decide_rank2",
    "detect_flops",
    "exceptional_candidates",
    "fan_to_snc",
    "hj_resolve",
    "identify_surface",
    "j_squared_component",
    "lattice_points",
    "load_snc",
    "load_tables",
    "orbifold_canonical",
    "pair",
    "parse_curve",
    "parse_snc",
    "plan_embeddings",
    "quotient_to_triangle",
    "rank2",
    "render_class",
    "render_svg",
    "search_rank_n",
    "self_intersections",
    "toric_triples",
    "triangulate",
    "triple_intersection",
    "weights_to_triangle",
]
