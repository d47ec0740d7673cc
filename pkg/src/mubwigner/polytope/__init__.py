"""Exact rational polytopes: LP, vertex and facet enumeration, equality tests."""
from .dd import cone_extreme_rays
from .io import h_from_json, h_to_json, v_from_json, v_to_json
from .lp import LinearProgram, check_certificate, lp_solve
from .ops import (
    BACKENDS,
    PolytopeDiff,
    RedundancyReport,
    affine_hull,
    facet_enumeration,
    h_contains,
    h_equal,
    hull_membership,
    implies,
    is_bounded,
    polytope_equal,
    remove_redundant,
    vertex_enumeration,
)
from .rational import Rational, format_rational, parse_rational
from .types import ConvexCombination, HPolytope, LpResult, SeparatingHyperplane, VPolytope

__all__ = [
    "BACKENDS",
    "ConvexCombination",
    "HPolytope",
    "LinearProgram",
    "LpResult",
    "PolytopeDiff",
    "Rational",
    "RedundancyReport",
    "SeparatingHyperplane",
    "VPolytope",
    "affine_hull",
    "check_certificate",
    "cone_extreme_rays",
    "facet_enumeration",
    "format_rational",
    "h_contains",
    "h_equal",
    "h_from_json",
    "h_to_json",
    "hull_membership",
    "implies",
    "is_bounded",
    "lp_solve",
    "parse_rational",
    "polytope_equal",
    "remove_redundant",
    "v_from_json",
    "v_to_json",
    "vertex_enumeration",
]
