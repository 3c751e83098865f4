"""Exact computations with Chevalley Lie algebras, extremal elements and their geometries."""

__version__ = "0.1.0"

from .scalars import Field, field_make, mat_rank_nullspace, parse_field
from .roots import RootSystem, cartan_pairing, root_string_p, root_system, structure_constants
from .algebra import BracketTable, algebra_make, chevalley_exp, jacobi_violations
from .extremal import (
    E_0, E_1, E_2, E_MINUS1, E_MINUS2, ExtremalCertificate, classify_pair, exp_map, is_extremal, is_sandwich,
)
from .form import extremal_gram, form_radical_quotient, ideal_closure, is_simple, long_root_span_check
from .ratio import product_ratio
from .geometry import axiom_report, build_geometry, enumerate_points_brute, enumerate_points_orbit
from .models import point_to_flag, point_to_isotropic_line, sl_model, so_model

__all__ = [
    "Field", "field_make", "mat_rank_nullspace", "parse_field",
    "RootSystem", "cartan_pairing", "root_string_p", "root_system", "structure_constants",
    "BracketTable", "algebra_make", "chevalley_exp", "jacobi_violations",
    "E_0", "E_1", "E_2", "E_MINUS1", "E_MINUS2", "ExtremalCertificate", "classify_pair", "exp_map",
    "is_extremal", "is_sandwich",
    "extremal_gram", "form_radical_quotient", "ideal_closure", "is_simple", "long_root_span_check",
    "product_ratio",
    "axiom_report", "build_geometry", "enumerate_points_brute", "enumerate_points_orbit",
    "point_to_flag", "point_to_isotropic_line", "sl_model", "so_model",
]
