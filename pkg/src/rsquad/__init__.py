"""Two-point Riemann-Stieltjes quadrature: rule, ground-truth oracle, error bounds, certificates."""

from .catalog import RealMap, build_map, make_catalog_entry, profile_for
from .variation import VariationEstimate, oscillation, p_variation
from .oracle import IntegralResult, rs_integral
from .rules import NodeTriple, composite_rule, preset_nodes, remainder, two_point_eval
from .bounds import BoundValue, evaluate_bound
from .certify import BoundCertificate, Certifier, certify_one, sharpness_suite, sweep

__version__ = "0.1.0"

__all__ = [
    "RealMap", "build_map", "make_catalog_entry", "profile_for",
    "VariationEstimate", "oscillation", "p_variation",
    "IntegralResult", "rs_integral",
    "NodeTriple", "composite_rule", "preset_nodes", "remainder", "two_point_eval",
    "BoundValue", "evaluate_bound",
    "BoundCertificate", "Certifier", "certify_one", "sharpness_suite", "sweep",
]
