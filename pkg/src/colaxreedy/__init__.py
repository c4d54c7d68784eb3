"""Exact finite computations with normal colax diagrams on locally Reedy
2-categories: latching and matching objects, the Reedy classes of icons,
factorizations, lifts, limits and colimits, and the bridge to unital
presheaves on Delta_X."""

from .base import FinSet, FinVect, make_base, weakened
from .colax import (
    ColaxDiagram,
    Icon,
    canonical_map_iz,
    colax_latching_object,
    colax_matching_object,
    compose_icons,
    constant_unit,
    identity_icon,
    truncate,
    validate_colax,
    validate_icon,
)
from .homotopy import (
    classify,
    colimit_colax,
    factor_icon,
    icons_equal,
    lift_icon,
    limit_colax,
    relative_maps,
)
from .reedy2 import (
    TwoGroupement,
    build_delta_plus,
    build_from_reedy1,
    build_PX,
    check_direct_divisibility,
    validate_simple_lr,
)
from .report import Report
from .segal import check_segal_conditions, from_presheaf, joyal_T, to_presheaf

__version__ = "0.1.0"

__all__ = [
    "ColaxDiagram", "FinSet", "FinVect", "Icon", "Report", "TwoGroupement",
    "build_PX", "build_delta_plus", "build_from_reedy1", "canonical_map_iz", "check_direct_divisibility",
    "check_segal_conditions", "classify", "colax_latching_object", "colax_matching_object", "colimit_colax",
    "compose_icons", "constant_unit", "factor_icon", "from_presheaf", "icons_equal", "identity_icon",
    "joyal_T", "lift_icon", "limit_colax", "make_base", "relative_maps", "to_presheaf", "truncate",
    "validate_colax", "validate_icon", "validate_simple_lr", "weakened",
]
