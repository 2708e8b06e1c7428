"""General-affine differential geometry of plane curves.

Computes the differential invariants of plane curves under the full affine
group (curvature k, signature sigma, invariant arc length), the right/left
moving frames and the Frenet frame, classifies and reconstructs
constant-curvature curves, and ships a CLI plus numerical verification
sweeps for every closed-form identity involved.
"""

__version__ = "0.1.0"

from .jets import Jet, GraphJet, graph_from_parametric
from .expressions import parse, eval_jet
from .affine import AffineMap, prolong, prolong_closed_form, one_param_subgroup, orbit_curve
from .invariants import (
    InvariantRecord,
    SingularKind,
    compute_S,
    regularity,
    classify_singular,
    arc_element,
    curvature,
    invariant_derivative,
    modular_T,
    invariant_record,
)
from .frames import FrameRecord, right_frame, normalize_jet, left_frame, frenet, moving_eq_residual
from .reconstruct import (
    CurvatureProfile,
    frenet_generator,
    integrate_frenet,
    reconstruct_constant,
    classify_constant,
)
from .catalog import catalog_curve, CATALOG_NAMES

__all__ = [
    "Jet",
    "GraphJet",
    "graph_from_parametric",
    "parse",
    "eval_jet",
    "AffineMap",
    "prolong",
    "prolong_closed_form",
    "one_param_subgroup",
    "orbit_curve",
    "InvariantRecord",
    "SingularKind",
    "compute_S",
    "regularity",
    "classify_singular",
    "arc_element",
    "curvature",
    "invariant_derivative",
    "modular_T",
    "invariant_record",
    "FrameRecord",
    "right_frame",
    "normalize_jet",
    "left_frame",
    "frenet",
    "moving_eq_residual",
    "CurvatureProfile",
    "frenet_generator",
    "integrate_frenet",
    "reconstruct_constant",
    "classify_constant",
    "catalog_curve",
    "CATALOG_NAMES",
]
