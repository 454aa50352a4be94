"""Facial boundary interpolation for Schur and Pick functions of two variables."""

from .catalog import catalog, membership_scan
from .cayley import (BoundaryDatum, CircleRotation, cayley_value, inverse_cayley_value,
                     map_boundary_datum, pick_from_schur, schur_from_pick)
from .config import RunConfig
from .expr import FnClass, PickExpr, evaluate, evaluate_arrays, from_dict, to_dict
from .geometry import Face, FacePoint, Point2, Space, nontangential_path, perpendicular_path
from .interp import InterpNode, InterpProblem, Mode, build_r, solve, solve_schur, solve_single_node_pick
from .julia import AngularData, angular_derivative, augment, reduce
from .limits import LimitEstimate, extrapolate, vanishing_limit
from .verify import (caratheodory_quotient, certify_c_point, directional_fit, face_report, fit_differential,
                     verify_solution)

__version__ = "0.1.0"

__all__ = [
    "AngularData", "BoundaryDatum", "CircleRotation", "Face", "FacePoint", "FnClass", "InterpNode",
    "InterpProblem", "LimitEstimate", "Mode", "PickExpr", "Point2", "RunConfig", "Space",
    "angular_derivative", "augment", "build_r", "caratheodory_quotient", "catalog", "cayley_value",
    "certify_c_point", "directional_fit", "evaluate", "evaluate_arrays", "extrapolate", "face_report", "fit_differential",
    "from_dict", "inverse_cayley_value", "map_boundary_datum", "membership_scan", "nontangential_path",
    "perpendicular_path", "pick_from_schur", "reduce", "schur_from_pick", "solve", "solve_schur",
    "solve_single_node_pick", "to_dict", "vanishing_limit", "verify_solution",
]
