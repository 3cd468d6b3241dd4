"""Exact certification of dimension facts for A-hypergeometric systems."""

from .errors import (
    HypothesisError,
    InvalidInstanceError,
    OrbitBoundaryError,
    RankDeficientError,
    ZeroColumnError,
)
from .hypergeo import (
    characteristic_ideal,
    family_check,
    fiber_degree,
    face_dimension_audit,
    homogenization_reduction,
    verify,
    verify_holonomicity,
    verify_parameter_theorem,
)
from .intlin import IntegerMatrix
from .toric import homogenize, toric_ideal

__version__ = "0.1.0"

__all__ = [
    "HypothesisError",
    "IntegerMatrix",
    "InvalidInstanceError",
    "OrbitBoundaryError",
    "RankDeficientError",
    "ZeroColumnError",
    "characteristic_ideal",
    "face_dimension_audit",
    "family_check",
    "fiber_degree",
    "homogenization_reduction",
    "homogenize",
    "toric_ideal",
    "verify",
    "verify_holonomicity",
    "verify_parameter_theorem",
]
