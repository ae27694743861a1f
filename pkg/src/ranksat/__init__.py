"""Saturating linear sets, rank covering radii, and their mechanical checks."""

from .gf import Field, field_create
from .linalg import System, system_create
from .linset import Point, is_h_scattered, is_scattered, linear_set, weight
from .rankcov import (
    covering_radius,
    code_from_system,
    is_rank_saturating,
    known_value,
    lower_bound,
    saturates_within,
    saturating_index,
    upper_bound,
)

__all__ = [
    "Field", "field_create", "System", "system_create",
    "Point", "linear_set", "weight", "is_scattered", "is_h_scattered",
    "saturating_index", "is_rank_saturating", "saturates_within",
    "covering_radius", "code_from_system",
    "lower_bound", "upper_bound", "known_value",
]
__version__ = "0.1.0"
