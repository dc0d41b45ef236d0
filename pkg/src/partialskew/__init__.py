"""Exact computations with partial actions, skew rings, Steinberg algebras
and Leavitt path algebras."""

from .errors import (
    ConditionViolated, IllFormed, InstanceMismatch, NeedsField, NonAbelian, NotAnIdeal,
    NotGraded, NotInvariant, OracleBudget, PartialSkewError, StarInjectivityFails,
)
from .scalars import GF, QQ, ZZ, FiniteSpace, FnElem, field_from_name

__version__ = "0.1.0"

__all__ = [
    "ConditionViolated", "IllFormed", "InstanceMismatch", "NeedsField", "NonAbelian",
    "NotAnIdeal", "NotGraded", "NotInvariant", "OracleBudget", "PartialSkewError",
    "StarInjectivityFails", "GF", "QQ", "ZZ", "FiniteSpace", "FnElem", "field_from_name",
]
