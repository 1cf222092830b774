"""Determinants of commutator grids for commuting operator tuples.

Symbolic identities in the free *-algebra, graded truncations of weighted
shifts and related models, and numerical checks of the determinant
operator, its trace and the associated inequalities.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402,F401
    CapabilityError, CommdetError, GradingError, ParameterError, ParseError, ShapeError,
    StructureError, TruncationError, ValidationError, WindowError,
)
from .linalg import DEFAULT_TOL, ToleranceConfig  # noqa: E402,F401

__all__ = [
    "CapabilityError", "CommdetError", "GradingError", "ParameterError", "ParseError", "ShapeError",
    "StructureError", "TruncationError", "ValidationError", "WindowError",
    "DEFAULT_TOL", "ToleranceConfig", "__version__",
]
