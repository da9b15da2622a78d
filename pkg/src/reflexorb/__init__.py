"""Exact toolkit for reflexive polytopes, toric twisted sectors, and orbifold
Hodge numbers of anticanonical Calabi-Yau hypersurfaces."""

__version__ = "0.1.0"

from .errors import (
    HypothesisError,
    NotFullDimensionalError,
    NotReflexiveError,
    NotSimplicialError,
    VertexFileError,
)

__all__ = [
    "HypothesisError",
    "NotFullDimensionalError",
    "NotReflexiveError",
    "NotSimplicialError",
    "VertexFileError",
    "__version__",
]
