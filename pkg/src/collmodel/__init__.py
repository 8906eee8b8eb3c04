"""Qubit collision models for non-Markovian open-system dynamics."""

from .errors import (
    CollisionModelError,
    DimensionError,
    DomainError,
    IntegrationError,
    InvertibilityError,
    ShapeError,
    SingularityError,
)

__version__ = "0.1.0"
