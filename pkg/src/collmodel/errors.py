"""Exception types raised by the numerical routines."""


class CollisionModelError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(CollisionModelError):
    """A requested operator would exceed the configured size cap."""


class ShapeError(CollisionModelError, ValueError):
    """Operand shapes are inconsistent."""


class DomainError(CollisionModelError, ValueError):
    """Input lies outside the domain where the operation is defined."""


class InvertibilityError(CollisionModelError):
    """A map is singular or too ill-conditioned to invert.

    The estimated 2-norm condition number is kept in ``condition``.
    """

    def __init__(self, message, condition=float("inf")):
        super().__init__(message)
        self.condition = condition


class SingularityError(DomainError):
    """Parameter transformation evaluated at a singular point."""


class IntegrationError(CollisionModelError):
    """Time stepping drifted beyond tolerance; a smaller step is needed."""
