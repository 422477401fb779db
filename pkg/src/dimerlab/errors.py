"""Exception hierarchy shared by all dimerlab modules."""


class DimerError(Exception):
    """Base class for all dimerlab errors."""


class DomainError(DimerError, ValueError):
    """Input outside the mathematically admissible domain."""


class PoleError(DomainError):
    """Coordinate singularity at a pole of the sphere."""


class SeparatrixError(DomainError):
    """Quantity undefined exactly on the separatrix (period diverges)."""


class TurningPointError(DomainError):
    """Pendulum angle outside the libration interval."""


class NumericalError(DimerError, RuntimeError):
    """A numerical procedure failed to reach its target accuracy."""


class ConvergenceError(NumericalError):
    """An iterative algorithm exceeded its iteration cap."""
