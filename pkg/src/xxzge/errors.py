"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation accepts."""


class CapacityError(DomainError):
    """The requested Hilbert space exceeds the dense-solver size cap."""


class DegenerateGroundSpaceError(RuntimeError):
    """The lowest eigenvalue is degenerate and no field was set to split it."""


class BranchAmbiguityError(DomainError):
    """gamma == -1 exactly, where the ferromagnetic and XY branches meet."""


class InfiniteEntanglementError(DomainError):
    """A zero maximal overlap was passed to the entanglement measure."""


class FitError(RuntimeError):
    """Polynomial least-squares design is rank deficient."""


class NoCrossingError(RuntimeError):
    """Two fitted curves do not change order inside their common range."""


class NoJumpError(RuntimeError):
    """No adjacent pair of scan rows differs by more than the threshold."""
