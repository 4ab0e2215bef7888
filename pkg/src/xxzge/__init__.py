"""Ground-state geometric entanglement of periodic XXZ spin chains."""

from .errors import (
    BranchAmbiguityError,
    CapacityError,
    DegenerateGroundSpaceError,
    DomainError,
    FitError,
    InfiniteEntanglementError,
    NoCrossingError,
    NoJumpError,
)
from .ge import (
    GEResult,
    SweepOptions,
    SweepTrace,
    conditional_local,
    geometric_entanglement,
    max_overlap,
    sweep_round,
)
from .spin import (
    GroundSolution,
    HamiltonianMatrix,
    ProductState,
    StateVector,
    build_xxz,
    ground_state,
    named_product,
    overlap,
    product_to_statevector,
    rotate_product_y,
)

__version__ = "0.1.0"
