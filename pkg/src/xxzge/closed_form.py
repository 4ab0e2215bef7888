"""Exact results for the periodic 4-site XXZ chain.

For ``gamma < -1`` the (field-selected) ground state is ``|1111>``. For
``gamma > -1`` the ground state lives in the two-dimensional space spanned by

    phi1 = (|0101> + |1010>) / sqrt(2)
    phi2 = (|1100> + |0011> + |1001> + |0110>) / 2

where the Hamiltonian acts as ``-4 [[gamma, -sqrt(2)], [-sqrt(2), 0]]``.
``gamma == -1`` is rejected wherever the two regimes give different answers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import BranchAmbiguityError, DomainError
from .spin import StateVector

SQRT2 = math.sqrt(2.0)

Branch = Literal["ferro", "xy"]


@dataclass(frozen=True)
class AlphaAngle:
    alpha: float
    gamma: float

    @property
    def cos(self) -> float:
        return math.cos(self.alpha)

    @property
    def sin(self) -> float:
        return math.sin(self.alpha)


@dataclass(frozen=True)
class OverlapTriple:
    lambda1: float
    lambda2: float
    lambda3: float

    def squares(self) -> tuple[float, float, float]:
        return (self.lambda1**2, self.lambda2**2, self.lambda3**2)


def _branch(gamma: float, branch: Branch | None) -> Branch:
    if branch is not None:
        if branch not in ("ferro", "xy"):
            raise DomainError(f"unknown branch {branch!r}")
        return branch
    if gamma == -1:
        raise BranchAmbiguityError("gamma = -1 is the branch point; pass branch=")
    return "ferro" if gamma < -1 else "xy"


def effective_hamiltonian(gamma: float) -> np.ndarray:
    """The 2x2 block of H in the (phi1, phi2) basis."""
    return -4.0 * np.array([[gamma, -SQRT2], [-SQRT2, 0.0]])


def eg_closed(gamma: float, branch: Branch | None = None) -> float:
    """Ground energy at zero field.

    ``branch`` selects the regime explicitly; it is required at ``gamma = -1``,
    where both branches equal -4.
    """
    if _branch(gamma, branch) == "ferro":
        return 4.0 * gamma
    return -2.0 * gamma - 2.0 * math.sqrt(gamma * gamma + 8.0)


def alpha_of_gamma(gamma: float) -> AlphaAngle:
    """Mixing angle in (-pi/2, 0) with ``tan(2 alpha) = -2 sqrt(2) / gamma``.

    The atan2 branch picks the lowest eigenvector of the effective 2x2 block;
    plain atan would land on the wrong one for ``gamma < 0``.
    """
    if not gamma > -1:
        raise DomainError(f"alpha is defined for gamma > -1, got {gamma}")
    return AlphaAngle(-math.atan2(2.0 * SQRT2, gamma) / 2.0, float(gamma))


def phi_basis() -> tuple[np.ndarray, np.ndarray]:
    phi1 = np.zeros(16)
    phi1[[0b0101, 0b1010]] = 1 / SQRT2
    phi2 = np.zeros(16)
    phi2[[0b1100, 0b0011, 0b1001, 0b0110]] = 0.5
    return phi1, phi2


def ground_state_closed(gamma: float, branch: Branch | None = None) -> StateVector:
    if _branch(gamma, branch) == "ferro":
        return StateVector.basis("1111")
    a = alpha_of_gamma(gamma)
    phi1, phi2 = phi_basis()
    return StateVector(a.cos * phi1 + a.sin * phi2)


def overlaps_closed(gamma: float, branch: Branch | None = None) -> OverlapTriple:
    """Overlaps of the ground state with ``|1111>``, ``|+-+->`` and ``|0101>``."""
    if _branch(gamma, branch) == "ferro":
        return OverlapTriple(1.0, 0.25, 0.0)
    a = alpha_of_gamma(gamma)
    return OverlapTriple(
        0.0,
        SQRT2 / 4.0 * a.cos - 0.5 * a.sin,
        a.cos / SQRT2,
    )
