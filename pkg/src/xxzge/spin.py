"""Periodic XXZ chains on qubits: Hamiltonians, ground states, product states.

Basis convention: index ``b`` of a ``2**N`` vector encodes ``|q1 q2 ... qN>``
with ``q1`` the most significant bit, so ``|0101>`` is index 5 for ``N = 4``.
``|0>`` is spin up (``Z = +1``) and ``|1>`` spin down (``Z = -1``).

The Hamiltonian is

    H = sum_{i=1..N} (X_i X_{i+1} + Y_i Y_{i+1} + gamma Z_i Z_{i+1}) + b_z sum_i Z_i

with site ``N + 1`` identified with site 1. For ``N = 2`` the periodic sum
visits the single bond twice, so every coupling is doubled. This is kept on
purpose; do not halve it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
import scipy.linalg

from .errors import CapacityError, DegenerateGroundSpaceError, DomainError

MAX_DIM = 4096
NORM_TOL = 1e-12
DEGENERACY_TOL = 1e-9

ProductKind = Literal["all_ones", "plus_minus", "neel"]


def _n_sites_for_dim(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 2 or (1 << n) != dim:
        raise DomainError(f"length {dim} is not a power of two >= 2")
    return n


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized amplitudes over the ``2**n_sites`` computational basis."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        _n_sites_for_dim(amps.size)
        norm = np.vdot(amps, amps).real
        if abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"state is not normalized: <psi|psi> = {norm!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_sites(self) -> int:
        return _n_sites_for_dim(self.amplitudes.size)

    @classmethod
    def basis(cls, bits: str) -> StateVector:
        """Computational basis state from a bit string such as ``"0101"``."""
        amps = np.zeros(2 ** len(bits), dtype=complex)
        amps[int(bits, 2)] = 1.0
        return cls(amps)

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis of length 2 per site, site 1 first."""
        return self.amplitudes.reshape((2,) * self.n_sites)


@dataclass(frozen=True, eq=False)
class ProductState:
    """``N`` single-qubit unit vectors, stored as an ``(N, 2)`` complex array."""

    locals: np.ndarray

    def __post_init__(self):
        loc = np.array(self.locals, dtype=complex)
        if loc.ndim != 2 or loc.shape[1] != 2 or loc.shape[0] < 1:
            raise DomainError(f"locals must have shape (N, 2), got {loc.shape}")
        norms = np.sum(np.abs(loc) ** 2, axis=1)
        if np.max(np.abs(norms - 1.0)) > NORM_TOL:
            raise DomainError("every local state must have unit norm")
        loc.setflags(write=False)
        object.__setattr__(self, "locals", loc)

    @property
    def n_sites(self) -> int:
        return self.locals.shape[0]


@dataclass(frozen=True, eq=False)
class HamiltonianMatrix:
    n_sites: int
    gamma: float
    b_z: float
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class GroundSolution:
    energy: float
    state: StateVector
    gap: float


def site_bits(n_sites: int) -> np.ndarray:
    """Bit value of every site for every basis index, shape ``(N, 2**N)``."""
    idx = np.arange(2**n_sites)
    shifts = n_sites - 1 - np.arange(n_sites)
    return (idx[None, :] >> shifts[:, None]) & 1


def shift_permutation(n_sites: int) -> np.ndarray:
    """Index map of the cyclic one-site shift ``|q1 q2 .. qN> -> |qN q1 .. q(N-1)>``.

    ``perm[b]`` is the image of basis state ``b``.
    """
    idx = np.arange(2**n_sites)
    last = idx & 1
    return (idx >> 1) | (last << (n_sites - 1))


def build_xxz(n_sites: int, gamma: float, b_z: float = 0.0) -> HamiltonianMatrix:
    """Dense periodic XXZ Hamiltonian with an optional uniform Z field.

    Raises
    ------
    DomainError
        If ``n_sites < 2`` or ``b_z < 0``.
    CapacityError
        If ``2**n_sites`` exceeds the dense cap of 4096.
    """
    if n_sites < 2:
        raise DomainError(f"need at least 2 sites, got {n_sites}")
    if b_z < 0:
        raise DomainError(f"b_z must be >= 0, got {b_z}")
    dim = 2**n_sites
    if dim > MAX_DIM:
        raise CapacityError(f"2**{n_sites} = {dim} exceeds the dense cap {MAX_DIM}")

    bits = site_bits(n_sites)
    z = 1 - 2 * bits
    idx = np.arange(dim)
    mat = np.zeros((dim, dim))
    diag = b_z * z.sum(axis=0).astype(float)
    for i in range(n_sites):
        j = (i + 1) % n_sites
        diag += gamma * z[i] * z[j]
        # XX + YY maps |01> <-> |10> on the bond with amplitude 2
        flip = bits[i] != bits[j]
        mask = (1 << (n_sites - 1 - i)) | (1 << (n_sites - 1 - j))
        np.add.at(mat, (idx[flip] ^ mask, idx[flip]), 2.0)
    mat[idx, idx] += diag
    return HamiltonianMatrix(n_sites, float(gamma), float(b_z), mat.astype(complex))


def fix_global_phase(amplitudes: np.ndarray) -> np.ndarray:
    """Rotate so the largest-magnitude amplitude is real and positive.

    Ties within 1e-12 go to the lowest basis index.
    """
    mags = np.abs(amplitudes)
    lead = int(np.flatnonzero(mags >= mags.max() - 1e-12)[0])
    return amplitudes * (np.conj(amplitudes[lead]) / mags[lead])


def ground_state(h: HamiltonianMatrix) -> GroundSolution:
    """Lowest eigenpair of ``h`` by dense Hermitian diagonalization.

    A degenerate lowest level (splitting below 1e-9) at ``b_z == 0`` is an
    error: pick ``b_z > 0`` to select a ground state deterministically.
    """
    mat = h.matrix
    # the XXZ matrix elements are real, so the cheaper real solver applies
    if not np.any(mat.imag):
        mat = mat.real
    vals, vecs = scipy.linalg.eigh(mat, subset_by_index=[0, 1])
    gap = float(vals[1] - vals[0])
    if gap < DEGENERACY_TOL and h.b_z == 0:
        raise DegenerateGroundSpaceError(
            f"ground level of N={h.n_sites}, gamma={h.gamma} is degenerate "
            f"(splitting {gap:.3g}); set b_z > 0 to lift it"
        )
    vec = vecs[:, 0].astype(complex)
    vec /= np.linalg.norm(vec)
    state = StateVector(fix_global_phase(vec))
    energy = float(np.vdot(state.amplitudes, h.matrix @ state.amplitudes).real)
    return GroundSolution(energy, state, max(gap, 0.0))


def overlap(psi: ProductState, g: StateVector) -> complex:
    """``<psi|g>`` contracted site by site."""
    if psi.n_sites != g.n_sites:
        raise DomainError(f"site counts differ: {psi.n_sites} vs {g.n_sites}")
    t = g.tensor()
    for loc in psi.locals:
        t = np.tensordot(loc.conj(), t, axes=(0, 0))
    return complex(t)


def product_to_statevector(psi: ProductState) -> StateVector:
    amps = np.ones(1, dtype=complex)
    for loc in psi.locals:
        amps = np.kron(amps, loc)
    return StateVector(amps / np.linalg.norm(amps))


def named_product(kind: ProductKind, n_sites: int) -> ProductState:
    """``|11..1>``, ``|+-+-..>`` or ``|0101..>`` on an even number of sites."""
    if n_sites < 2 or n_sites % 2:
        raise DomainError(f"n_sites must be even and >= 2, got {n_sites}")
    s = 1 / np.sqrt(2)
    pairs = {
        "all_ones": ([0, 1], [0, 1]),
        "plus_minus": ([s, s], [s, -s]),
        "neel": ([1, 0], [0, 1]),
    }
    if kind not in pairs:
        raise DomainError(f"unknown product kind {kind!r}")
    even, odd = pairs[kind]
    return ProductState(np.array([even, odd] * (n_sites // 2), dtype=complex))


def ry(beta: float) -> np.ndarray:
    """``exp(-i beta Y / 2)`` as a real 2x2 rotation."""
    c, s = np.cos(beta / 2), np.sin(beta / 2)
    return np.array([[c, -s], [s, c]])


def rotate_product_y(psi: ProductState, beta: float) -> ProductState:
    """Apply the same Y rotation by ``beta`` to every site."""
    return ProductState(psi.locals @ ry(beta).T)


def energy_expectation(h: HamiltonianMatrix, state: StateVector) -> float:
    a = state.amplitudes
    return float(np.vdot(a, h.matrix @ a).real)


def diagonal_readout(g: StateVector, beta: float, basis_index: int) -> float:
    """Probability of basis state ``b`` after undoing a uniform Y rotation.

    Forms ``rho = U^dag |g><g| U`` with ``U = kron_j exp(-i beta Y_j / 2)`` and
    returns ``<b|rho|b>``, which equals ``|<U b|g>|**2``.
    """
    u = np.ones((1, 1))
    for _ in range(g.n_sites):
        u = np.kron(u, ry(beta))
    a = g.amplitudes
    rho = u.conj().T @ np.outer(a, a.conj()) @ u
    return float(rho[basis_index, basis_index].real)
