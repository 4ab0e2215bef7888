"""Geometric entanglement by alternating single-site maximization.

The closest product state to ``|g>`` is the best rank-1 approximation of the
amplitude tensor. With every site but one held fixed, the overlap is
maximized by aligning that site with its conditional vector, so each local
update can only raise the overlap. One round visits sites
``1, 2, ..., N, N-1, ..., 2`` (``2N - 2`` steps).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InfiniteEntanglementError
from .spin import ProductState, StateVector, overlap


@dataclass(frozen=True)
class SweepOptions:
    max_rounds: int = 200
    tol: float = 1e-12
    restarts: int = 8
    rng_seed: int = 0
    degenerate_norm_floor: float = 1e-14

    def __post_init__(self):
        if self.max_rounds < 1 or self.restarts < 1 or not self.tol > 0:
            raise DomainError("need max_rounds >= 1, restarts >= 1 and tol > 0")


@dataclass
class SweepTrace:
    lambda_per_step: np.ndarray = field(default_factory=lambda: np.zeros(0))
    rounds_used: int = 0
    converged: bool = False


@dataclass
class GEResult:
    lambda_max: float
    e_log2: float
    closest: ProductState
    trace: SweepTrace


def sweep_schedule(n_sites: int) -> list[int]:
    """1-based site order of one round: up to N, then back down to 2."""
    return list(range(1, n_sites + 1)) + list(range(n_sites - 1, 1, -1))


def conditional_local(g: StateVector, psi: ProductState, site: int) -> np.ndarray:
    """Contract ``g`` with the conjugates of every local state except ``site``.

    ``site`` is 1-based. The returned 2-vector ``v`` is unnormalized; the best
    local state at ``site`` is ``v / |v|`` and the overlap it reaches is ``|v|``.
    """
    n = g.n_sites
    if psi.n_sites != n:
        raise DomainError(f"site counts differ: {psi.n_sites} vs {n}")
    if not 1 <= site <= n:
        raise DomainError(f"site {site} outside 1..{n}")
    return _conditional(g.tensor(), psi.locals, site - 1)


def _conditional(t: np.ndarray, locs: np.ndarray, i: int) -> np.ndarray:
    # contract from the last site down so earlier axes keep their positions
    for j in range(len(locs) - 1, -1, -1):
        if j != i:
            t = np.tensordot(t, locs[j].conj(), axes=(j, 0))
    return t


def _overlap(t: np.ndarray, locs: np.ndarray) -> complex:
    for loc in locs:
        t = np.tensordot(loc.conj(), t, axes=(0, 0))
    return complex(t)


def random_product(n_sites: int, rng: np.random.Generator) -> ProductState:
    """Each site drawn uniformly from the Bloch sphere."""
    z = rng.standard_normal((n_sites, 2)) + 1j * rng.standard_normal((n_sites, 2))
    return ProductState(z / np.linalg.norm(z, axis=1, keepdims=True))


def sweep_round(
    g: StateVector,
    psi: ProductState,
    opts: SweepOptions | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[ProductState, float, np.ndarray]:
    """One back-and-forth round of local updates.

    Returns the updated product state, ``|<psi|g>|`` after the round, and the
    overlap after each step. A conditional vector shorter than
    ``opts.degenerate_norm_floor`` has no preferred direction; that site is
    redrawn at random instead.
    """
    opts = opts or SweepOptions()
    t = g.tensor()
    locs = np.array(psi.locals)
    steps = []
    for site in sweep_schedule(g.n_sites):
        v = _conditional(t, locs, site - 1)
        norm = np.linalg.norm(v)
        if norm < opts.degenerate_norm_floor:
            if rng is None:
                rng = np.random.default_rng(opts.rng_seed)
            locs[site - 1] = random_product(1, rng).locals[0]
            steps.append(abs(_overlap(t, locs)))
        else:
            locs[site - 1] = v / norm
            steps.append(norm)
    return ProductState(locs), abs(_overlap(t, locs)), np.array(steps)


def _run_sweeps(g, psi, opts, rng):
    lam = abs(overlap(psi, g))
    steps = []
    converged = False
    rounds = 0
    while rounds < opts.max_rounds:
        psi, new, step_vals = sweep_round(g, psi, opts, rng)
        steps.append(step_vals)
        rounds += 1
        done = abs(new - lam) < opts.tol
        lam = new
        if done:
            converged = True
            break
    return psi, lam, SweepTrace(np.concatenate(steps), rounds, converged)


def max_overlap(g: StateVector, opts: SweepOptions | None = None) -> GEResult:
    """Best product-state overlap over ``opts.restarts`` seeded random starts.

    Non-convergence is not an error: the best restart is returned with
    ``trace.converged`` set accordingly. Equal overlaps keep the earliest
    restart, so results depend only on ``opts``.
    """
    opts = opts or SweepOptions()
    rng = np.random.default_rng(opts.rng_seed)
    best = None
    for _ in range(opts.restarts):
        start = random_product(g.n_sites, rng)
        psi, lam, trace = _run_sweeps(g, start, opts, rng)
        if best is None or lam > best[1]:
            best = (psi, lam, trace)
    psi, lam, trace = best
    lam = min(lam, 1.0)
    return GEResult(lam, geometric_entanglement(lam), psi, trace)


def geometric_entanglement(lambda_max: float) -> float:
    """``-log2(lambda_max**2)``."""
    if lambda_max <= 0:
        raise InfiniteEntanglementError("zero overlap with every product state")
    if lambda_max > 1 + 1e-12:
        raise DomainError(f"overlap {lambda_max} exceeds 1")
    # + 0.0 turns -0.0 into 0.0 for product states
    return -2.0 * math.log2(min(lambda_max, 1.0)) + 0.0
