"""Parameter scans over gamma and beta, plus the transition-finding analysis.

A gamma scan tabulates, per anisotropy value, the ground energy, the squared
overlaps with the three candidate product states ``|11..1>``, ``|+-+-..>``,
``|0101..>``, the solver's best squared overlap and the geometric
entanglement. The jump at the first-order point shows up in ``e_log2``;
the Kosterlitz-Thouless point is where the ``|+-..>`` and ``|01..>`` curves
cross.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy.optimize import bisect

from .errors import DomainError, FitError, NoCrossingError, NoJumpError
from .ge import SweepOptions, max_overlap
from .spin import (
    build_xxz,
    ground_state,
    named_product,
    overlap,
    rotate_product_y,
)

DEFAULT_FIELD = 1e-3
COLUMNS = (
    "gamma",
    "e_g",
    "lambda1_sq",
    "lambda2_sq",
    "lambda3_sq",
    "lambda_max_sq",
    "e_log2",
)


class ScanRow(NamedTuple):
    gamma: float
    e_g: float
    lambda1_sq: float
    lambda2_sq: float
    lambda3_sq: float
    lambda_max_sq: float
    e_log2: float


@dataclass(frozen=True)
class ScanTable:
    rows: tuple[ScanRow, ...]

    def __post_init__(self):
        g = [r.gamma for r in self.rows]
        if any(b <= a for a, b in zip(g, g[1:])):
            raise DomainError("scan rows must be strictly increasing in gamma")

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows])

    def __len__(self):
        return len(self.rows)


class BetaPoint(NamedTuple):
    beta: float
    lambda_sq: float


@dataclass(frozen=True)
class BetaScan:
    gamma: float
    points: tuple[BetaPoint, ...]

    def argmax(self) -> BetaPoint:
        return max(self.points, key=lambda p: p.lambda_sq)


@dataclass(frozen=True)
class DecayModel:
    """Multiplicative attenuation of the ``|+-..>`` and ``|01..>`` signals."""

    alpha2: float = 1.0
    alpha3: float = 1.0

    def __post_init__(self):
        if not (0 < self.alpha2 <= 1 and 0 < self.alpha3 <= 1):
            raise DomainError("decay factors must lie in (0, 1]")


@dataclass(frozen=True)
class PolyFit:
    degree: int
    coefficients: np.ndarray  # ascending powers
    rss: float

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x, self.coefficients)


class Crossing(NamedTuple):
    location: float
    n_crossings: int

    @property
    def multiple(self) -> bool:
        return self.n_crossings > 1


def field_for(gamma: float) -> float:
    """Zeeman tie-break used by the scans: on only in the ferromagnetic regime."""
    return DEFAULT_FIELD if gamma < -1 else 0.0


def scan_row(gamma: float, n_sites: int, opts: SweepOptions) -> ScanRow:
    if gamma == -1:
        raise DomainError("gamma = -1 is the branch point and cannot be scanned")
    gs = ground_state(build_xxz(n_sites, gamma, field_for(gamma)))
    cands = [
        abs(overlap(named_product(k, n_sites), gs.state)) ** 2
        for k in ("all_ones", "plus_minus", "neel")
    ]
    ge = max_overlap(gs.state, opts)
    return ScanRow(gamma, gs.energy, *cands, ge.lambda_max**2, ge.e_log2)


def gamma_scan(
    grid: Iterable[float], n_sites: int = 4, opts: SweepOptions | None = None
) -> ScanTable:
    """Ground-state overlaps and entanglement over a sorted gamma grid."""
    grid = [float(g) for g in grid]
    if not grid:
        raise DomainError("empty gamma grid")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("gamma grid must be strictly increasing")
    if -1.0 in grid:
        raise DomainError("gamma grid contains -1, the branch point")
    if n_sites % 2:
        raise DomainError(f"n_sites must be even, got {n_sites}")
    opts = opts or SweepOptions()
    return ScanTable(tuple(scan_row(g, n_sites, opts) for g in grid))


def default_grid(
    gamma_min: float = -2.0, gamma_max: float = 3.0, step: float = 0.05
) -> tuple[np.ndarray, bool]:
    """Uniform grid with any point at -1 replaced by the pair ``-1 -+ step/2``.

    Returns the grid and whether the offset was applied.
    """
    if not step > 0:
        raise DomainError("grid step must be positive")
    if gamma_max < gamma_min:
        raise DomainError("gamma_max < gamma_min")
    n = int(math.floor((gamma_max - gamma_min) / step + 1e-9)) + 1
    # rounding keeps values like -0.95 free of representation noise
    grid = np.round(gamma_min + step * np.arange(n), 12)
    hit = np.isclose(grid, -1.0, rtol=0, atol=1e-12)
    if not hit.any():
        return grid, False
    kept = grid[~hit]
    grid = np.sort(np.concatenate([kept, [-1 - step / 2, -1 + step / 2]]))
    return np.round(grid, 12), True


def beta_scan(gamma: float, beta_grid: Sequence[float], n_sites: int = 4) -> BetaScan:
    """Squared overlap of the ground state with ``U_y(beta)|0101..>``."""
    if len(beta_grid) == 0:
        raise DomainError("empty beta grid")
    if gamma == -1:
        raise DomainError("gamma = -1 is the branch point")
    gs = ground_state(build_xxz(n_sites, gamma, field_for(gamma)))
    neel = named_product("neel", n_sites)
    pts = tuple(
        BetaPoint(float(b), abs(overlap(rotate_product_y(neel, b), gs.state)) ** 2)
        for b in beta_grid
    )
    return BetaScan(float(gamma), pts)


def _scale(table: ScanTable, f2: float, f3: float) -> ScanTable:
    return ScanTable(
        tuple(
            r._replace(lambda2_sq=r.lambda2_sq * f2, lambda3_sq=r.lambda3_sq * f3)
            for r in table.rows
        )
    )


def apply_decay(table: ScanTable, model: DecayModel) -> ScanTable:
    """Attenuate the ``lambda2_sq`` and ``lambda3_sq`` columns; others untouched."""
    return _scale(table, model.alpha2, model.alpha3)


def rescale(table: ScanTable, model: DecayModel) -> ScanTable:
    """Undo :func:`apply_decay`."""
    return _scale(table, 1 / model.alpha2, 1 / model.alpha3)


def fit_polynomial(x, y, degree: int) -> PolyFit:
    """Least-squares polynomial fit of the given degree.

    Raises :class:`FitError` when there are fewer distinct abscissae than
    coefficients.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if degree < 1:
        raise DomainError("degree must be >= 1")
    if x.shape != y.shape or x.ndim != 1:
        raise DomainError("x and y must be 1-d arrays of equal length")
    if np.unique(x).size < degree + 1:
        raise FitError(
            f"{np.unique(x).size} distinct points cannot fix a degree-{degree} fit"
        )
    vander = np.polynomial.polynomial.polyvander(x, degree)
    coef, *_ = np.linalg.lstsq(vander, y, rcond=None)
    rss = float(np.sum((vander @ coef - y) ** 2))
    return PolyFit(degree, coef, rss)


def detect_crossing(curve_a, curve_b, degree: int = 3, samples: int = 2000) -> Crossing:
    """Where the polynomial fits of two ``(x, y)`` curves intersect.

    Sign changes of the fitted difference are located on a uniform sample of
    the common x range and refined by bisection. With several, the one
    nearest the middle of the range is returned and ``n_crossings`` reports
    how many were found.
    """
    xa, ya = np.asarray(curve_a, dtype=float).T
    xb, yb = np.asarray(curve_b, dtype=float).T
    lo, hi = max(xa.min(), xb.min()), min(xa.max(), xb.max())
    if not hi > lo:
        raise NoCrossingError("curves have no overlapping x range")
    fa = fit_polynomial(xa, ya, degree)
    fb = fit_polynomial(xb, yb, degree)

    def diff(x):
        return float(fa(x) - fb(x))

    xs = np.linspace(lo, hi, samples + 1)
    d = fa(xs) - fb(xs)
    roots = []
    for i in range(samples):
        if d[i] == 0:
            roots.append(float(xs[i]))
        elif d[i] * d[i + 1] < 0:
            roots.append(bisect(diff, xs[i], xs[i + 1], xtol=1e-14))
    if d[-1] == 0:
        roots.append(float(xs[-1]))
    if not roots:
        raise NoCrossingError(f"fitted curves do not cross on [{lo}, {hi}]")
    mid = (lo + hi) / 2
    return Crossing(min(roots, key=lambda r: abs(r - mid)), len(roots))


def crossing_from_table(
    table: ScanTable, window: tuple[float, float] = (0.5, 1.5), degree: int = 3
) -> Crossing:
    """Crossing of the ``lambda2_sq`` and ``lambda3_sq`` columns inside ``window``."""
    g = table.column("gamma")
    sel = (g >= window[0] - 1e-12) & (g <= window[1] + 1e-12)
    if sel.sum() < degree + 1:
        raise NoCrossingError(
            f"only {int(sel.sum())} scan points in {window}; need {degree + 1}"
        )
    a = np.column_stack([g[sel], table.column("lambda2_sq")[sel]])
    b = np.column_stack([g[sel], table.column("lambda3_sq")[sel]])
    return detect_crossing(a, b, degree)


def detect_jump(table: ScanTable, threshold: float = 0.5) -> float:
    """Midpoint of the first adjacent row pair whose ``e_log2`` differs by more
    than ``threshold``."""
    if not threshold > 0:
        raise DomainError("threshold must be positive")
    if len(table) < 2:
        raise DomainError("need at least two rows")
    g = table.column("gamma")
    e = table.column("e_log2")
    big = np.flatnonzero(np.abs(np.diff(e)) > threshold)
    if big.size == 0:
        raise NoJumpError(f"no entanglement step exceeds {threshold}")
    i = int(big[0])
    return float((g[i] + g[i + 1]) / 2)

