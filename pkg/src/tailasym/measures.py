"""Population-level measures beyond a single-index evaluation.

Curves over index grids, the numeric boundary-limit estimator built on
diagonal second differences, the difference-based measure beta, the
copula-vs-survival sup-distance, truncated-corner correlation curves, and the
pairwise matrix extension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _kernels as kernels
from .copulas import CopulaModel
from .errors import DataError, DomainError
from .extreal import log_ratio
from .sampling import PairedSample

__all__ = [
    "TailCurve",
    "WeightFunction",
    "WEIGHTS",
    "alpha_curve",
    "alpha_zero_numeric",
    "LimitDiagnostics",
    "beta",
    "sigma3",
    "Sigma3Result",
    "sigma3_empirical",
    "rho_k",
    "rho_k_curve",
    "alpha_matrix",
]


@dataclass(frozen=True)
class TailCurve:
    """A measure evaluated on a strictly increasing index grid in (0, 0.5]."""

    u: np.ndarray
    values: np.ndarray
    kind: str  # "alpha" | "beta" | "rho_k"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "values", v)
        if u.ndim != 1 or u.shape != v.shape:
            raise DomainError("TailCurve: grid and values must be equal-length 1-d arrays")
        if np.any((u <= 0.0) | (u > 0.5)) or np.any(np.diff(u) <= 0.0):
            raise DomainError("TailCurve: grid must be strictly increasing within (0, 0.5]")


@dataclass(frozen=True)
class WeightFunction:
    id: str
    fn: Callable[[np.ndarray], np.ndarray]


WEIGHTS: dict[str, WeightFunction] = {
    "x": WeightFunction("x", lambda x: x),
    "x2": WeightFunction("x2", lambda x: x**2),
    "x4": WeightFunction("x4", lambda x: x**4),
}


def alpha_curve(model: CopulaModel, u_grid) -> TailCurve:
    """Population measure evaluated pointwise over the grid."""
    u = np.asarray(u_grid, dtype=float)
    return TailCurve(u, model.alpha(u), "alpha", meta={"model": model.spec_string()})


@dataclass(frozen=True)
class LimitDiagnostics:
    """Trace of the numeric boundary-limit estimator along the u sequence."""

    u_sequence: np.ndarray
    estimates: np.ndarray
    converged: bool
    value: float


def _second_diff(fn, t: float, h: float) -> float:
    """Central second difference of a scalar function, clamped at zero.

    The diagonals are convex near the corners, so a tiny negative value can
    only be rounding noise.
    """
    val = (fn(t + h) - 2.0 * fn(t) + fn(t - h)) / (h * h)
    return max(val, 0.0)


def alpha_zero_numeric(
    model: CopulaModel,
    u_sequence,
    h_factor: float = 0.1,
    converge_tol: float = 1e-3,
) -> LimitDiagnostics:
    """Boundary limit estimated from diagonal curvature along a sequence.

    At each u the second derivative of t -> C(t, t) is estimated at u and at
    1 - u by central second differences with step h = u * h_factor, and the
    extended log-ratio of the two curvatures is recorded. The run is flagged
    converged when the last two iterates agree within ``converge_tol``
    (infinite iterates of the same sign count as agreeing).
    """
    us = np.asarray(u_sequence, dtype=float)
    if us.ndim != 1 or us.size < 2:
        raise DomainError("u_sequence must contain at least two points")
    if np.any(np.diff(us) >= 0.0):
        raise DomainError("u_sequence must be strictly decreasing")
    if np.any((us <= 0.0) | (us > 0.01)):
        raise DomainError("u_sequence must lie in (0, 0.01]")
    diag = lambda t: model.cdf(t, t)
    estimates = np.empty(us.size)
    for i, u in enumerate(us):
        h = u * h_factor
        if u - h < 0.0 or 1.0 - u + h > 1.0:
            raise DomainError(f"difference stencil leaves [0, 1] at u={u:g}")
        c_low = _second_diff(diag, u, h)
        c_high = _second_diff(diag, 1.0 - u, h)
        estimates[i] = log_ratio(c_high, c_low)
    last, prev = estimates[-1], estimates[-2]
    if math.isinf(last) or math.isinf(prev):
        converged = last == prev
    else:
        converged = abs(last - prev) <= converge_tol
    return LimitDiagnostics(us, estimates, bool(converged), float(last))


def beta(model: CopulaModel, u: float, kappa: float = 1.0) -> float:
    """Scaled difference of corner probabilities, (upper - lower) / u^kappa.

    With kappa = 1 the value lies in [-1, 1].
    """
    if kappa < 1.0:
        raise DomainError(f"beta: kappa must be >= 1, got {kappa}")
    u_arr = np.asarray(u, dtype=float)
    if np.any((u_arr <= 0.0) | (u_arr > 0.5)):
        raise DomainError("beta: u must lie in (0, 0.5]")
    out = (model.survival_diagonal(u_arr) - model.cdf(u_arr, u_arr)) / u_arr**kappa
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class Sigma3Result:
    value: float
    resolution: int
    spacing: float


def sigma3(model: CopulaModel, resolution: int = 400) -> Sigma3Result:
    """Sup-distance between the copula and its reflected survival copula.

    The supremum of |C(a, b) - (a + b - 1 + C(1-a, 1-b))| is approximated by
    a lattice search over a uniform (resolution+1)^2 grid on the unit square.
    """
    if resolution < 2:
        raise DomainError(f"resolution must be >= 2, got {resolution}")
    grid = np.linspace(0.0, 1.0, resolution + 1)
    best = 0.0
    for a in grid:  # row-wise to bound memory for quadrature-backed families
        row = np.full(grid.size, a)
        d = model.cdf(row, grid) - (a + grid - 1.0 + model.cdf(1.0 - row, 1.0 - grid))
        best = max(best, float(np.max(np.abs(d))))
    return Sigma3Result(best, resolution, 1.0 / resolution)


def sigma3_empirical(sample: PairedSample, resolution: int = 200) -> Sigma3Result:
    """Lattice sup-distance with the empirical copula in place of C."""
    if sample.scale not in ("uniform", "pseudo"):
        raise DomainError("sigma3_empirical: needs a uniform or pseudo scale sample")
    if resolution < 2:
        raise DomainError(f"resolution must be >= 2, got {resolution}")
    x1, x2 = sample.x1, sample.x2
    n = sample.n
    order = np.argsort(x1, kind="stable")
    x1s = x1[order]
    x2s = x2[order]
    grid = np.linspace(0.0, 1.0, resolution + 1)
    best = 0.0
    for a in grid:
        m_lo = np.searchsorted(x1s, a, side="right")
        lo = np.searchsorted(np.sort(x2s[:m_lo]), grid, side="right") / n
        # reflected term: empirical P(U1 > 1-a, U2 > 1-b) = a + b - 1 + C_n(1-a, 1-b)
        m_hi = np.searchsorted(x1s, 1.0 - a, side="right")
        hi = np.searchsorted(np.sort(x2s[:m_hi]), 1.0 - grid, side="right") / n
        d = lo - (a + grid - 1.0 + hi)
        best = max(best, float(np.max(np.abs(d))))
    return Sigma3Result(best, resolution, 1.0 / resolution)


def rho_k(sample: PairedSample, u: float, weight: WeightFunction | str = "x") -> float | None:
    """Difference of weighted corner correlations, lower minus upper.

    Within the lower corner {both coordinates < u} the coordinates are mapped
    through a(1 - x/u); within the upper corner {both > 1-u} through
    a(1 - (1-x)/u); Pearson correlations are differenced. Returns None when a
    corner holds fewer than 3 points or a transformed coordinate has zero
    variance.
    """
    if isinstance(weight, str):
        try:
            weight = WEIGHTS[weight]
        except KeyError:
            raise DomainError(f"unknown weight {weight!r}; known: {sorted(WEIGHTS)}") from None
    if sample.scale not in ("uniform", "pseudo"):
        raise DomainError("rho_k: needs a uniform or pseudo scale sample")
    if not 0.0 < u <= 0.5:
        raise DomainError("rho_k: u must lie in (0, 0.5]")
    x1, x2 = sample.x1, sample.x2

    in_lower = (x1 < u) & (x2 < u)
    in_upper = (x1 > 1.0 - u) & (x2 > 1.0 - u)

    def corr(a: np.ndarray, b: np.ndarray) -> float | None:
        if a.size < 3:
            return None
        sa = a - a.mean()
        sb = b - b.mean()
        va = float(sa @ sa)
        vb = float(sb @ sb)
        if va == 0.0 or vb == 0.0:
            return None
        return float((sa @ sb) / math.sqrt(va * vb))

    rho_lower = corr(weight.fn(1.0 - x1[in_lower] / u), weight.fn(1.0 - x2[in_lower] / u))
    rho_upper = corr(
        weight.fn(1.0 - (1.0 - x1[in_upper]) / u),
        weight.fn(1.0 - (1.0 - x2[in_upper]) / u),
    )
    if rho_lower is None or rho_upper is None:
        return None
    return rho_lower - rho_upper


def rho_k_curve(
    sample: PairedSample,
    u_grid,
    weight: WeightFunction | str = "x",
    negate: bool = False,
) -> TailCurve:
    """rho_k over a grid; undefined points are reported as NaN.

    ``negate`` flips the sign so that the curve reads like the log-ratio
    measure (positive when the upper corner is the stronger one).
    """
    if isinstance(weight, str):
        try:
            weight = WEIGHTS[weight]
        except KeyError:
            raise DomainError(f"unknown weight {weight!r}; known: {sorted(WEIGHTS)}") from None
    us = np.asarray(u_grid, dtype=float)
    vals = np.empty(us.size)
    for i, u in enumerate(us):
        r = rho_k(sample, float(u), weight)
        vals[i] = math.nan if r is None else (-r if negate else r)
    return TailCurve(us, vals, "rho_k", meta={"weight": weight.id, "negate": negate})


def alpha_matrix(columns, u: float) -> np.ndarray:
    """Pairwise estimated measure for d uniform-scale series.

    ``columns`` is an (n, d) array or a sequence of equal-length 1-d arrays.
    Entry (i, j) applies the corner-count estimator to the pair (column i,
    column j); diagonal entries pair a column with itself.
    """
    if not 0.0 < u <= 0.5:
        raise DomainError("alpha_matrix: u must lie in (0, 0.5]")
    if isinstance(columns, np.ndarray) and columns.ndim == 2:
        cols = [np.ascontiguousarray(columns[:, j], dtype=float) for j in range(columns.shape[1])]
    else:
        cols = [np.ascontiguousarray(np.asarray(c, dtype=float)) for c in columns]
    d = len(cols)
    if d < 1:
        raise DataError("alpha_matrix: need at least one column")
    n = cols[0].size
    for c in cols:
        if c.ndim != 1 or c.size != n:
            raise DataError("alpha_matrix: columns must share one length")
        if np.any((c <= 0.0) | (c >= 1.0)):
            raise DomainError("alpha_matrix: columns must be uniform scale in (0, 1)")
    out = np.empty((d, d))
    level = np.array([u])
    for i in range(d):
        for j in range(d):
            lo, up = kernels.corner_counts(cols[i], cols[j], level)
            out[i, j] = log_ratio(up[0] / n, lo[0] / n)
    return out
