"""Sample analogues of the tail-asymmetry measure and inference on them.

Two estimators are provided: the corner-count log-ratio on known-margin
uniforms, and its rank-based variant on raw data through the within-sample
pseudo-observation transform rank/(n+1). Inference covers the asymptotic
pointwise interval, the Bonferroni simultaneous band, an m-point chi-squared
test, and basic-bootstrap intervals with within-resample re-ranking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from scipy.special import ndtri
from scipy.stats import chi2 as _chi2_dist

from . import _kernels as kernels
from .errors import DataError, DomainError, NumericalError
from .extreal import log_ratio
from .sampling import PairedSample, SeedSpec, make_rng

__all__ = [
    "TailCounts",
    "IntervalBand",
    "TestReport",
    "tail_counts",
    "tail_counts_grid",
    "alpha_hat",
    "alpha_hat_curve",
    "sigma_hat",
    "ci_pointwise",
    "ci_band_bonferroni",
    "jump_set",
    "u_min_rule",
    "pseudo_observations",
    "alpha_star",
    "ci_bootstrap",
    "chi2_test",
]


@dataclass(frozen=True)
class TailCounts:
    """Corner membership at index u: counts and their fractions of n."""

    u: float
    n: int
    n_lower: int
    n_upper: int

    @property
    def t_lower(self) -> float:
        return self.n_lower / self.n

    @property
    def t_upper(self) -> float:
        return self.n_upper / self.n


@dataclass(frozen=True)
class IntervalBand:
    """Per-u point estimates with lower/upper bounds and provenance."""

    u: np.ndarray
    estimate: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    method: str  # "asymptotic" | "bonferroni" | "bootstrap"
    level: float
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("u", "estimate", "lower", "upper"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        ok = np.isfinite(self.lower) & np.isfinite(self.estimate) & np.isfinite(self.upper)
        if np.any(self.lower[ok] > self.estimate[ok]) or np.any(self.estimate[ok] > self.upper[ok]):
            raise NumericalError("IntervalBand: bounds must bracket the estimate")


@dataclass(frozen=True)
class TestReport:
    """Quadratic-form test outcome against a chi-squared reference."""

    statistic: float
    dof: int
    p_value: float
    u_points: np.ndarray
    null_values: np.ndarray
    nominal_size: float
    reject: bool

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "dof": self.dof,
            "p_value": self.p_value,
            "u_points": [float(x) for x in self.u_points],
            "null_values": [float(x) for x in self.null_values],
            "nominal_size": self.nominal_size,
            "reject": self.reject,
            "reference": f"chi2({self.dof}), upper tail",
        }


def _require_counting_scale(sample: PairedSample, op: str) -> None:
    if sample.scale not in ("uniform", "pseudo"):
        raise DomainError(
            f"{op}: needs a uniform or pseudo scale sample, got scale={sample.scale!r} "
            "(transform raw data with pseudo_observations or known margins first)"
        )


def _check_u(u) -> np.ndarray:
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if np.any((u <= 0.0) | (u > 0.5)):
        raise DomainError("u must lie in (0, 0.5]")
    return u


def tail_counts_grid(sample: PairedSample, us) -> tuple[np.ndarray, np.ndarray]:
    """Corner counts at each u; returns (lower, upper) int64 arrays."""
    _require_counting_scale(sample, "tail_counts")
    us = _check_u(us)
    return kernels.corner_counts(sample.x1, sample.x2, us)


def tail_counts(sample: PairedSample, u: float) -> TailCounts:
    lower, upper = tail_counts_grid(sample, [u])
    return TailCounts(u=float(u), n=sample.n, n_lower=int(lower[0]), n_upper=int(upper[0]))


def alpha_hat_curve(sample: PairedSample, us) -> np.ndarray:
    """Estimated measure log(T_U/T_L) at each u; extended reals."""
    lower, upper = tail_counts_grid(sample, us)
    n = sample.n
    return np.array([log_ratio(up / n, lo / n) for lo, up in zip(lower, upper)])


def alpha_hat(sample: PairedSample, u: float) -> float:
    return float(alpha_hat_curve(sample, [u])[0])


def sigma_hat_curve(sample: PairedSample, us) -> np.ndarray:
    """sqrt((T_L + T_U)/(T_L T_U)) at each u; +inf when either count is zero."""
    lower, upper = tail_counts_grid(sample, us)
    n = sample.n
    out = np.empty(len(lower))
    for i, (lo, up) in enumerate(zip(lower, upper)):
        if lo == 0 or up == 0:
            out[i] = math.inf
        else:
            tl, tu = lo / n, up / n
            out[i] = math.sqrt((tl + tu) / (tl * tu))
    return out


def sigma_hat(sample: PairedSample, u: float) -> float:
    return float(sigma_hat_curve(sample, [u])[0])


def _z_quantile(tail_prob: float) -> float:
    """Upper-tail standard normal quantile z with P(Z >= z) = tail_prob."""
    return float(-ndtri(tail_prob))


def ci_pointwise(sample: PairedSample, u: float, level: float) -> IntervalBand:
    """Asymptotic interval alpha_hat +- z_{p/2} sigma_hat / sqrt(n), p = 1 - level."""
    if not 0.0 < level < 1.0:
        raise DomainError(f"level must be in (0, 1), got {level}")
    p = 1.0 - level
    z = _z_quantile(p / 2.0)
    est = alpha_hat(sample, u)
    sig = sigma_hat(sample, u)
    half = z * sig / math.sqrt(sample.n)
    if math.isinf(sig) or math.isinf(est):
        lo, hi = -math.inf, math.inf
    else:
        lo, hi = est - half, est + half
    return IntervalBand(
        u=[u], estimate=[est], lower=[lo], upper=[hi],
        method="asymptotic", level=level,
        meta={"n": sample.n, "z": z},
    )


def jump_set(sample: PairedSample) -> np.ndarray:
    """The sorted, deduplicated jump set of the corner-count step functions.

    Each observation contributes min(max(x1, x2), max(1-x1, 1-x2)); values
    outside (0, 0.5] never move a corner count and are dropped.
    """
    _require_counting_scale(sample, "jump_set")
    enter_lower = np.maximum(sample.x1, sample.x2)
    enter_upper = np.maximum(1.0 - sample.x1, 1.0 - sample.x2)
    us = np.unique(np.minimum(enter_lower, enter_upper))
    return us[(us > 0.0) & (us <= 0.5)]


def ci_band_bonferroni(sample: PairedSample, level: float) -> IntervalBand:
    """Simultaneous band: the pointwise interval with p replaced by p/n.

    The estimator and its scale are step functions, so the band is evaluated
    exactly at the jump set. The error budget is split across the n
    observations (not the number of distinct jumps), which is conservative.
    """
    if not 0.0 < level < 1.0:
        raise DomainError(f"level must be in (0, 1), got {level}")
    us = jump_set(sample)
    if us.size == 0:
        raise DataError("ci_band_bonferroni: no observation enters either corner")
    p = 1.0 - level
    z = _z_quantile(p / (2.0 * sample.n))
    est = alpha_hat_curve(sample, us)
    sig = sigma_hat_curve(sample, us)
    half = z * sig / math.sqrt(sample.n)
    bad = ~np.isfinite(sig) | ~np.isfinite(est)
    lo = np.where(bad, -math.inf, est - half)
    hi = np.where(bad, math.inf, est + half)
    return IntervalBand(
        u=us, estimate=est, lower=lo, upper=hi,
        method="bonferroni", level=level,
        meta={"n": sample.n, "z": z, "u_min": float(us[0]), "u_max": float(us[-1])},
    )


def u_min_rule(samples, threshold: int = 30) -> float | None:
    """Smallest u at which every corner count of every sample reaches threshold.

    ``samples`` is a PairedSample or an iterable of them. Returns None when
    some count never reaches the threshold inside (0, 0.5].
    """
    if isinstance(samples, PairedSample):
        samples = [samples]
    if threshold < 1:
        raise DomainError(f"threshold must be >= 1, got {threshold}")
    candidates = []
    for s in samples:
        _require_counting_scale(s, "u_min_rule")
        if s.n < threshold:
            return None
        for enter in (np.maximum(s.x1, s.x2), np.maximum(1.0 - s.x1, 1.0 - s.x2)):
            k = np.sort(enter)[threshold - 1]  # first u with count >= threshold
            candidates.append(k)
    u_min = max(candidates)
    return float(u_min) if 0.0 < u_min <= 0.5 else None


def pseudo_observations(sample: PairedSample) -> PairedSample:
    """Rank transform rank/(n+1), ties sharing the maximal count."""
    if sample.scale == "pseudo":
        return sample
    inv = 1.0 / (sample.n + 1.0)
    return PairedSample(
        kernels.rank_counts(sample.x1) * inv,
        kernels.rank_counts(sample.x2) * inv,
        "pseudo",
    )


def alpha_star(sample: PairedSample, u: float) -> float:
    """Rank-based estimator: the corner-count log-ratio on pseudo-observations."""
    if sample.scale != "raw":
        raise DomainError(f"alpha_star: needs a raw-scale sample, got {sample.scale!r}")
    return alpha_hat(pseudo_observations(sample), u)


def alpha_star_curve(sample: PairedSample, us) -> np.ndarray:
    if sample.scale != "raw":
        raise DomainError(f"alpha_star: needs a raw-scale sample, got {sample.scale!r}")
    return alpha_hat_curve(pseudo_observations(sample), us)


def _quantile_type1(sorted_values: np.ndarray, prob: float) -> float:
    """Inverse-empirical-CDF (type-1) quantile of pre-sorted values."""
    m = sorted_values.size
    idx = max(int(math.ceil(prob * m)), 1) - 1
    return float(sorted_values[min(idx, m - 1)])


def ci_bootstrap(
    sample: PairedSample,
    u_grid,
    level: float,
    resamples: int,
    seed: SeedSpec,
) -> IntervalBand:
    """Basic-bootstrap band for the rank-based estimator.

    Each resample redraws n rows with replacement and recomputes the
    pseudo-observations within the resample before counting. Non-finite
    replicates (an empty corner in a resample) are dropped from the quantile
    computation and counted per u in ``meta['nonfinite']``; if every
    replicate is non-finite at some u the interval there is unbounded and
    flagged.
    """
    if sample.scale != "raw":
        raise DomainError(f"ci_bootstrap: needs a raw-scale sample, got {sample.scale!r}")
    if resamples < 1:
        raise DomainError(f"resamples must be >= 1, got {resamples}")
    if not 0.0 < level < 1.0:
        raise DomainError(f"level must be in (0, 1), got {level}")
    us = _check_u(u_grid)
    n = sample.n
    est = alpha_star_curve(sample, us)

    rng = make_rng(seed)
    reps = np.empty((resamples, us.size))
    for b in range(resamples):
        idx = rng.integers(0, n, size=n)
        lo_c, up_c = kernels.pseudo_corner_counts(sample.x1[idx], sample.x2[idx], us)
        reps[b] = [log_ratio(up / n, lo / n) for lo, up in zip(lo_c, up_c)]

    p = 1.0 - level
    lower = np.empty(us.size)
    upper = np.empty(us.size)
    nonfinite = np.zeros(us.size, dtype=int)
    unbounded = np.zeros(us.size, dtype=bool)
    for j in range(us.size):
        col = reps[:, j]
        finite = np.sort(col[np.isfinite(col)])
        nonfinite[j] = resamples - finite.size
        if finite.size == 0 or not math.isfinite(est[j]):
            lower[j], upper[j] = -math.inf, math.inf
            unbounded[j] = True
            continue
        q_lo = _quantile_type1(finite, p / 2.0)
        q_hi = _quantile_type1(finite, 1.0 - p / 2.0)
        lower[j] = 2.0 * est[j] - q_hi
        upper[j] = 2.0 * est[j] - q_lo
    return IntervalBand(
        u=us, estimate=est, lower=lower, upper=upper,
        method="bootstrap", level=level,
        meta={
            "n": n,
            "resamples": resamples,
            "nonfinite": nonfinite.tolist(),
            "unbounded": unbounded.tolist(),
        },
    )


def chi2_test(
    sample: PairedSample,
    u_points,
    null_values=0.0,
    nominal_size: float = 0.1,
) -> TestReport:
    """Quadratic-form test of alpha(u_k) = alpha_0(u_k) over m points.

    The covariance entry for (i, j) depends only on the larger index:
    sigma(u_i, u_j) = (T_L + T_U)/(T_L T_U) at u_max(i,j). The matrix is
    positive definite exactly when consecutive points strictly increase at
    least one corner count, which is checked before factorization.
    """
    us = _check_u(u_points)
    if us.size < 1:
        raise DomainError("chi2_test: need at least one u point")
    if np.any(np.diff(us) <= 0.0):
        raise DomainError("chi2_test: u_points must be strictly increasing")
    m = us.size
    null_arr = np.broadcast_to(np.asarray(null_values, dtype=float), (m,)).copy()
    if not 0.0 < nominal_size < 1.0:
        raise DomainError(f"nominal_size must be in (0, 1), got {nominal_size}")

    lower, upper = tail_counts_grid(sample, us)
    if np.any(lower == 0) or np.any(upper == 0):
        k = int(np.argmax((lower == 0) | (upper == 0)))
        raise DataError(
            f"chi2_test: zero corner count at u={us[k]:g} "
            f"(T_L={lower[k]}, T_U={upper[k]}); choose larger u points"
        )
    for i in range(m - 1):
        if not (upper[i] < upper[i + 1] or lower[i] < lower[i + 1]):
            raise NumericalError(
                "singular covariance: neither corner count increases between "
                f"u={us[i]:g} and u={us[i + 1]:g}"
            )

    n = sample.n
    tl = lower / n
    tu = upper / n
    v = (tl + tu) / (tl * tu)
    idx = np.arange(m)
    sigma = v[np.maximum(idx[:, None], idx[None, :])]

    a_vec = math.sqrt(n) * (alpha_hat_curve(sample, us) - null_arr)
    try:
        factor = cho_factor(sigma, lower=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"singular covariance: factorization failed ({exc})") from exc
    statistic = float(a_vec @ cho_solve(factor, a_vec))
    p_value = float(_chi2_dist.sf(statistic, m))
    return TestReport(
        statistic=statistic,
        dof=m,
        p_value=p_value,
        u_points=us,
        null_values=null_arr,
        nominal_size=nominal_size,
        reject=bool(p_value < nominal_size),
    )
