"""Scenario-driven Monte-Carlo harness.

A scenario pins a data-generating model, sample size, replication count,
index grid, interval methods, and a master seed; the harness replays it
deterministically (replication r consumes stream id r, bootstrap streams are
salted) and aggregates coverage against the population truth curve. Reports
are plain dicts of floats and ints, so two runs of one scenario serialize to
byte-identical JSON.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.special import ndtri

from . import __version__ as _pkg_version
from ._kernels import BACKEND as _backend
from .copulas import CopulaModel, parse_model_spec
from .errors import DataError, DomainError, TailAsymError
from .estimation import (
    alpha_hat_curve,
    chi2_test,
    ci_bootstrap,
    sigma_hat_curve,
    tail_counts_grid,
)
from .extreal import format_value
from .sampling import (
    PairedSample,
    SeedSpec,
    cauchy_cdf,
    sample_clayton_cauchy,
    sample_copula,
)

__all__ = ["Scenario", "run_scenario", "sampler_diagnostics", "SamplerDiagnostics"]

_METHODS = ("asymptotic", "bonferroni", "bootstrap")
# Distinct Philox key space for bootstrap streams inside a replication.
_BOOTSTRAP_SALT = 0x9E3779B97F4A7C15


@dataclass(frozen=True)
class Scenario:
    """A reproducible Monte-Carlo study description."""

    model: str                      # model spec, or "clayton-cauchy:theta=T"
    n: int
    replications: int
    u_grid: tuple[float, ...]
    levels: tuple[float, ...] = (0.9,)
    methods: tuple[str, ...] = ("asymptotic",)
    resamples: int = 199
    master_seed: int = 0
    test_points: tuple[float, ...] | None = None
    test_size: float = 0.1

    def __post_init__(self):
        if self.replications < 1:
            raise DomainError("scenario: replications must be >= 1")
        if self.n < 1:
            raise DomainError("scenario: n must be >= 1")
        grid = tuple(float(u) for u in self.u_grid)
        if not grid or any(u <= 0.0 or u > 0.5 for u in grid):
            raise DomainError("scenario: u_grid must be nonempty within (0, 0.5]")
        object.__setattr__(self, "u_grid", grid)
        object.__setattr__(self, "levels", tuple(float(x) for x in self.levels))
        object.__setattr__(self, "methods", tuple(self.methods))
        for m in self.methods:
            if m not in _METHODS:
                raise DomainError(f"scenario: unknown method {m!r}; known: {_METHODS}")
        for lv in self.levels:
            if not 0.0 < lv < 1.0:
                raise DomainError(f"scenario: level must be in (0, 1), got {lv}")
        if self.test_points is not None:
            object.__setattr__(self, "test_points", tuple(float(u) for u in self.test_points))
        # fail before any replication runs if the model is unknown
        _parse_scenario_model(self.model)

    @classmethod
    def from_dict(cls, d: dict) -> "Scenario":
        known = {f for f in cls.__dataclass_fields__}
        extra = set(d) - known
        if extra:
            raise DomainError(f"scenario: unknown field(s) {sorted(extra)}")
        try:
            return cls(**d)
        except TypeError as exc:
            raise DomainError(f"scenario: {exc}") from None

    @classmethod
    def from_json(cls, path: str) -> "Scenario":
        try:
            with open(path, encoding="utf-8") as fh:
                payload = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise DataError(f"cannot read scenario file {path}: {exc}") from exc
        if not isinstance(payload, dict):
            raise DataError(f"scenario file {path} must hold a JSON object")
        return cls.from_dict(payload)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["u_grid"] = list(self.u_grid)
        d["levels"] = list(self.levels)
        d["methods"] = list(self.methods)
        d["test_points"] = None if self.test_points is None else list(self.test_points)
        return d


def _parse_scenario_model(spec: str):
    """Returns (truth_model, kind) where kind is 'copula' or 'clayton-cauchy'."""
    name = spec.split(":", 1)[0].strip().lower()
    if name in ("clayton-cauchy", "clayton_cauchy"):
        rest = spec.split(":", 1)[1] if ":" in spec else ""
        truth = parse_model_spec("clayton:" + rest)
        (theta,) = truth.params
        if theta <= 0:
            raise DomainError("clayton-cauchy: theta must be > 0")
        return truth, "clayton-cauchy"
    return parse_model_spec(spec), "copula"


def _draw(scenario: Scenario, truth: CopulaModel, kind: str, rep: int):
    """One replication's data: (uniform-scale sample, raw-scale sample)."""
    seed = SeedSpec(scenario.master_seed, rep)
    if kind == "clayton-cauchy":
        raw = sample_clayton_cauchy(truth.params[0], scenario.n, seed)
        uni = PairedSample(cauchy_cdf(raw.x1), cauchy_cdf(raw.x2), "uniform")
    else:
        uni = sample_copula(truth, scenario.n, seed)
        raw = PairedSample(uni.x1, uni.x2, "raw")
    return uni, raw


def run_scenario(scenario: Scenario) -> dict:
    """Replay the scenario and aggregate coverage, widths, errors, rejections.

    Identical scenarios produce byte-identical reports: all randomness flows
    through (master_seed, replication-index) streams and the aggregation is
    order-independent.
    """
    truth_model, kind = _parse_scenario_model(scenario.model)
    us = np.asarray(scenario.u_grid)
    truth = np.asarray(truth_model.alpha(us))
    reps = scenario.replications

    m = us.size
    abs_err_sum = np.zeros(m)
    abs_err_cnt = np.zeros(m, dtype=int)
    nonfinite_est = np.zeros(m, dtype=int)
    cover = {(meth, lv): np.zeros(m, dtype=int) for meth in scenario.methods for lv in scenario.levels}
    width_sum = {k: np.zeros(m) for k in cover}
    width_cnt = {k: np.zeros(m, dtype=int) for k in cover}
    unbounded = {k: np.zeros(m, dtype=int) for k in cover}
    test_rejections = 0
    test_failures = 0

    for rep in range(reps):
        uni, raw = _draw(scenario, truth_model, kind, rep)
        est = alpha_hat_curve(uni, us)
        finite = np.isfinite(est)
        nonfinite_est += ~finite
        abs_err_sum[finite] += np.abs(est[finite] - truth[finite])
        abs_err_cnt += finite

        sig = sigma_hat_curve(uni, us)
        for lv in scenario.levels:
            for meth in scenario.methods:
                if meth in ("asymptotic", "bonferroni"):
                    # the Bonferroni band is the pointwise interval with the
                    # error budget split across the n observations
                    tail = (1.0 - lv) / 2.0
                    if meth == "bonferroni":
                        tail /= uni.n
                    z = float(-ndtri(tail))
                    ok = np.isfinite(sig) & finite
                    half = z * np.where(ok, sig, 0.0) / np.sqrt(uni.n)
                    lo = np.where(ok, est - half, -np.inf)
                    hi = np.where(ok, est + half, np.inf)
                else:
                    bseed = SeedSpec(scenario.master_seed ^ _BOOTSTRAP_SALT, rep)
                    band = ci_bootstrap(raw, us, lv, scenario.resamples, bseed)
                    lo, hi = band.lower, band.upper
                key = (meth, lv)
                cover[key] += (lo <= truth) & (truth <= hi)
                w = hi - lo
                wf = np.isfinite(w)
                width_sum[key][wf] += w[wf]
                width_cnt[key] += wf
                unbounded[key] += ~wf

        if scenario.test_points is not None:
            try:
                rpt = chi2_test(uni, scenario.test_points, 0.0, scenario.test_size)
                test_rejections += int(rpt.reject)
            except TailAsymError:
                test_failures += 1

    interval_rows = []
    for (meth, lv), cov in sorted(cover.items()):
        for j, u in enumerate(scenario.u_grid):
            ws = width_cnt[(meth, lv)][j]
            interval_rows.append({
                "method": meth,
                "level": lv,
                "u": u,
                "coverage": cov[j] / reps,
                "replications": reps,
                "mean_width": (width_sum[(meth, lv)][j] / ws) if ws else None,
                "width_count": int(ws),
                "unbounded_count": int(unbounded[(meth, lv)][j]),
            })

    report = {
        "scenario": scenario.to_dict(),
        "truth": {repr(float(u)): format_value(float(t))
                  for u, t in zip(scenario.u_grid, truth)},
        "estimator": {
            "mean_abs_error": {
                repr(float(u)): (abs_err_sum[j] / abs_err_cnt[j]) if abs_err_cnt[j] else None
                for j, u in enumerate(scenario.u_grid)
            },
            "nonfinite_count": {
                repr(float(u)): int(nonfinite_est[j]) for j, u in enumerate(scenario.u_grid)
            },
        },
        "intervals": interval_rows,
        "test": None if scenario.test_points is None else {
            "u_points": list(scenario.test_points),
            "nominal_size": scenario.test_size,
            "rejection_rate": test_rejections / reps,
            "failed_replications": test_failures,
        },
        "meta": {
            "package_version": _pkg_version,
            "kernel_backend": _backend,
            "replications": reps,
            "n": scenario.n,
        },
    }
    return report


@dataclass(frozen=True)
class SamplerDiagnostics:
    """Sampler-vs-population deviations for one seeded draw."""

    model: str
    n: int
    max_diagonal_dev: float
    max_survival_dev: float
    lambda_lower_proxy: dict
    margin_ks: tuple[float, float]

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "n": self.n,
            "max_diagonal_dev": self.max_diagonal_dev,
            "max_survival_dev": self.max_survival_dev,
            "lambda_lower_proxy": self.lambda_lower_proxy,
            "margin_ks": list(self.margin_ks),
        }


def _ks_uniform(x: np.ndarray) -> float:
    """Exact Kolmogorov statistic of a sample against Uniform(0, 1)."""
    s = np.sort(x)
    n = s.size
    grid_hi = np.arange(1, n + 1) / n
    grid_lo = np.arange(0, n) / n
    return float(max(np.max(grid_hi - s), np.max(s - grid_lo)))


def sampler_diagnostics(model: CopulaModel, n: int, seed: SeedSpec) -> SamplerDiagnostics:
    """Empirical diagonal/survival deviations, corner-rate proxies, margin fit."""
    sample = sample_copula(model, n, seed)
    us = np.round(np.arange(0.05, 0.501, 0.05), 10)
    lower, upper = tail_counts_grid(sample, us)
    diag_dev = np.abs(lower / n - model.cdf(us, us))
    surv_dev = np.abs(upper / n - model.survival_diagonal(us))
    proxies = {}
    small = np.array([0.005, 0.01, 0.02])
    lo_small, _ = tail_counts_grid(sample, small)
    for u, c in zip(small, lo_small):
        proxies[repr(float(u))] = float(c / n / u)
    return SamplerDiagnostics(
        model=model.spec_string(),
        n=n,
        max_diagonal_dev=float(np.max(diag_dev)),
        max_survival_dev=float(np.max(surv_dev)),
        lambda_lower_proxy=proxies,
        margin_ks=(_ks_uniform(sample.x1), _ks_uniform(sample.x2)),
    )
