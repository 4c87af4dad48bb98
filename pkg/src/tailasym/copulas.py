"""Parametric bivariate copula models and their population tail-asymmetry.

The central object is :class:`CopulaModel`, a frozen (family, parameters)
pair. The measure itself is the extended log-ratio of the upper-corner to the
lower-corner probability along the diagonal,

    alpha(u) = log( (2u - 1 + C(1-u, 1-u)) / C(u, u) ),   0 < u <= 0.5,

with the 0/0 -> 0, x/0 -> +inf, 0/x -> -inf conventions of
:func:`tailasym.extreal.log_ratio`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, LimitUnknownError
from .extreal import log_ratio
from .families import FAMILIES, Family, TailSummary, get_family

__all__ = [
    "CopulaModel",
    "TailSummary",
    "make_model",
    "parse_model_spec",
]


@dataclass(frozen=True)
class CopulaModel:
    """A validated bivariate copula: family name plus parameter tuple."""

    family: str
    params: tuple[float, ...] = ()

    def __post_init__(self):
        fam = get_family(self.family)
        object.__setattr__(self, "family", fam.name)
        object.__setattr__(self, "params", tuple(float(x) for x in self.params))
        if len(self.params) != len(fam.param_names):
            raise DomainError(
                f"{fam.name}: expected parameters {fam.param_names}, "
                f"got {len(self.params)} value(s)"
            )
        fam.check(self.params)

    @property
    def _fam(self) -> Family:
        return FAMILIES[self.family]

    @property
    def param_dict(self) -> dict[str, float]:
        return dict(zip(self._fam.param_names, self.params))

    def spec_string(self) -> str:
        inner = ",".join(f"{k}={v:g}" for k, v in self.param_dict.items())
        return f"{self.family}:{inner}" if inner else self.family

    # ------------------------------------------------------------------
    # CDF-level operations
    # ------------------------------------------------------------------

    def cdf(self, u1, u2):
        """C(u1, u2); arguments may be scalars or broadcastable arrays."""
        u1 = np.asarray(u1, dtype=float)
        u2 = np.asarray(u2, dtype=float)
        if np.any((u1 < 0) | (u1 > 1) | (u2 < 0) | (u2 > 1)):
            raise DomainError("cdf: arguments must lie in [0, 1]")
        raw = np.clip(self._fam.cdf(u1, u2, self.params), 0.0, 1.0)
        # exact copula margins on the boundary of the unit square
        out = np.where((u1 == 0.0) | (u2 == 0.0), 0.0, raw)
        out = np.where(u1 == 1.0, u2, out)
        out = np.where(u2 == 1.0, u1, out)
        return float(out) if out.ndim == 0 else out

    def survival(self, u1, u2):
        """Survival function P(U1 > u1, U2 > u2) = 1 - u1 - u2 + C(u1, u2)."""
        return 1.0 - u1 - u2 + self.cdf(u1, u2)

    def diagonal(self, u):
        """C(u, u)."""
        return self.cdf(u, u)

    def survival_diagonal(self, u):
        """2u - 1 + C(1-u, 1-u), the upper-corner probability at index u."""
        u = np.asarray(u, dtype=float)
        if np.any((u <= 0) | (u > 0.5)):
            raise DomainError("survival_diagonal: u must lie in (0, 0.5]")
        out = 2.0 * u - 1.0 + self.cdf(1.0 - u, 1.0 - u)
        return float(out) if out.ndim == 0 else out

    def cond_cdf(self, u1, u2):
        """dC(u1, u2)/du1, the conditional CDF of U2 given U1 = u1."""
        u1 = np.asarray(u1, dtype=float)
        u2 = np.asarray(u2, dtype=float)
        out = np.clip(self._fam.cond_cdf(u1, u2, self.params), 0.0, 1.0)
        return float(out) if out.ndim == 0 else out

    # ------------------------------------------------------------------
    # Tail behavior
    # ------------------------------------------------------------------

    def tail_summary(self) -> TailSummary:
        return self._fam.tail_summary(self.params)

    def alpha(self, u):
        """Population tail-asymmetry at index u in (0, 0.5]; extended real."""
        u_arr = np.atleast_1d(np.asarray(u, dtype=float))
        if np.any((u_arr <= 0) | (u_arr > 0.5)):
            raise DomainError("alpha: u must lie in (0, 0.5]")
        num = 2.0 * u_arr - 1.0 + self.cdf(1.0 - u_arr, 1.0 - u_arr)
        den = self.cdf(u_arr, u_arr)
        out = np.array([log_ratio(n, d) for n, d in zip(num, den)])
        return float(out[0]) if np.isscalar(u) or np.asarray(u).ndim == 0 else out

    def alpha_limit(self) -> float:
        """Boundary limit of alpha(u) as u tends to 0; extended real.

        Resolution order: an exact family-specific form (symmetric families,
        AMH), then tail-dependence coefficients when one is positive, then
        tail orders with tail-order parameters. Raises
        :class:`LimitUnknownError` when no catalogued route applies.
        """
        special = self._fam.alpha_zero(self.params)
        if special is not None:
            return special
        ts = self.tail_summary()
        if ts.lambda_lower > 0.0 or ts.lambda_upper > 0.0:
            return log_ratio(ts.lambda_upper, ts.lambda_lower)
        if ts.kappa_lower is None or ts.kappa_upper is None:
            raise LimitUnknownError(
                f"{self.family}: tail orders not catalogued for params {self.params}"
            )
        # a strictly larger tail order means that corner decays strictly
        # faster, so the other corner dominates the ratio
        if ts.kappa_lower > ts.kappa_upper:
            return math.inf
        if ts.kappa_lower < ts.kappa_upper:
            return -math.inf
        if ts.upsilon_lower is None or ts.upsilon_upper is None:
            raise LimitUnknownError(
                f"{self.family}: equal tail orders but tail-order parameters "
                f"not catalogued for params {self.params}"
            )
        return log_ratio(ts.upsilon_upper, ts.upsilon_lower)


def make_model(family: str, **params: float) -> CopulaModel:
    """Build a model from named parameters, e.g. ``make_model('bb7', delta=1, theta=2)``."""
    fam = get_family(family)
    unknown = set(params) - set(fam.param_names)
    if unknown:
        raise DomainError(
            f"{fam.name}: unknown parameter(s) {sorted(unknown)}; "
            f"expected {fam.param_names}"
        )
    missing = [n for n in fam.param_names if n not in params]
    if missing:
        raise DomainError(f"{fam.name}: missing parameter(s) {missing}")
    return CopulaModel(fam.name, tuple(params[n] for n in fam.param_names))


def parse_model_spec(spec: str) -> CopulaModel:
    """Parse ``family:key=value,key=value`` (case-insensitive) into a model."""
    text = spec.strip()
    if not text:
        raise DomainError("empty model spec")
    name, _, rest = text.partition(":")
    kwargs: dict[str, float] = {}
    if rest.strip():
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise DomainError(f"malformed model spec item {item!r} in {spec!r}")
            try:
                kwargs[key.strip().lower()] = float(value)
            except ValueError:
                raise DomainError(
                    f"non-numeric value {value!r} for {key.strip()!r} in {spec!r}"
                ) from None
    return make_model(name.strip().lower(), **kwargs)
