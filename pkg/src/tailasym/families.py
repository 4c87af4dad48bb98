"""Copula family catalogue.

Each family bundles its parameter domain, CDF, conditional CDF (the partial
derivative with respect to the first argument), tail behavior, and a sampler
recipe. Everything is vectorized over NumPy arrays; scalar inputs give scalar
outputs at the public wrappers in :mod:`tailasym.copulas`.

Numerical conventions used throughout:

* quantities of the form ``1 - (1-u)^t`` are kept in log space via
  ``expm1``/``log1p`` so corners keep full relative precision;
* potentially huge powers (Clayton with large theta, Gumbel) are evaluated
  through ``logaddexp`` to avoid overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from . import bvn
from .errors import DomainError

__all__ = ["TailSummary", "Family", "FAMILIES", "get_family"]

_LOG_HALF = math.log(0.5)


@dataclass(frozen=True)
class TailSummary:
    """Catalogued tail behavior of a copula.

    ``lambda_*`` are the tail-dependence coefficients. ``kappa_*`` are the
    tail orders (``None`` when not catalogued; ``inf`` when the corner
    probability is identically zero near the corner). ``upsilon_*`` are the
    tail-order parameters (``None`` when not catalogued).
    """

    lambda_lower: float
    lambda_upper: float
    kappa_lower: float | None
    kappa_upper: float | None
    upsilon_lower: float | None
    upsilon_upper: float | None

    def __post_init__(self):
        if self.lambda_lower > 0 and self.kappa_lower != 1.0:
            raise ValueError("lambda_lower > 0 requires kappa_lower == 1")
        if self.lambda_upper > 0 and self.kappa_upper != 1.0:
            raise ValueError("lambda_upper > 0 requires kappa_upper == 1")


def _log1mexp(x):
    """log(1 - exp(x)) for x <= 0, stable over the whole range."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        small = np.log(-np.expm1(x))      # accurate for x near 0
        large = np.log1p(-np.exp(x))      # accurate for very negative x
    return np.where(x < _LOG_HALF, large, small)


def _require(cond: bool, msg: str):
    if not cond:
        raise DomainError(msg)


class Family:
    """Base class; concrete families override the numerics."""

    name: str = ""
    param_names: tuple[str, ...] = ()
    symmetric = False  # radially symmetric: alpha(u) is identically zero

    def check(self, p: tuple) -> None:
        raise NotImplementedError

    def cdf(self, u1, u2, p):
        raise NotImplementedError

    def cond_cdf(self, u1, u2, p):
        """dC(u1, u2)/du1 — the conditional CDF of U2 given U1 = u1."""
        raise NotImplementedError

    def tail_summary(self, p) -> TailSummary:
        raise NotImplementedError

    def alpha_zero(self, p):
        """Exact boundary limit when the family has one catalogued directly.

        Returns ``None`` when the generic tail-summary route should decide.
        Radially symmetric families have alpha identically zero.
        """
        return 0.0 if self.symmetric else None

    def conditional_inverse(self, u1, w, p):
        """Solve cond_cdf(u1, u2) = w for u2; closed form where available."""
        raise NotImplementedError

    # sampler recipe tag consumed by tailasym.sampling:
    #   "inverse"  -> u1 uniform, u2 = conditional_inverse(u1, w)
    #   "rootfind" -> conditional inversion by bracketed root finding
    #   family-specific tags handled explicitly ("independence", "gaussian",
    #   "clayton")
    sampler = "inverse"


class Independence(Family):
    name = "independence"
    param_names = ()
    symmetric = True
    sampler = "independence"

    def check(self, p):
        _require(len(p) == 0, "independence: takes no parameters")

    def cdf(self, u1, u2, p):
        return u1 * u2

    def cond_cdf(self, u1, u2, p):
        return u2 * np.ones_like(np.asarray(u1, dtype=float))

    def tail_summary(self, p):
        return TailSummary(0.0, 0.0, 2.0, 2.0, 1.0, 1.0)

    def conditional_inverse(self, u1, w, p):
        return w


class Gaussian(Family):
    name = "gaussian"
    param_names = ("rho",)
    symmetric = True
    sampler = "gaussian"

    def check(self, p):
        (rho,) = p
        _require(-1.0 < rho < 1.0, f"gaussian: rho must be in (-1, 1), got {rho}")

    def cdf(self, u1, u2, p):
        (rho,) = p
        return bvn.bvn_cdf(ndtri(u1), ndtri(u2), rho)

    def cond_cdf(self, u1, u2, p):
        (rho,) = p
        z1 = ndtri(u1)
        z2 = ndtri(u2)
        return ndtr((z2 - rho * z1) / math.sqrt(1.0 - rho * rho))

    def tail_summary(self, p):
        (rho,) = p
        kappa = 2.0 / (1.0 + rho)
        return TailSummary(0.0, 0.0, kappa, kappa, None, None)

    def conditional_inverse(self, u1, w, p):
        (rho,) = p
        return ndtr(rho * ndtri(u1) + math.sqrt(1.0 - rho * rho) * ndtri(w))


class FGM(Family):
    name = "fgm"
    param_names = ("theta",)
    symmetric = True

    def check(self, p):
        (t,) = p
        _require(-1.0 <= t <= 1.0, f"fgm: theta must be in [-1, 1], got {t}")

    def cdf(self, u1, u2, p):
        (t,) = p
        return u1 * u2 * (1.0 + t * (1.0 - u1) * (1.0 - u2))

    def cond_cdf(self, u1, u2, p):
        (t,) = p
        return u2 * (1.0 + t * (1.0 - 2.0 * u1) * (1.0 - u2))

    def tail_summary(self, p):
        (t,) = p
        return TailSummary(0.0, 0.0, 2.0, 2.0, 1.0 + t, 1.0 + t)

    def conditional_inverse(self, u1, w, p):
        (t,) = p
        u1 = np.asarray(u1, dtype=float)
        w = np.asarray(w, dtype=float)
        a = t * (1.0 - 2.0 * u1)
        # smaller root of a*v^2 - (1+a)*v + w, in the rationalized form that
        # stays finite as a -> 0
        den = (1.0 + a) + np.sqrt((1.0 + a) ** 2 - 4.0 * a * w)
        with np.errstate(invalid="ignore"):
            v = 2.0 * w / den
        return np.where(w == 0.0, 0.0, v)


class Plackett(Family):
    name = "plackett"
    param_names = ("theta",)
    symmetric = True

    def check(self, p):
        (t,) = p
        _require(t > 0.0 and t != 1.0,
                 f"plackett: theta must be > 0 and != 1, got {t}")

    def cdf(self, u1, u2, p):
        (t,) = p
        s = 1.0 + (t - 1.0) * (u1 + u2)
        disc = s * s - 4.0 * u1 * u2 * t * (t - 1.0)
        return (s - np.sqrt(disc)) / (2.0 * (t - 1.0))

    def cond_cdf(self, u1, u2, p):
        (t,) = p
        s = 1.0 + (t - 1.0) * (u1 + u2)
        disc = s * s - 4.0 * u1 * u2 * t * (t - 1.0)
        return 0.5 * (1.0 - (s - 2.0 * t * u2) / np.sqrt(disc))

    def tail_summary(self, p):
        return TailSummary(0.0, 0.0, None, None, None, None)

    def conditional_inverse(self, u1, w, p):
        (t,) = p
        u1 = np.asarray(u1, dtype=float)
        w = np.asarray(w, dtype=float)
        z2 = (1.0 - 2.0 * w) ** 2
        a = 1.0 + (t - 1.0) * u1
        qa = (t + 1.0) ** 2 - z2 * (t - 1.0) ** 2
        qb = -2.0 * (a * (t + 1.0) + z2 * (t - 1.0) * (1.0 - u1 * (t + 1.0)))
        qc = a * a * (1.0 - z2)
        disc = np.maximum(qb * qb - 4.0 * qa * qc, 0.0)
        root = np.sqrt(disc)
        v1 = np.clip((-qb + root) / (2.0 * qa), 0.0, 1.0)
        v2 = np.clip((-qb - root) / (2.0 * qa), 0.0, 1.0)
        # squaring the defining equation introduced a spurious root; keep the
        # candidate whose conditional CDF actually matches w
        r1 = np.abs(self.cond_cdf(u1, v1, p) - w)
        r2 = np.abs(self.cond_cdf(u1, v2, p) - w)
        return np.where(r1 <= r2, v1, v2)


class Frank(Family):
    name = "frank"
    param_names = ("theta",)
    symmetric = True

    def check(self, p):
        (t,) = p
        _require(t != 0.0, "frank: theta must be nonzero (theta = 0 is excluded)")

    def cdf(self, u1, u2, p):
        (t,) = p
        num = np.expm1(-t * u1) * np.expm1(-t * u2)
        return -np.log1p(num / np.expm1(-t)) / t

    def cond_cdf(self, u1, u2, p):
        (t,) = p
        a = np.expm1(-t * u1)
        b = np.expm1(-t * u2)
        return np.exp(-t * u1) * b / (np.expm1(-t) + a * b)

    def tail_summary(self, p):
        return TailSummary(0.0, 0.0, 2.0, 2.0, None, None)

    def conditional_inverse(self, u1, w, p):
        (t,) = p
        u1 = np.asarray(u1, dtype=float)
        w = np.asarray(w, dtype=float)
        lw = np.log(w)
        l1w = np.log1p(-w)
        hi = np.logaddexp(l1w, lw + t * u1)
        lo = np.logaddexp(l1w, lw - t * (1.0 - u1))
        return (hi - lo) / t


class Clayton(Family):
    name = "clayton"
    param_names = ("theta",)
    sampler = "clayton"

    def check(self, p):
        (t,) = p
        _require(t >= -1.0 and t != 0.0,
                 f"clayton: theta must be in [-1, inf) excluding 0, got {t}")

    def cdf(self, u1, u2, p):
        (t,) = p
        u1 = np.asarray(u1, dtype=float)
        u2 = np.asarray(u2, dtype=float)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            x1 = -t * np.log(u1)
            x2 = -t * np.log(u2)
            if t > 0:
                # u^{-t} can overflow; work on log S with S >= 1 guaranteed
                m = np.maximum(x1, x2)
                logs = m + np.log(np.exp(x1 - m) + np.exp(x2 - m) - np.exp(-m))
                out = np.exp(-logs / t)
                return np.where(np.isneginf(-m), 1.0, out)  # u1 = u2 = 1
            s = np.exp(x1) + np.exp(x2) - 1.0
            return np.where(s > 0.0, np.exp(np.log(np.maximum(s, 1e-300)) * (-1.0 / t)), 0.0)

    def cond_cdf(self, u1, u2, p):
        (t,) = p
        u1 = np.asarray(u1, dtype=float)
        u2 = np.asarray(u2, dtype=float)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            x1 = -t * np.log(u1)
            x2 = -t * np.log(u2)
            if t > 0:
                m = np.maximum(x1, x2)
                logs = m + np.log(np.exp(x1 - m) + np.exp(x2 - m) - np.exp(-m))
                return np.exp((-t - 1.0) * np.log(u1) - (1.0 + t) / t * logs)
            s = np.exp(x1) + np.exp(x2) - 1.0
            ok = s > 0.0
            val = np.exp((-t - 1.0) * np.log(u1)
                         - (1.0 + t) / t * np.log(np.maximum(s, 1e-300)))
            return np.where(ok, val, 0.0)

    def tail_summary(self, p):
        (t,) = p
        if t > 0:
            lam = 2.0 ** (-1.0 / t)
            return TailSummary(lam, 0.0, 1.0, 2.0, lam, 1.0 + t)
        if t == -1.0:
            # countermonotone: both corner probabilities vanish identically
            return TailSummary(0.0, 0.0, math.inf, math.inf, 0.0, 0.0)
        return TailSummary(0.0, 0.0, math.inf, 2.0, None, 1.0 + t)

    def conditional_inverse(self, u1, w, p):
        (t,) = p
        u1 = np.asarray(u1, dtype=float)
        w = np.asarray(w, dtype=float)
        if t == -1.0:
            return 1.0 - u1
        inner = 1.0 + np.exp(-t * np.log(u1)) * np.expm1(-t / (1.0 + t) * np.log(w))
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(inner > 0.0, np.exp(np.log(np.maximum(inner, 1e-300)) / -t), 0.0)


class AMH(Family):
    name = "amh"
    param_names = ("theta",)

    def check(self, p):
        (t,) = p
        _require(-1.0 <= t <= 1.0, f"amh: theta must be in [-1, 1], got {t}")

    def cdf(self, u1, u2, p):
        (t,) = p
        u1 = np.asarray(u1, dtype=float)
        u2 = np.asarray(u2, dtype=float)
        den = 1.0 - t * (1.0 - u1) * (1.0 - u2)
        with np.errstate(invalid="ignore"):
            out = u1 * u2 / den
        return np.where((u1 == 0.0) | (u2 == 0.0), 0.0, out)

    def cond_cdf(self, u1, u2, p):
        (t,) = p
        den = 1.0 - t * (1.0 - u1) * (1.0 - u2)
        return u2 * (1.0 - t * (1.0 - u2)) / (den * den)

    def tail_summary(self, p):
        (t,) = p
        if t == 1.0:
            return TailSummary(0.5, 0.0, 1.0, 2.0, 0.5, 2.0)
        return TailSummary(0.0, 0.0, 2.0, 2.0, 1.0 / (1.0 - t), 1.0 + t)

    def alpha_zero(self, p):
        # exact closed form log(1 - theta^2); -inf at theta = +-1
        (t,) = p
        x = 1.0 - t * t
        return math.log(x) if x > 0.0 else -math.inf

    def conditional_inverse(self, u1, w, p):
        (t,) = p
        if t == 0.0:
            return np.asarray(w, dtype=float)
        u1 = np.asarray(u1, dtype=float)
        w = np.asarray(w, dtype=float)
        # quadratic in b = 1 - u2
        qa = t * (1.0 - w * t * (1.0 - u1) ** 2)
        qb = 2.0 * w * t * (1.0 - u1) - (1.0 + t)
        qc = 1.0 - w
        disc = np.maximum(qb * qb - 4.0 * qa * qc, 0.0)
        root = np.sqrt(disc)
        v1 = np.clip(1.0 - (-qb + root) / (2.0 * qa), 0.0, 1.0)
        v2 = np.clip(1.0 - (-qb - root) / (2.0 * qa), 0.0, 1.0)
        r1 = np.abs(self.cond_cdf(u1, v1, p) - w)
        r2 = np.abs(self.cond_cdf(u1, v2, p) - w)
        return np.where(r1 <= r2, v1, v2)


class Gumbel(Family):
    name = "gumbel"
    param_names = ("theta",)
    sampler = "rootfind"

    def check(self, p):
        (t,) = p
        _require(t >= 1.0, f"gumbel: theta must be >= 1, got {t}")

    def cdf(self, u1, u2, p):
        (t,) = p
        u1 = np.asarray(u1, dtype=float)
        u2 = np.asarray(u2, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            lx = np.log(-np.log(u1))
            ly = np.log(-np.log(u2))
            loga = np.logaddexp(t * lx, t * ly) / t
            out = np.exp(-np.exp(loga))
        both_one = (u1 == 1.0) & (u2 == 1.0)
        any_zero = (u1 == 0.0) | (u2 == 0.0)
        return np.where(any_zero, 0.0, np.where(both_one, 1.0, out))

    def cond_cdf(self, u1, u2, p):
        (t,) = p
        u1 = np.asarray(u1, dtype=float)
        u2 = np.asarray(u2, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            lx = np.log(-np.log(u1))
            ly = np.log(-np.log(u2))
            logs = np.logaddexp(t * lx, t * ly)
            out = np.exp(-np.exp(logs / t) + (1.0 / t - 1.0) * logs
                         + (t - 1.0) * lx - np.log(u1))
        return np.where(u2 == 0.0, 0.0, np.where(u2 == 1.0, 1.0, out))

    def tail_summary(self, p):
        (t,) = p
        if t == 1.0:
            return TailSummary(0.0, 0.0, 2.0, 2.0, 1.0, 1.0)
        lam_u = 2.0 - 2.0 ** (1.0 / t)
        return TailSummary(0.0, lam_u, 2.0 ** (1.0 / t), 1.0, None, lam_u)


class BB7(Family):
    name = "bb7"
    param_names = ("delta", "theta")
    sampler = "rootfind"

    def check(self, p):
        d, t = p
        _require(d > 0.0, f"bb7: delta must be > 0, got {d}")
        _require(t >= 1.0, f"bb7: theta must be >= 1, got {t}")

    @staticmethod
    def _log_a(u, t):
        """log(1 - (1-u)^t), stable at both ends."""
        return _log1mexp(t * np.log1p(-u))

    def cdf(self, u1, u2, p):
        d, t = p
        u1 = np.asarray(u1, dtype=float)
        u2 = np.asarray(u2, dtype=float)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            la1 = self._log_a(u1, t)
            la2 = self._log_a(u2, t)
            tm1 = np.expm1(-d * la1) + np.expm1(-d * la2)  # T - 1 >= 0
            inner = -np.expm1(-np.log1p(tm1) / d)          # 1 - T^{-1/d}
            out = -np.expm1(np.log(inner) / t)
        any_zero = (u1 == 0.0) | (u2 == 0.0)
        both_one = (u1 == 1.0) & (u2 == 1.0)
        return np.where(any_zero, 0.0, np.where(both_one, 1.0, out))

    def cond_cdf(self, u1, u2, p):
        d, t = p
        u1 = np.asarray(u1, dtype=float)
        u2 = np.asarray(u2, dtype=float)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            la1 = self._log_a(u1, t)
            la2 = self._log_a(u2, t)
            tm1 = np.expm1(-d * la1) + np.expm1(-d * la2)
            logT = np.log1p(tm1)
            inner = -np.expm1(-logT / d)
            out = np.exp((1.0 / t - 1.0) * np.log(inner) + (-1.0 / d - 1.0) * logT
                         + (-d - 1.0) * la1 + (t - 1.0) * np.log1p(-u1))
        return np.where(u2 == 0.0, 0.0, np.where(u2 == 1.0, 1.0, out))

    def tail_summary(self, p):
        d, t = p
        lam_l = 2.0 ** (-1.0 / d)
        if t == 1.0:
            # reduces to Clayton(delta); upper tail order 2
            return TailSummary(lam_l, 0.0, 1.0, 2.0, lam_l, 1.0 + d)
        lam_u = 2.0 - 2.0 ** (1.0 / t)
        return TailSummary(lam_l, lam_u, 1.0, 1.0, lam_l, lam_u)


FAMILIES: dict[str, Family] = {
    fam.name: fam
    for fam in (
        Independence(),
        Gaussian(),
        FGM(),
        Plackett(),
        Frank(),
        Clayton(),
        AMH(),
        Gumbel(),
        BB7(),
    )
}


def get_family(name: str) -> Family:
    try:
        return FAMILIES[name.lower()]
    except KeyError:
        raise DomainError(
            f"unknown copula family {name!r}; known: {', '.join(sorted(FAMILIES))}"
        ) from None
