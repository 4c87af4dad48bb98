"""Extended-real log arithmetic and its CSV serialization.

Log-ratios of corner probabilities are extended so that ``+inf`` and ``-inf``
are legitimate in-band values. They are produced by explicit branching on
zero numerators/denominators, never by letting a floating-point division
overflow, so the ``0/0 -> 0`` branch is exact.
"""

import math

__all__ = ["log_ratio", "format_value", "parse_value"]

# Rounding noise tolerated in quantities that are mathematically nonnegative
# (e.g. a survival diagonal assembled from 2u - 1 + C(1-u, 1-u)).
_NEG_NOISE = -1e-12


def log_ratio(num: float, den: float) -> float:
    """Extended log of ``num/den`` for nonnegative probabilities.

    Conventions: ``0/positive -> -inf``, ``positive/0 -> +inf``,
    ``0/0 -> 0``. Computed as ``log(num) - log(den)`` so that swapping the
    arguments negates the result exactly, bit for bit.
    """
    if num < 0.0:
        if num < _NEG_NOISE:
            raise ValueError(f"log_ratio: negative numerator {num!r}")
        num = 0.0
    if den < 0.0:
        if den < _NEG_NOISE:
            raise ValueError(f"log_ratio: negative denominator {den!r}")
        den = 0.0
    if num == 0.0:
        return 0.0 if den == 0.0 else -math.inf
    if den == 0.0:
        return math.inf
    return math.log(num) - math.log(den)


def format_value(x: float) -> str:
    """Serialize an extended real for CSV output (``+inf`` / ``-inf`` tokens)."""
    if math.isinf(x):
        return "+inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return repr(float(x))


def parse_value(token: str) -> float:
    """Inverse of :func:`format_value`."""
    tok = token.strip().lower()
    if tok in ("+inf", "inf"):
        return math.inf
    if tok == "-inf":
        return -math.inf
    if tok == "nan":
        return math.nan
    return float(token)
