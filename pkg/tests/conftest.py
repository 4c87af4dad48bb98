"""Shared brute-force oracles: independent recounting used to pin estimators.

Everything here is deliberately written as plain loops over the data, with no
reliance on the package's counting kernels, so that agreement is a real
cross-check and not a tautology.
"""

import math

import numpy as np
import pytest


def brute_corner_fractions(x1, x2, u):
    """(t_lower, t_upper) by direct enumeration with non-strict inequalities."""
    n = len(x1)
    c = 1.0 - u
    lo = 0
    hi = 0
    for a, b in zip(x1, x2):
        if a <= u and b <= u:
            lo += 1
        if a >= c and b >= c:
            hi += 1
    return lo / n, hi / n


def brute_alpha_hat(x1, x2, u):
    tl, tu = brute_corner_fractions(x1, x2, u)
    if tu == 0.0:
        return 0.0 if tl == 0.0 else -math.inf
    if tl == 0.0:
        return math.inf
    return math.log(tu) - math.log(tl)


def brute_sigma_hat(x1, x2, u):
    tl, tu = brute_corner_fractions(x1, x2, u)
    if tl == 0.0 or tu == 0.0:
        return math.inf
    return math.sqrt((tl + tu) / (tl * tu))


def brute_pseudo(x):
    """rank/(n+1) with the max-count tie rule, by direct double loop."""
    n = len(x)
    out = []
    for xi in x:
        count = sum(1 for xk in x if xk <= xi)
        out.append(count * (1.0 / (n + 1.0)))
    return np.asarray(out)


def brute_jump_set(x1, x2):
    vals = set()
    for a, b in zip(x1, x2):
        vals.add(min(max(a, b), max(1.0 - a, 1.0 - b)))
    return np.asarray(sorted(v for v in vals if 0.0 < v <= 0.5))


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
