"""Pure-NumPy implementations of the hot kernels.

These mirror the compiled extension in ``_core.pyx``; counting and ranking
results are required to match it bit for bit (identical comparisons on
identical doubles), root-finding agrees to the solver tolerance.
"""

import numpy as np

BACKEND_NAME = "python"


def corner_counts(u1, u2, levels):
    """Corner membership counts at each level u.

    Returns ``(lower, upper)`` int64 arrays: ``lower[j] = #{i: u1[i] <= u_j
    and u2[i] <= u_j}``, ``upper[j] = #{i: u1[i] >= 1 - u_j and u2[i] >= 1 -
    u_j}``. Inequalities are non-strict; ``1 - u_j`` is evaluated once in
    double precision.
    """
    u1 = np.ascontiguousarray(u1, dtype=np.float64)
    u2 = np.ascontiguousarray(u2, dtype=np.float64)
    levels = np.ascontiguousarray(levels, dtype=np.float64)
    hi = np.sort(np.maximum(u1, u2))
    lo = np.sort(np.minimum(u1, u2))
    lower = np.searchsorted(hi, levels, side="right").astype(np.int64)
    upper = (lo.size - np.searchsorted(lo, 1.0 - levels, side="left")).astype(np.int64)
    return lower, upper


def rank_counts(x):
    """For each entry, the number of entries <= it (ties get the maximal count)."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    s = np.sort(x)
    return np.searchsorted(s, x, side="right").astype(np.int64)


def pseudo_corner_counts(x1, x2, levels):
    """Corner counts after the within-sample rank/(n+1) transform.

    This is the bootstrap inner step: rank both columns of the (re)sample,
    map to rank/(n+1), and count corner membership at each level.
    """
    x1 = np.ascontiguousarray(x1, dtype=np.float64)
    x2 = np.ascontiguousarray(x2, dtype=np.float64)
    inv = 1.0 / (x1.size + 1.0)
    p1 = rank_counts(x1) * inv
    p2 = rank_counts(x2) * inv
    return corner_counts(p1, p2, levels)


def _bisect_cond(cond, w, n_iter=60):
    """Vectorized monotone bisection of cond(v) = w for v in (0, 1).

    ``cond`` maps a v-array to conditional-CDF values; it is nondecreasing in
    v with cond(0) = 0 and cond(1) = 1, so [0, 1] always brackets. 60
    halvings shrink the bracket below 1e-17, well under the 1e-12 target.
    """
    w = np.asarray(w, dtype=np.float64)
    lo = np.zeros_like(w)
    hi = np.ones_like(w)
    for _ in range(n_iter):
        mid = 0.5 * (lo + hi)
        below = cond(mid) < w
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def _gumbel_cond(u1, theta):
    with np.errstate(divide="ignore", invalid="ignore"):
        lx = np.log(-np.log(u1))

    def cond(v):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            ly = np.log(-np.log(v))
            logs = np.logaddexp(theta * lx, theta * ly)
            out = np.exp(-np.exp(logs / theta) + (1.0 / theta - 1.0) * logs
                         + (theta - 1.0) * lx - np.log(u1))
        return np.where(v <= 0.0, 0.0, np.where(v >= 1.0, 1.0, out))

    return cond


def _bb7_cond(u1, delta, theta):
    log_half = np.log(0.5)

    def log_a(u):
        q = theta * np.log1p(-u)
        with np.errstate(divide="ignore", invalid="ignore"):
            small = np.log(-np.expm1(q))
            large = np.log1p(-np.exp(q))
        return np.where(q < log_half, large, small)

    la1 = log_a(u1)
    e1 = np.expm1(-delta * la1)

    def cond(v):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            tm1 = e1 + np.expm1(-delta * log_a(v))
            logt = np.log1p(tm1)
            inner = -np.expm1(-logt / delta)
            out = np.exp((1.0 / theta - 1.0) * np.log(inner)
                         + (-1.0 / delta - 1.0) * logt
                         + (-delta - 1.0) * la1
                         + (theta - 1.0) * np.log1p(-u1))
        return np.where(v <= 0.0, 0.0, np.where(v >= 1.0, 1.0, out))

    return cond


def cond_inverse_gumbel(u1, w, theta, tol=1e-12, max_iter=200):
    """Solve dC/du1(u1, v) = w for v, Gumbel copula. Tolerance is in v."""
    u1 = np.ascontiguousarray(u1, dtype=np.float64)
    n_iter = min(max_iter, max(1, int(np.ceil(-np.log2(tol)))) + 4)
    return _bisect_cond(_gumbel_cond(u1, theta), w, n_iter=n_iter)


def cond_inverse_bb7(u1, w, delta, theta, tol=1e-12, max_iter=200):
    """Solve dC/du1(u1, v) = w for v, BB7 copula. Tolerance is in v."""
    u1 = np.ascontiguousarray(u1, dtype=np.float64)
    n_iter = min(max_iter, max(1, int(np.ceil(-np.log2(tol)))) + 4)
    return _bisect_cond(_bb7_cond(u1, delta, theta), w, n_iter=n_iter)
