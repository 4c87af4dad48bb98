# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: corner counting, rank transform, conditional inversion.

Counting and ranking results are bit-identical to the NumPy fallback (same
double comparisons on the same values); the Illinois root finder agrees with
the fallback bisection to the solver tolerance.
"""

import numpy as np

from libc.math cimport exp, expm1, log, log1p, INFINITY, NAN

BACKEND_NAME = "compiled"

cdef double _LOG_HALF = -0.6931471805599453


cdef Py_ssize_t _upper_bound(const double* arr, Py_ssize_t n, double v) noexcept nogil:
    """Count of sorted entries <= v."""
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] <= v:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef Py_ssize_t _lower_bound(const double* arr, Py_ssize_t n, double v) noexcept nogil:
    """First index of sorted entries >= v."""
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo


def corner_counts(object u1_obj, object u2_obj, object levels_obj):
    """Non-strict corner membership counts; see the fallback docstring."""
    u1_arr = np.ascontiguousarray(u1_obj, dtype=np.float64)
    u2_arr = np.ascontiguousarray(u2_obj, dtype=np.float64)
    lv_arr = np.ascontiguousarray(levels_obj, dtype=np.float64)
    cdef double[::1] u1 = u1_arr
    cdef double[::1] u2 = u2_arr
    cdef double[::1] lv = lv_arr
    cdef Py_ssize_t n = u1.shape[0], m = lv.shape[0], i

    hi_arr = np.empty(n, dtype=np.float64)
    lo_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] hi = hi_arr
    cdef double[::1] lo = lo_arr
    with nogil:
        for i in range(n):
            hi[i] = u1[i] if u1[i] >= u2[i] else u2[i]
            lo[i] = u1[i] if u1[i] <= u2[i] else u2[i]
    hi_arr.sort()
    lo_arr.sort()

    lower_arr = np.empty(m, dtype=np.int64)
    upper_arr = np.empty(m, dtype=np.int64)
    cdef long long[::1] lower = lower_arr
    cdef long long[::1] upper = upper_arr
    with nogil:
        for i in range(m):
            lower[i] = _upper_bound(&hi[0], n, lv[i])
            upper[i] = n - _lower_bound(&lo[0], n, 1.0 - lv[i])
    return lower_arr, upper_arr


def rank_counts(object x_obj):
    """For each entry, the number of entries <= it (ties get the maximal count)."""
    x_arr = np.ascontiguousarray(x_obj, dtype=np.float64)
    s_arr = np.sort(x_arr)
    cdef double[::1] x = x_arr
    cdef double[::1] s = s_arr
    cdef Py_ssize_t n = x.shape[0], i
    out_arr = np.empty(n, dtype=np.int64)
    cdef long long[::1] out = out_arr
    with nogil:
        for i in range(n):
            out[i] = _upper_bound(&s[0], n, x[i])
    return out_arr


def pseudo_corner_counts(object x1_obj, object x2_obj, object levels_obj):
    """Corner counts after the within-sample rank/(n+1) transform (fused)."""
    x1_arr = np.ascontiguousarray(x1_obj, dtype=np.float64)
    x2_arr = np.ascontiguousarray(x2_obj, dtype=np.float64)
    lv_arr = np.ascontiguousarray(levels_obj, dtype=np.float64)
    s1_arr = np.sort(x1_arr)
    s2_arr = np.sort(x2_arr)
    cdef double[::1] x1 = x1_arr
    cdef double[::1] x2 = x2_arr
    cdef double[::1] s1 = s1_arr
    cdef double[::1] s2 = s2_arr
    cdef double[::1] lv = lv_arr
    cdef Py_ssize_t n = x1.shape[0], m = lv.shape[0], i
    cdef double inv = 1.0 / (n + 1.0)
    cdef double p1, p2

    hi_arr = np.empty(n, dtype=np.float64)
    lo_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] hi = hi_arr
    cdef double[::1] lo = lo_arr
    with nogil:
        for i in range(n):
            p1 = _upper_bound(&s1[0], n, x1[i]) * inv
            p2 = _upper_bound(&s2[0], n, x2[i]) * inv
            hi[i] = p1 if p1 >= p2 else p2
            lo[i] = p1 if p1 <= p2 else p2
    hi_arr.sort()
    lo_arr.sort()

    lower_arr = np.empty(m, dtype=np.int64)
    upper_arr = np.empty(m, dtype=np.int64)
    cdef long long[::1] lower = lower_arr
    cdef long long[::1] upper = upper_arr
    with nogil:
        for i in range(m):
            lower[i] = _upper_bound(&hi[0], n, lv[i])
            upper[i] = n - _lower_bound(&lo[0], n, 1.0 - lv[i])
    return lower_arr, upper_arr


# ----------------------------------------------------------------------
# Conditional inversion by bracketed root finding
# ----------------------------------------------------------------------

cdef double _logaddexp(double a, double b) noexcept nogil:
    if a == -INFINITY:
        return b
    if b == -INFINITY:
        return a
    if a >= b:
        return a + log1p(exp(b - a))
    return b + log1p(exp(a - b))


cdef double _log1mexp(double x) noexcept nogil:
    """log(1 - e^x) for x <= 0."""
    if x < _LOG_HALF:
        return log1p(-exp(x))
    return log(-expm1(x))


cdef double _gumbel_cond(double lx, double log_u1, double theta, double v) noexcept nogil:
    """dC/du1 of the Gumbel copula at (u1, v); lx = log(-log u1)."""
    cdef double ly, logs
    if v <= 0.0:
        return 0.0
    if v >= 1.0:
        return 1.0
    ly = log(-log(v))
    logs = _logaddexp(theta * lx, theta * ly)
    return exp(-exp(logs / theta) + (1.0 / theta - 1.0) * logs
               + (theta - 1.0) * lx - log_u1)


cdef double _bb7_cond(double la1, double e1, double lu1c,
                      double delta, double theta, double v) noexcept nogil:
    """dC/du1 of the BB7 copula at (u1, v).

    la1 = log(1-(1-u1)^theta), e1 = (1-(1-u1)^theta)^{-delta} - 1,
    lu1c = log(1-u1).
    """
    cdef double la2, tm1, logt, inner
    if v <= 0.0:
        return 0.0
    if v >= 1.0:
        return 1.0
    la2 = _log1mexp(theta * log1p(-v))
    tm1 = e1 + expm1(-delta * la2)
    logt = log1p(tm1)
    inner = -expm1(-logt / delta)
    return exp((1.0 / theta - 1.0) * log(inner) + (-1.0 / delta - 1.0) * logt
               + (-delta - 1.0) * la1 + (theta - 1.0) * lu1c)


cdef double _solve_gumbel(double u1, double w, double theta,
                          double tol, int max_iter) noexcept nogil:
    """Illinois-damped regula falsi on [0, 1]; monotone conditional CDF brackets."""
    cdef double lx = log(-log(u1))
    cdef double log_u1 = log(u1)
    cdef double lo = 0.0, hi = 1.0, flo = -w, fhi = 1.0 - w
    cdef double x, fx
    cdef int side = 0, it
    for it in range(max_iter):
        x = hi - fhi * (hi - lo) / (fhi - flo)
        fx = _gumbel_cond(lx, log_u1, theta, x) - w
        if fx > 0.0:
            hi = x
            fhi = fx
            if side == -1:
                flo *= 0.5
            side = -1
        elif fx < 0.0:
            lo = x
            flo = fx
            if side == 1:
                fhi *= 0.5
            side = 1
        else:
            return x
        if hi - lo <= tol:
            return 0.5 * (lo + hi)
    return NAN


cdef double _solve_bb7(double u1, double w, double delta, double theta,
                       double tol, int max_iter) noexcept nogil:
    cdef double la1 = _log1mexp(theta * log1p(-u1))
    cdef double e1 = expm1(-delta * la1)
    cdef double lu1c = log1p(-u1)
    cdef double lo = 0.0, hi = 1.0, flo = -w, fhi = 1.0 - w
    cdef double x, fx
    cdef int side = 0, it
    for it in range(max_iter):
        x = hi - fhi * (hi - lo) / (fhi - flo)
        fx = _bb7_cond(la1, e1, lu1c, delta, theta, x) - w
        if fx > 0.0:
            hi = x
            fhi = fx
            if side == -1:
                flo *= 0.5
            side = -1
        elif fx < 0.0:
            lo = x
            flo = fx
            if side == 1:
                fhi *= 0.5
            side = 1
        else:
            return x
        if hi - lo <= tol:
            return 0.5 * (lo + hi)
    return NAN


def cond_inverse_gumbel(object u1_obj, object w_obj, double theta,
                        double tol=1e-12, int max_iter=200):
    """Solve dC/du1(u1, v) = w for v, Gumbel copula. Tolerance is in v.

    Non-converged entries come back NaN; the caller turns them into a
    generation error naming the family and quantile.
    """
    u1_arr = np.ascontiguousarray(u1_obj, dtype=np.float64)
    w_arr = np.ascontiguousarray(w_obj, dtype=np.float64)
    cdef double[::1] u1 = u1_arr
    cdef double[::1] w = w_arr
    cdef Py_ssize_t n = u1.shape[0], i
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    with nogil:
        for i in range(n):
            out[i] = _solve_gumbel(u1[i], w[i], theta, tol, max_iter)
    return out_arr


def cond_inverse_bb7(object u1_obj, object w_obj, double delta, double theta,
                     double tol=1e-12, int max_iter=200):
    """Solve dC/du1(u1, v) = w for v, BB7 copula. Tolerance is in v."""
    u1_arr = np.ascontiguousarray(u1_obj, dtype=np.float64)
    w_arr = np.ascontiguousarray(w_obj, dtype=np.float64)
    cdef double[::1] u1 = u1_arr
    cdef double[::1] w = w_arr
    cdef Py_ssize_t n = u1.shape[0], i
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    with nogil:
        for i in range(n):
            out[i] = _solve_bb7(u1[i], w[i], delta, theta, tol, max_iter)
    return out_arr
