# cython: language_level=3, cdivision=True, boundscheck=False, wraparound=False
"""Compiled kernels; same contract as ``_pykernels``."""

from libc.math cimport erfc, exp, expm1, fabs, log, log1p, sqrt

from .errors import BracketFailure, ToleranceNotMet

cdef double SQRT2 = sqrt(2.0)
cdef double INV_SQRT_2PI = 1.0 / sqrt(2.0 * 3.141592653589793)
cdef double HALF_LOG_2PI = 0.5 * log(2.0 * 3.141592653589793)
cdef double LOG_TAIL_SWITCH = 30.0
cdef double PSI_TAIL_SWITCH = 30.0
cdef double MASS_SERIES_MAX_WIDTH = 0.5
cdef int MASS_SERIES_TERMS = 30
cdef int ASYMPTOTIC_TERMS = 16
cdef int MAX_EXPANSIONS = 60
cdef double EXPANSION_FACTOR = 4.0
cdef double BRACKET_REL_WIDTH = 1e-12

BACKEND = "cython"


cdef inline double _phi(double x) nogil:
    return INV_SQRT_2PI * exp(-0.5 * x * x)


cdef inline double _cdf(double x) nogil:
    return 0.5 * erfc(-x / SQRT2)


cdef double _log_mills_series(double z) nogil:
    cdef double inv_z2 = 1.0 / (z * z)
    cdef double term = 1.0, series = 0.0
    cdef int k
    for k in range(1, ASYMPTOTIC_TERMS + 1):
        term *= -(2 * k - 1) * inv_z2
        series += term
    return log1p(series)


cdef double _log_cdf_neg(double z) nogil:
    if z <= LOG_TAIL_SWITCH:
        return log(0.5 * erfc(z / SQRT2))
    return -0.5 * z * z - log(z) - HALF_LOG_2PI + _log_mills_series(z)


cdef double _interval_mass(double mid, double half_width) nogil:
    cdef double a = mid * half_width
    cdef double b, c_prev, c, c_next, mean
    cdef int k
    if half_width <= MASS_SERIES_MAX_WIDTH and fabs(a) <= 1.0:
        b = 0.5 * half_width * half_width
        c_prev = 0.0
        c = 1.0
        mean = 1.0
        for k in range(1, MASS_SERIES_TERMS + 1):
            c_next = (-a * c - 2.0 * b * c_prev) / k
            c_prev = c
            c = c_next
            if k % 2 == 0:
                mean += c / (k + 1)
        return 2.0 * half_width * _phi(mid) * mean
    return _cdf(mid + half_width) - _cdf(mid - half_width)


cdef double _psi(double sigma, double q, double growth, double log_ratio) nogil:
    cdef double shift = sigma * log_ratio
    cdef double half_inv = 0.5 / sigma
    cdef double upper = -shift + half_inv
    cdef double z1, z2, log_r
    if upper >= -PSI_TAIL_SWITCH:
        return q * _interval_mass(-shift, half_inv) - growth * _cdf(-shift - half_inv)
    z1 = -upper
    z2 = shift + half_inv
    log_r = -log1p(2.0 * half_inv / z1) + _log_mills_series(z2) - _log_mills_series(z1)
    if log_r >= 0.0:
        return 0.0
    return exp(log(q) + _log_cdf_neg(z1) + log(-expm1(log_r)))


cdef inline double _psi_derivative(double sigma, double q, double growth,
                                   double log_ratio) nogil:
    cdef double shift = sigma * log_ratio
    cdef double half_inv = 0.5 / sigma
    cdef double bracket = (q * _phi(-shift + half_inv)
                           + (q + growth) * _phi(-shift - half_inv))
    return -bracket / (2.0 * sigma * sigma)


def phi(double x):
    return _phi(x)


def cdf(double x):
    return _cdf(x)


def log_cdf_neg(double z):
    return _log_cdf_neg(z)


def interval_mass(double mid, double half_width):
    return _interval_mass(mid, half_width)


def psi(double sigma, double q, double growth, double log_ratio):
    return _psi(sigma, q, growth, log_ratio)


def psi_derivative(double sigma, double q, double growth, double log_ratio):
    return _psi_derivative(sigma, q, growth, log_ratio)


def solve_sigma(double delta, double q, double growth, double log_ratio, double abs_tol):
    cdef long evaluations = 1
    cdef double lo = 1.0, hi = 1.0, mid, resid, slope, cand, f_cand
    cdef double f_lo, f_hi, f_mid
    cdef int k
    f_lo = f_hi = _psi(1.0, q, growth, log_ratio)

    k = 0
    while f_hi >= delta:
        if k == MAX_EXPANSIONS:
            raise BracketFailure(
                f"psi stayed >= {delta!r} up to sigma={hi!r} after {k} expansions"
            )
        lo = hi
        f_lo = f_hi
        hi *= EXPANSION_FACTOR
        f_hi = _psi(hi, q, growth, log_ratio)
        evaluations += 1
        k += 1
    k = 0
    while f_lo <= delta:
        if k == MAX_EXPANSIONS:
            raise BracketFailure(
                f"psi stayed <= {delta!r} down to sigma={lo!r} after {k} expansions"
            )
        if f_lo < delta:
            hi = lo
            f_hi = f_lo
        lo /= EXPANSION_FACTOR
        f_lo = _psi(lo, q, growth, log_ratio)
        evaluations += 1
        k += 1

    while True:
        mid = sqrt(lo * hi)
        if not (lo < mid < hi):
            raise ToleranceNotMet(
                f"bracket [{lo!r}, {hi!r}] collapsed before the residual "
                f"reached {abs_tol!r}"
            )
        f_mid = _psi(mid, q, growth, log_ratio)
        evaluations += 1
        resid = f_mid - delta
        if abs(resid) <= abs_tol and hi - lo <= BRACKET_REL_WIDTH * hi:
            break
        if resid > 0.0:
            lo = mid
            f_lo = f_mid
        elif resid < 0.0:
            hi = mid
            f_hi = f_mid
        else:
            break

    slope = _psi_derivative(mid, q, growth, log_ratio)
    if slope < 0.0:
        cand = mid - resid / slope
        if lo < cand < hi:
            f_cand = _psi(cand, q, growth, log_ratio)
            evaluations += 1
            if abs(f_cand - delta) < abs(resid):
                mid = cand

    return mid, lo, hi, evaluations
