"""Pure-Python kernels.

Reference implementation of the hot numerical loops. ``_ckernels.pyx``
mirrors every function here operation for operation so both backends
produce the same floating-point results on the same libm.
"""

import math

from .errors import BracketFailure, ToleranceNotMet

SQRT2 = math.sqrt(2.0)
INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# Above this, erfc(z / sqrt(2)) loses normal-range precision; switch to the
# asymptotic Mills-ratio series.
LOG_TAIL_SWITCH = 30.0
# psi switches to log space once its larger CDF argument drops below -30.
PSI_TAIL_SWITCH = 30.0
MASS_SERIES_MAX_WIDTH = 0.5
MASS_SERIES_TERMS = 30
_ASYMPTOTIC_TERMS = 16

MAX_EXPANSIONS = 60
EXPANSION_FACTOR = 4.0
BRACKET_REL_WIDTH = 1e-12

BACKEND = "python"


def phi(x):
    return INV_SQRT_2PI * math.exp(-0.5 * x * x)


def cdf(x):
    return 0.5 * math.erfc(-x / SQRT2)


def _log_mills_series(z):
    """``log(1 + sum_k (-1)^k (2k-1)!! / z^(2k))``, the Mills-ratio correction."""
    inv_z2 = 1.0 / (z * z)
    term = 1.0
    series = 0.0
    for k in range(1, _ASYMPTOTIC_TERMS + 1):
        term *= -(2 * k - 1) * inv_z2
        series += term
    return math.log1p(series)


def log_cdf_neg(z):
    if z <= LOG_TAIL_SWITCH:
        return math.log(0.5 * math.erfc(z / SQRT2))
    # ln Phi(-z) = -z^2/2 - ln z - ln sqrt(2 pi) + ln(1 + series)
    return -0.5 * z * z - math.log(z) - HALF_LOG_2PI + _log_mills_series(z)


def interval_mass(mid, half_width):
    """``cdf(mid + half_width) - cdf(mid - half_width)`` for ``half_width >= 0``.

    Narrow intervals use ``2 w phi(m) * mean(exp(-a s - b s^2))`` over
    ``s`` in [-1, 1], expanded as a power series, which avoids subtracting
    two nearly equal CDF values.
    """
    a = mid * half_width
    if half_width <= MASS_SERIES_MAX_WIDTH and abs(a) <= 1.0:
        b = 0.5 * half_width * half_width
        # exp(-a s - b s^2) = sum c_k s^k with (k+1) c_{k+1} = -a c_k - 2b c_{k-1}
        c_prev, c = 0.0, 1.0
        mean = 1.0
        for k in range(1, MASS_SERIES_TERMS + 1):
            c_prev, c = c, (-a * c - 2.0 * b * c_prev) / k
            if k % 2 == 0:
                mean += c / (k + 1)
        return 2.0 * half_width * phi(mid) * mean
    return cdf(mid + half_width) - cdf(mid - half_width)


def psi(sigma, q, growth, log_ratio):
    """``q Phi(x1) - h Phi(x2)`` with ``h = q + growth``, ``growth = e^eps - 1``.

    Evaluated as ``q (Phi(x1) - Phi(x2)) - growth Phi(x2)``.
    """
    shift = sigma * log_ratio
    half_inv = 0.5 / sigma
    upper = -shift + half_inv
    if upper >= -PSI_TAIL_SWITCH:
        return q * interval_mass(-shift, half_inv) - growth * cdf(-shift - half_inv)
    # Deep tail, both arguments below -30: psi = q Phi(x1) (1 - r) with
    # r = (h/q) Phi(x2) / Phi(x1). In the asymptotic form of log Phi the
    # z^2/2 terms cancel log(h/q) exactly (z2^2 - z1^2 = 2 log(h/q)), leaving
    # log r = -log(z2/z1) + series(z2) - series(z1).
    z1 = -upper
    z2 = shift + half_inv
    log_r = (
        -math.log1p(2.0 * half_inv / z1) + _log_mills_series(z2) - _log_mills_series(z1)
    )
    if log_r >= 0.0:
        return 0.0
    return math.exp(math.log(q) + log_cdf_neg(z1) + math.log(-math.expm1(log_r)))


def psi_derivative(sigma, q, growth, log_ratio):
    shift = sigma * log_ratio
    half_inv = 0.5 / sigma
    bracket = q * phi(-shift + half_inv) + (q + growth) * phi(-shift - half_inv)
    return -bracket / (2.0 * sigma * sigma)


def solve_sigma(delta, q, growth, log_ratio, abs_tol):
    """Find sigma with psi(sigma) == delta.

    Returns ``(sigma, lo, hi, evaluations)`` with ``lo < sigma < hi`` and
    ``psi(lo) > delta > psi(hi)``.
    """
    evaluations = 1
    lo = hi = 1.0
    f_lo = f_hi = psi(1.0, q, growth, log_ratio)

    k = 0
    while f_hi >= delta:
        if k == MAX_EXPANSIONS:
            raise BracketFailure(
                f"psi stayed >= {delta!r} up to sigma={hi!r} after {k} expansions"
            )
        lo, f_lo = hi, f_hi
        hi *= EXPANSION_FACTOR
        f_hi = psi(hi, q, growth, log_ratio)
        evaluations += 1
        k += 1
    k = 0
    while f_lo <= delta:
        if k == MAX_EXPANSIONS:
            raise BracketFailure(
                f"psi stayed <= {delta!r} down to sigma={lo!r} after {k} expansions"
            )
        if f_lo < delta:
            hi, f_hi = lo, f_lo
        lo /= EXPANSION_FACTOR
        f_lo = psi(lo, q, growth, log_ratio)
        evaluations += 1
        k += 1

    # Bisection in log(sigma): the geometric midpoint.
    while True:
        mid = math.sqrt(lo * hi)
        if not lo < mid < hi:
            raise ToleranceNotMet(
                f"bracket [{lo!r}, {hi!r}] collapsed before the residual "
                f"reached {abs_tol!r}"
            )
        f_mid = psi(mid, q, growth, log_ratio)
        evaluations += 1
        resid = f_mid - delta
        if abs(resid) <= abs_tol and hi - lo <= BRACKET_REL_WIDTH * hi:
            break
        if resid > 0.0:
            lo, f_lo = mid, f_mid
        elif resid < 0.0:
            hi, f_hi = mid, f_mid
        else:
            break

    # One Newton step, kept only if it stays inside the bracket and helps.
    slope = psi_derivative(mid, q, growth, log_ratio)
    if slope < 0.0:
        cand = mid - resid / slope
        if lo < cand < hi:
            f_cand = psi(cand, q, growth, log_ratio)
            evaluations += 1
            if abs(f_cand - delta) < abs(resid):
                mid = cand

    return mid, lo, hi, evaluations
