"""Standard normal density, CDF and log-tail.

All tails are evaluated through ``erfc`` so ``cdf(-x)`` keeps full relative
precision where ``1 - cdf(x)`` would round to zero. Values that fall below
the smallest subnormal double underflow to ``0.0`` silently; ``phi`` does so
for ``|x|`` above roughly 38.6 and ``cdf`` for ``x`` below roughly -38.4.
``log_cdf_neg`` never underflows.
"""

from ._backend import kernels

__all__ = ["phi", "cdf", "log_cdf_neg"]


def phi(x: float) -> float:
    """Standard normal density ``exp(-x**2 / 2) / sqrt(2 pi)``."""
    return kernels.phi(float(x))


def cdf(x: float) -> float:
    """Standard normal CDF, accepting ``-inf`` and ``inf``.

    Relative error of the smaller of ``cdf(x)`` and ``cdf(-x)`` stays below
    1e-13 for ``|x| <= 8`` and below 1e-10 while the result is a normal
    double (``|x| <= 37.5``).
    """
    return kernels.cdf(float(x))


def log_cdf_neg(z: float) -> float:
    """``log(cdf(-z))`` for ``z >= 0``, finite for arbitrarily large ``z``.

    Past ``z = 30`` the Mills-ratio asymptotic series replaces ``erfc``.

    >>> round(log_cdf_neg(0.0), 15)
    -0.693147180559945
    """
    return kernels.log_cdf_neg(float(z))
