"""Closed-form quantities of the Sampled Gaussian Mechanism.

For a sampling rate ``q`` and privacy loss ``epsilon`` write
``h = exp(epsilon) - 1 + q`` and ``L = log(h / q)``. The delta achieved by
Gaussian noise of scale ``sigma`` is

    psi(sigma) = q * Phi(-sigma L + 1/(2 sigma)) - h * Phi(-sigma L - 1/(2 sigma))

which is strictly decreasing in ``sigma`` and maps ``(0, inf)`` onto
``(0, q)``. The remaining functions support the sign analysis of
``1/(2 sqrt(2) sigma) - sigma L / sqrt(2)`` at the calibrated ``sigma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._backend import kernels
from .errors import DomainError
from .special_fn import cdf, log_cdf_neg

__all__ = [
    "PrivacyBudget",
    "MechanismConfig",
    "ConjectureGap",
    "LemmaTwoPoint",
    "BRANCH_POINT",
    "FIRST_CRITICAL_POINT",
    "SECOND_CRITICAL_POINT",
    "h",
    "delta",
    "psi",
    "psi_derivative",
    "derivative_terms",
    "conjecture_gap",
    "lemma2_point",
    "t_function",
    "t_function_scaled",
    "t_derivative",
    "tight_constant",
]

# sqrt(2 ln 2): where exp(z^2/2) - 1 crosses 1 and T switches branch.
BRANCH_POINT = math.sqrt(2.0 * math.log(2.0))
# Zeros of T' on the left and right branch respectively.
FIRST_CRITICAL_POINT = 4.0 / (3.0 * math.sqrt(2.0 * math.pi))
SECOND_CRITICAL_POINT = 4.0 / math.sqrt(2.0 * math.pi)


def _require_finite_positive(name: str, value: float) -> float:
    value = float(value)
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be finite and > 0, got {value!r}")
    return value


@dataclass(frozen=True)
class PrivacyBudget:
    epsilon: float
    delta: float

    def __post_init__(self):
        _require_finite_positive("epsilon", self.epsilon)
        if not 0.0 < self.delta < 1.0:
            raise DomainError(f"delta must lie in (0, 1), got {self.delta!r}")


@dataclass(frozen=True)
class MechanismConfig:
    """Sampling rate ``q`` in (0, 1] together with the privacy loss ``epsilon``."""

    q: float
    epsilon: float

    def __post_init__(self):
        _require_finite_positive("epsilon", self.epsilon)
        if not 0.0 < self.q <= 1.0:
            raise DomainError(f"q must lie in (0, 1], got {self.q!r}")

    @property
    def growth(self) -> float:
        """``exp(epsilon) - 1``, evaluated without cancellation."""
        return math.expm1(self.epsilon)

    @property
    def h(self) -> float:
        return self.growth + self.q

    @property
    def tau(self) -> float:
        return self.growth / self.q

    @property
    def log_ratio(self) -> float:
        """``log(h / q)`` computed as ``log1p(tau)``."""
        return math.log1p(self.tau)


@dataclass(frozen=True)
class ConjectureGap:
    a: float
    b: float
    gap: float


@dataclass(frozen=True)
class LemmaTwoPoint:
    tau: float
    z: float


def h(config: MechanismConfig) -> float:
    return config.h


def psi(sigma: float, config: MechanismConfig) -> float:
    """Delta achieved by noise ``sigma`` at ``config``; lies in ``(0, q)``.

    Computed as ``q (Phi(x1) - Phi(x2)) - (e^eps - 1) Phi(x2)`` with the
    interval mass taken from a series when ``x1`` and ``x2`` are close, so
    large sigma and small epsilon do not cost digits. Relative error stays
    near 1e-13 while the result is a normal double.

    Raises DomainError unless ``sigma`` is finite and positive.
    """
    sigma = _require_finite_positive("sigma", sigma)
    return kernels.psi(sigma, config.q, config.growth, config.log_ratio)


# Pr(Z >= x) == Phi(-x), so the tail-probability form is the same function.
delta = psi


def psi_derivative(sigma: float, config: MechanismConfig) -> float:
    """Closed-form d psi / d sigma.

    The product rule leaves two bracketed groups; the one weighted by
    ``log(h/q)`` is ``q phi(x1) - h phi(x2)``, which vanishes identically
    because ``exp((x2^2 - x1^2)/2) = h/q``. What remains is
    ``-(q phi(x1) + h phi(x2)) / (2 sigma^2)``, negative wherever it does
    not underflow.
    """
    sigma = _require_finite_positive("sigma", sigma)
    return kernels.psi_derivative(sigma, config.q, config.growth, config.log_ratio)


def derivative_terms(sigma: float, config: MechanismConfig) -> tuple[float, float]:
    """Return ``(q phi(x1), h phi(x2))``, the two weighted densities in psi'."""
    sigma = _require_finite_positive("sigma", sigma)
    shift = sigma * config.log_ratio
    half_inv = 0.5 / sigma
    return (
        config.q * kernels.phi(-shift + half_inv),
        config.h * kernels.phi(-shift - half_inv),
    )


def conjecture_gap(sigma: float, config: MechanismConfig) -> ConjectureGap:
    sigma = _require_finite_positive("sigma", sigma)
    log_ratio = config.log_ratio
    if log_ratio == 0.0:
        raise DomainError(f"log(h/q) underflows to 0 for {config!r}")
    a = 1.0 / (2.0 * math.sqrt(2.0) * sigma)
    b = sigma / math.sqrt(2.0) * log_ratio
    return ConjectureGap(a=a, b=b, gap=a - b)


def lemma2_point(config: MechanismConfig) -> LemmaTwoPoint:
    tau = config.tau
    return LemmaTwoPoint(tau=tau, z=math.sqrt(2.0 * math.log1p(tau)))


def _check_z(z: float) -> float:
    z = float(z)
    if not z >= 0.0:
        raise DomainError(f"z must be >= 0, got {z!r}")
    return z


def t_function(z: float) -> float:
    """``Phi(-z) - exp(-z^2/2) * (1/2 - min(exp(z^2/2) - 1, 1) / 4)``.

    The ``min`` is resolved by comparing ``z`` with ``BRANCH_POINT``, so
    ``exp(z^2/2)`` is never formed. Once the value drops below the
    smallest subnormal (``z`` near 38.5) the result is a zero carrying the
    sign of ``t_function_scaled``.
    """
    z = _check_z(z)
    decay = math.exp(-0.5 * z * z)
    if z <= BRANCH_POINT:
        value = cdf(-z) - 0.75 * decay + 0.25
    else:
        value = cdf(-z) - 0.25 * decay
    if value == 0.0 and z > 0.0:
        return math.copysign(0.0, t_function_scaled(z))
    return value


def t_function_scaled(z: float) -> float:
    """``exp(z^2/2) * t_function(z)``; same sign, never underflows."""
    z = _check_z(z)
    mills = math.exp(0.5 * z * z + log_cdf_neg(z))
    if z <= BRANCH_POINT:
        return mills - 0.75 + 0.25 * math.exp(0.5 * z * z)
    return mills - 0.25


def t_derivative(z: float) -> float:
    """Derivative of ``t_function``.

    ``T`` has a kink at ``BRANCH_POINT``; there the right-hand derivative
    is returned.
    """
    z = _check_z(z)
    decay = math.exp(-0.5 * z * z)
    if z < BRANCH_POINT:
        return 0.75 * decay * (z - FIRST_CRITICAL_POINT)
    return 0.25 * decay * (z - SECOND_CRITICAL_POINT)


def tight_constant() -> float:
    """Smallest ``c`` for which ``epsilon, q >= c * delta`` forces a negative gap."""
    return 1.0 / (0.5 - 2.0 * cdf(-BRANCH_POINT))
