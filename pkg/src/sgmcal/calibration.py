"""Invert psi to find the noise scale for a target (epsilon, delta, q)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._backend import kernels
from .errors import InvalidTolerance, NoSolution
from .mechanism import MechanismConfig, PrivacyBudget

__all__ = [
    "CalibrationResult",
    "DEFAULT_REL_TOL",
    "calibrate",
    "sigma_lower_bound",
    "effective_noise",
]

DEFAULT_REL_TOL = 1e-9
_ABS_TOL_FLOOR = 1e-15


@dataclass(frozen=True)
class CalibrationResult:
    """Calibrated noise scale.

    ``iterations`` counts psi evaluations across bracket expansion,
    bisection and the Newton polish. On return
    ``psi(bracket_lo) > delta > psi(bracket_hi)`` and
    ``bracket_lo < sigma < bracket_hi``.
    """

    sigma: float
    sigma_eff: float
    residual: float
    iterations: int
    bracket_lo: float
    bracket_hi: float
    q: float
    budget: PrivacyBudget

    @property
    def config(self) -> MechanismConfig:
        return MechanismConfig(q=self.q, epsilon=self.budget.epsilon)


def calibrate(
    budget: PrivacyBudget, q: float, rel_tol: float = DEFAULT_REL_TOL
) -> CalibrationResult:
    """Smallest-noise sigma with ``psi(sigma) == budget.delta``.

    The root is bracketed by expanding from sigma = 1 by factors of 4,
    then bisected in log(sigma) until the bracket is narrower than 1e-12
    relative and the residual is within ``max(rel_tol * delta, 1e-15)``.

    Raises:
        InvalidTolerance: ``rel_tol`` outside (0, 1e-2).
        NoSolution: ``delta >= q``; psi never reaches q for positive sigma.
        BracketFailure: 60 expansions did not cross delta.
        ToleranceNotMet: floating-point bisection exhausted the bracket.
    """
    if not 0.0 < rel_tol < 1e-2:
        raise InvalidTolerance(f"rel_tol must lie in (0, 1e-2), got {rel_tol!r}")
    config = MechanismConfig(q=q, epsilon=budget.epsilon)
    if budget.delta >= config.q:
        raise NoSolution(
            f"delta={budget.delta!r} >= q={config.q!r}: the mechanism's delta "
            f"is always below q"
        )
    abs_tol = max(rel_tol * budget.delta, _ABS_TOL_FLOOR)
    sigma, lo, hi, evaluations = kernels.solve_sigma(
        budget.delta, config.q, config.growth, config.log_ratio, abs_tol
    )
    residual = kernels.psi(sigma, config.q, config.growth, config.log_ratio) - budget.delta
    return CalibrationResult(
        sigma=sigma,
        sigma_eff=sigma / config.q,
        residual=residual,
        iterations=int(evaluations),
        bracket_lo=lo,
        bracket_hi=hi,
        q=config.q,
        budget=budget,
    )


def sigma_lower_bound(config: MechanismConfig) -> float:
    """``1 / sqrt(2 log(h/q))``: the sigma at which a - b changes sign."""
    return 1.0 / math.sqrt(2.0 * config.log_ratio)


def effective_noise(result: CalibrationResult) -> float:
    return result.sigma / result.q
