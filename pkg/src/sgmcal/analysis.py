"""Grid sweeps and verification campaigns.

Nothing here performs I/O; the CLI renders the returned rows and reports.
Row order is always the nested input order (epsilon outer, q middle,
delta inner), so repeated runs give identical output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

from .calibration import calibrate
from .errors import CalibrationError, DomainError
from .mechanism import (
    BRANCH_POINT,
    FIRST_CRITICAL_POINT,
    SECOND_CRITICAL_POINT,
    PrivacyBudget,
    conjecture_gap,
    t_function,
    t_function_scaled,
)

__all__ = [
    "GridSpec",
    "SweepRow",
    "VerificationReport",
    "REMARK_POINT",
    "DEFAULT_EPS_GRID",
    "DEFAULT_Q_GRID",
    "DEFAULT_DELTA_GRID",
    "DEFAULT_Z_GRID",
    "verify_conjecture",
    "verify_lemma2",
    "reproduce_counterexample",
    "sweep_effective_noise",
    "is_strictly_decreasing",
]

DEFAULT_CONSTANT = 4.0

# (epsilon, q, delta) where the gap turns positive just below the tight constant.
REMARK_POINT = (3.82e-6, 3.82e-6, 1e-6)


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    points: int
    scale: Literal["linear", "log"] = "log"

    def __post_init__(self):
        if self.scale not in ("linear", "log"):
            raise DomainError(f"scale must be 'linear' or 'log', got {self.scale!r}")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise DomainError(f"grid needs finite lo < hi, got [{self.lo!r}, {self.hi!r}]")
        if self.points < 2:
            raise DomainError(f"grid needs at least 2 points, got {self.points!r}")
        if self.scale == "log" and self.lo <= 0.0:
            raise DomainError(f"log grid needs lo > 0, got {self.lo!r}")

    def values(self) -> list[float]:
        """Grid nodes in ascending order; both endpoints are exact."""
        n = self.points - 1
        if self.scale == "log":
            a, b = math.log(self.lo), math.log(self.hi)
            inner = [math.exp(a + (b - a) * i / n) for i in range(1, n)]
        else:
            inner = [self.lo + (self.hi - self.lo) * i / n for i in range(1, n)]
        return [self.lo, *inner, self.hi]


DEFAULT_EPS_GRID = GridSpec(1e-7, 10.0, 25, "log")
DEFAULT_Q_GRID = GridSpec(1e-7, 10.0, 25, "log")
DEFAULT_DELTA_GRID = GridSpec(1e-10, 1e-2, 15, "log")
DEFAULT_Z_GRID = GridSpec(1e-6, 40.0, 100_000, "log")


@dataclass(frozen=True)
class SweepRow:
    """One calibrated parameter point; numeric fields are None when skipped."""

    q: float
    epsilon: float
    delta_target: float
    sigma: float | None
    sigma_eff: float | None
    a: float | None
    b: float | None
    gap: float | None
    condition_met: bool

    @property
    def skipped(self) -> bool:
        return self.sigma is None


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a campaign.

    ``total_points`` counts evaluated points only. For the conjecture,
    points failing ``epsilon, q >= constant * delta`` are ``excluded`` and
    points whose calibration failed (including ``q > 1``) are ``skipped``.
    ``worst_gap`` is the largest value of the quantity that must stay
    negative: a - b for the conjecture, T(z) for the lemma2 target.
    """

    target: str
    total_points: int
    violations: int
    worst_gap: float | None
    worst_point: tuple[float, ...] | None
    skipped: int = 0
    excluded: int = 0
    constant: float | None = None
    violating_points: tuple[tuple[float, ...], ...] = field(default=())


def condition_met(epsilon: float, q: float, delta: float, constant: float) -> bool:
    return epsilon >= constant * delta and q >= constant * delta


def _calibrated_row(epsilon: float, q: float, delta: float, constant: float) -> SweepRow:
    met = condition_met(epsilon, q, delta, constant)
    try:
        result = calibrate(PrivacyBudget(epsilon, delta), q)
    except (CalibrationError, DomainError):
        return SweepRow(q, epsilon, delta, None, None, None, None, None, met)
    gap = conjecture_gap(result.sigma, result.config)
    return SweepRow(q, epsilon, delta, result.sigma, result.sigma_eff, gap.a, gap.b, gap.gap, met)


def verify_conjecture(
    eps_grid: GridSpec = DEFAULT_EPS_GRID,
    q_grid: GridSpec = DEFAULT_Q_GRID,
    delta_grid: GridSpec = DEFAULT_DELTA_GRID,
    constant: float = DEFAULT_CONSTANT,
    include_remark: bool = True,
) -> VerificationReport:
    """Check a - b < 0 at every grid point with epsilon, q >= constant * delta.

    With ``include_remark`` the counterexample point is appended after the
    grid so campaigns with a constant below 3.82 always probe it.
    """
    if not constant > 0.0:
        raise DomainError(f"constant must be > 0, got {constant!r}")
    triples = [
        (eps, q, delta)
        for eps in eps_grid.values()
        for q in q_grid.values()
        for delta in delta_grid.values()
    ]
    if include_remark:
        triples.append(REMARK_POINT)

    total = skipped = excluded = 0
    worst_gap = worst_point = None
    violating = []
    for eps, q, delta in triples:
        if not (condition_met(eps, q, delta, constant) and delta < q):
            excluded += 1
            continue
        row = _calibrated_row(eps, q, delta, constant)
        if row.skipped:
            skipped += 1
            continue
        total += 1
        if worst_gap is None or row.gap > worst_gap:
            worst_gap, worst_point = row.gap, (eps, q, delta)
        if row.gap >= 0.0:
            violating.append((eps, q, delta))
    return VerificationReport(
        target="conjecture",
        total_points=total,
        violations=len(violating),
        worst_gap=worst_gap,
        worst_point=worst_point,
        skipped=skipped,
        excluded=excluded,
        constant=constant,
        violating_points=tuple(violating),
    )


def verify_lemma2(z_grid: GridSpec = DEFAULT_Z_GRID) -> VerificationReport:
    """Check T(z) < 0 on the grid plus the branch point and both critical points.

    A point counts as a violation when T(z) > 0 or when the scaled form,
    which does not underflow, fails to be negative.
    """
    if z_grid.lo <= 0.0:
        raise DomainError(f"z grid must start above 0, got {z_grid.lo!r}")
    zs = sorted({*z_grid.values(), BRANCH_POINT, FIRST_CRITICAL_POINT, SECOND_CRITICAL_POINT})
    worst = worst_z = None
    violating = []
    for z in zs:
        value = t_function(z)
        if value > 0.0 or t_function_scaled(z) >= 0.0:
            violating.append((z,))
        if worst is None or value > worst:
            worst, worst_z = value, z
    return VerificationReport(
        target="lemma2",
        total_points=len(zs),
        violations=len(violating),
        worst_gap=worst,
        worst_point=(worst_z,),
        violating_points=tuple(violating),
    )


def reproduce_counterexample(constant: float = DEFAULT_CONSTANT) -> SweepRow:
    eps, q, delta = REMARK_POINT
    return _calibrated_row(eps, q, delta, constant)


def sweep_effective_noise(
    budget: PrivacyBudget, q_grid: GridSpec, constant: float = DEFAULT_CONSTANT
) -> list[SweepRow]:
    """Calibrate at each q of the grid, ascending; infeasible rows are skipped."""
    return [
        _calibrated_row(budget.epsilon, q, budget.delta, constant)
        for q in q_grid.values()
    ]


def is_strictly_decreasing(rows: list[SweepRow]) -> bool:
    """Whether sigma_eff strictly decreases across the non-skipped rows."""
    values = [row.sigma_eff for row in rows if not row.skipped]
    return all(later < earlier for earlier, later in zip(values, values[1:]))
