import math

import pytest

from sgmcal import analysis
from sgmcal.analysis import (
    REMARK_POINT,
    GridSpec,
    is_strictly_decreasing,
    reproduce_counterexample,
    sweep_effective_noise,
    verify_conjecture,
    verify_lemma2,
)
from sgmcal.calibration import calibrate
from sgmcal.errors import DomainError
from sgmcal.mechanism import PrivacyBudget, tight_constant


@pytest.mark.parametrize(
    "lo, hi, points, scale",
    [
        (1.0, 1.0, 5, "log"),
        (2.0, 1.0, 5, "log"),
        (0.0, 1.0, 5, "log"),
        (-1.0, 1.0, 5, "log"),
        (1.0, 2.0, 1, "linear"),
        (1.0, math.inf, 5, "linear"),
        (1.0, 2.0, 5, "cubic"),
    ],
)
def test_grid_rejects_bad_specs(lo, hi, points, scale):
    with pytest.raises(DomainError):
        GridSpec(lo, hi, points, scale)


@pytest.mark.parametrize("scale", ["log", "linear"])
def test_grid_endpoints_are_exact(scale):
    values = GridSpec(1e-7, 10.0, 25, scale).values()
    assert len(values) == 25
    assert values[0] == 1e-7 and values[-1] == 10.0
    assert all(b > a for a, b in zip(values, values[1:]))


def test_log_grid_is_geometric():
    values = GridSpec(1e-3, 1.0, 4).values()
    assert values == pytest.approx([1e-3, 1e-2, 1e-1, 1.0], rel=1e-14, abs=0)


def test_linear_grid_with_negative_lo():
    assert GridSpec(-1.0, 1.0, 3, "linear").values() == [-1.0, 0.0, 1.0]


SMALL_EPS = GridSpec(1e-4, 10.0, 6)
SMALL_Q = GridSpec(1e-4, 1.0, 5)
SMALL_DELTA = GridSpec(1e-10, 1e-5, 3)


def test_conjecture_holds_on_small_grid():
    report = verify_conjecture(SMALL_EPS, SMALL_Q, SMALL_DELTA, constant=4.0)
    assert report.target == "conjecture"
    assert report.total_points > 50
    assert report.violations == 0
    assert report.worst_gap < 0.0
    assert report.violating_points == ()


def test_remark_point_violates_below_tight_constant():
    report = verify_conjecture(SMALL_EPS, SMALL_Q, SMALL_DELTA, constant=3.8)
    assert report.violations >= 1
    assert REMARK_POINT in report.violating_points


def test_remark_point_excluded_at_constant_four():
    with_remark = verify_conjecture(SMALL_EPS, SMALL_Q, SMALL_DELTA, constant=4.0)
    without = verify_conjecture(
        SMALL_EPS, SMALL_Q, SMALL_DELTA, constant=4.0, include_remark=False
    )
    assert with_remark.excluded == without.excluded + 1
    assert with_remark.total_points == without.total_points


@pytest.mark.parametrize("constant", [3.84, 3.9, 4.0])
def test_no_violation_between_tight_constant_and_four(constant):
    assert constant > tight_constant()
    report = verify_conjecture(SMALL_EPS, SMALL_Q, SMALL_DELTA, constant=constant)
    assert report.violations == 0


def test_infeasible_grid_evaluates_nothing():
    report = verify_conjecture(
        GridSpec(1.0, 2.0, 2),
        GridSpec(1e-7, 1e-6, 2),
        GridSpec(1e-4, 1e-3, 2),
        include_remark=False,
    )
    assert report.total_points == 0
    assert report.excluded == 8
    assert report.worst_gap is None and report.worst_point is None


def test_sampling_rate_above_one_is_skipped():
    report = verify_conjecture(
        GridSpec(1.0, 2.0, 2), GridSpec(0.5, 2.0, 2), GridSpec(1e-6, 1e-5, 2),
        include_remark=False,
    )
    assert report.skipped == 4
    assert report.total_points == 4


def test_conjecture_rejects_nonpositive_constant():
    with pytest.raises(DomainError):
        verify_conjecture(SMALL_EPS, SMALL_Q, SMALL_DELTA, constant=0.0)


def test_conjecture_is_deterministic():
    first = verify_conjecture(SMALL_EPS, SMALL_Q, SMALL_DELTA)
    second = verify_conjecture(SMALL_EPS, SMALL_Q, SMALL_DELTA)
    assert first == second


def test_lemma2_small_grid_includes_landmarks():
    report = verify_lemma2(GridSpec(0.5, 1.5, 2))
    assert report.total_points == 5
    assert report.violations == 0
    assert report.worst_gap < 0.0


def test_lemma2_worst_is_in_far_tail():
    report = verify_lemma2(GridSpec(0.1, 5.0, 200))
    assert report.worst_point[0] == 5.0


def test_lemma2_rejects_grid_through_zero():
    with pytest.raises(DomainError):
        verify_lemma2(GridSpec(0.0, 1.0, 3, "linear"))


def test_counterexample_row():
    row = reproduce_counterexample()
    assert not row.condition_met
    assert row.gap > 0.0
    assert reproduce_counterexample(3.8).condition_met


def test_sweep_decreases_and_keeps_order():
    grid = GridSpec(1e-3, 1.0, 20)
    rows = sweep_effective_noise(PrivacyBudget(1.0, 1e-6), grid)
    assert [r.q for r in rows] == grid.values()
    assert not any(r.skipped for r in rows)
    assert is_strictly_decreasing(rows)


def test_sweep_end_matches_unsampled_mechanism():
    rows = sweep_effective_noise(PrivacyBudget(1.0, 1e-5), GridSpec(0.5, 1.0, 2))
    assert rows[-1].sigma == calibrate(PrivacyBudget(1.0, 1e-5), 1.0).sigma
    assert rows[-1].sigma_eff == rows[-1].sigma


def test_sweep_skips_infeasible_rates():
    rows = sweep_effective_noise(PrivacyBudget(1.0, 2e-3), GridSpec(1e-4, 1e-2, 3))
    assert rows[0].skipped and rows[1].skipped
    assert not rows[2].skipped
    assert rows[0].gap is None
    assert is_strictly_decreasing(rows)


def test_strict_decrease_detects_ties():
    row = analysis.SweepRow(0.1, 1.0, 1e-5, 1.0, 10.0, 0.1, 0.2, -0.1, True)
    assert not is_strictly_decreasing([row, row])
    assert is_strictly_decreasing([row])
