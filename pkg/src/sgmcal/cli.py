"""Command-line interface.

Usage:
    sgmcal delta --sigma 0.8478 --q 3.82e-6 --epsilon 3.82e-6
    sgmcal calibrate --epsilon 1 --delta 1e-5 --q 0.01 --format json
    sgmcal sweep --epsilon 1 --delta 1e-6 --q-lo 1e-3 --q-hi 1 --points 20
    sgmcal verify --target all
    sgmcal constants

Exit codes: 0 success, 1 verification found violations, 2 usage error,
3 infeasible parameters (delta >= q).
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from collections.abc import Iterable, Mapping, Sequence

import click

from . import analysis, mechanism
from .calibration import DEFAULT_REL_TOL, calibrate
from .errors import CalibrationError, DomainError, NoSolution

__all__ = ["cli", "main", "render_csv", "render_json", "format_real"]

EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3

SWEEP_HEADER = (
    "q", "epsilon", "delta_target", "sigma", "sigma_eff", "a", "b", "gap", "condition_met",
)
REPORT_HEADER = (
    "target", "constant", "total_points", "skipped", "excluded",
    "violations", "worst_value", "worst_point",
)


def format_real(value) -> str:
    """17 significant digits: enough for any double to round-trip."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.17g}"
    if isinstance(value, tuple):
        return ";".join(format_real(v) for v in value)
    return str(value)


def render_csv(header: Sequence[str], rows: Iterable[Mapping]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_real(row[name]) for name in header])
    return buf.getvalue()


def _json_ready(value):
    if isinstance(value, tuple):
        return [_json_ready(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render_json(payload) -> str:
    if isinstance(payload, Mapping):
        payload = {k: _json_ready(v) for k, v in payload.items()}
    else:
        payload = [{k: _json_ready(v) for k, v in row.items()} for row in payload]
    return json.dumps(payload, indent=2) + "\n"


def _emit(fmt: str, header: Sequence[str], rows: list[Mapping], single: bool) -> str:
    if fmt == "csv":
        return render_csv(header, rows)
    return render_json(rows[0] if single else rows)


def _sweep_record(row: analysis.SweepRow) -> dict:
    return {name: getattr(row, name) for name in SWEEP_HEADER}


def _report_record(report: analysis.VerificationReport) -> dict:
    return {
        "target": report.target,
        "constant": report.constant,
        "total_points": report.total_points,
        "skipped": report.skipped,
        "excluded": report.excluded,
        "violations": report.violations,
        "worst_value": report.worst_gap,
        "worst_point": report.worst_point,
    }


positive = click.FloatRange(min=0.0, min_open=True)
unit_rate = click.FloatRange(min=0.0, max=1.0, min_open=True)
probability = click.FloatRange(min=0.0, max=1.0, min_open=True, max_open=True)
format_option = click.option(
    "--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True
)


@click.group()
def cli():
    """Noise calibration for the Sampled Gaussian Mechanism."""


@cli.command("delta")
@click.option("--sigma", type=positive, required=True, help="Noise scale, > 0.")
@click.option("--q", type=unit_rate, required=True, help="Sampling rate in (0, 1].")
@click.option("--epsilon", type=positive, required=True, help="Privacy loss, > 0.")
@format_option
def cmd_delta(sigma, q, epsilon, fmt):
    """Delta achieved by noise SIGMA at sampling rate Q."""
    config = mechanism.MechanismConfig(q=q, epsilon=epsilon)
    shift = sigma * config.log_ratio
    record = {
        "sigma": sigma,
        "q": q,
        "epsilon": epsilon,
        "h": config.h,
        "log_ratio": config.log_ratio,
        "upper_arg": -shift + 0.5 / sigma,
        "lower_arg": -shift - 0.5 / sigma,
        "delta": mechanism.delta(sigma, config),
    }
    click.echo(_emit(fmt, list(record), [record], single=True), nl=False)


@cli.command("calibrate")
@click.option("--epsilon", type=positive, required=True)
@click.option("--delta", type=probability, required=True)
@click.option("--q", type=unit_rate, required=True)
@click.option(
    "--rel-tol",
    type=click.FloatRange(min=0.0, max=1e-2, min_open=True, max_open=True),
    default=DEFAULT_REL_TOL,
    show_default=True,
)
@format_option
def cmd_calibrate(epsilon, delta, q, rel_tol, fmt):
    """Noise scale whose delta equals DELTA at (EPSILON, Q)."""
    budget = mechanism.PrivacyBudget(epsilon=epsilon, delta=delta)
    try:
        result = calibrate(budget, q, rel_tol)
    except NoSolution as exc:
        click.echo(f"Error: infeasible parameters: {exc}", err=True)
        sys.exit(EXIT_INFEASIBLE)
    except CalibrationError as exc:
        click.echo(f"Error: calibration failed: {exc}", err=True)
        sys.exit(EXIT_INFEASIBLE)
    gap = mechanism.conjecture_gap(result.sigma, result.config)
    record = {
        "epsilon": epsilon,
        "delta_target": delta,
        "q": q,
        "sigma": result.sigma,
        "sigma_eff": result.sigma_eff,
        "residual": result.residual,
        "iterations": result.iterations,
        "bracket_lo": result.bracket_lo,
        "bracket_hi": result.bracket_hi,
        "a": gap.a,
        "b": gap.b,
        "gap": gap.gap,
    }
    click.echo(_emit(fmt, list(record), [record], single=True), nl=False)


@cli.command("sweep")
@click.option("--epsilon", type=positive, required=True)
@click.option("--delta", type=probability, required=True)
@click.option("--q-lo", type=unit_rate, required=True)
@click.option("--q-hi", type=unit_rate, required=True)
@click.option("--points", type=click.IntRange(min=2), default=20, show_default=True)
@click.option("--scale", type=click.Choice(["log", "linear"]), default="log", show_default=True)
@click.option("--constant", type=positive, default=analysis.DEFAULT_CONSTANT, show_default=True)
@format_option
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def cmd_sweep(epsilon, delta, q_lo, q_hi, points, scale, constant, fmt, out):
    """Calibrate across a grid of sampling rates.

    Rows go to --out or stdout; the monotonicity summary goes to stderr.
    Infeasible rows keep their q but leave the calibrated fields empty.
    """
    try:
        grid = analysis.GridSpec(q_lo, q_hi, points, scale)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc
    rows = analysis.sweep_effective_noise(
        mechanism.PrivacyBudget(epsilon, delta), grid, constant
    )
    text = _emit(fmt, SWEEP_HEADER, [_sweep_record(r) for r in rows], single=False)
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    skipped = sum(r.skipped for r in rows)
    verdict = "yes" if analysis.is_strictly_decreasing(rows) else "no"
    click.echo(f"decreasing: {verdict} (rows={len(rows)}, skipped={skipped})", err=True)


@cli.command("verify")
@click.option(
    "--target", type=click.Choice(["conjecture", "lemma2", "all"]), default="all",
    show_default=True,
)
@click.option("--constant", type=positive, default=analysis.DEFAULT_CONSTANT, show_default=True)
@format_option
def cmd_verify(target, constant, fmt):
    """Run verification campaigns; exit 1 if any point violates the claim."""
    reports = []
    if target in ("conjecture", "all"):
        reports.append(analysis.verify_conjecture(constant=constant))
    if target in ("lemma2", "all"):
        reports.append(analysis.verify_lemma2())
    records = [_report_record(r) for r in reports]
    if fmt == "csv":
        text = render_csv(REPORT_HEADER, records)
    elif len(records) == 1:
        text = render_json(records[0])
    else:
        text = json.dumps(
            {r["target"]: {k: _json_ready(v) for k, v in r.items()} for r in records},
            indent=2,
        ) + "\n"
    click.echo(text, nl=False)
    if any(r.violations for r in reports):
        sys.exit(EXIT_VIOLATION)


@cli.command("constants")
@format_option
def cmd_constants(fmt):
    """Tight constant, the landmarks of T and T at each landmark."""
    landmarks = {
        "branch_point": mechanism.BRANCH_POINT,
        "first_critical_point": mechanism.FIRST_CRITICAL_POINT,
        "second_critical_point": mechanism.SECOND_CRITICAL_POINT,
    }
    records = [{"name": "tight_constant", "value": mechanism.tight_constant()}]
    for name, z in landmarks.items():
        records.append({"name": name, "value": z})
        records.append({"name": f"t_at_{name}", "value": mechanism.t_function(z)})
    if fmt == "csv":
        text = render_csv(("name", "value"), records)
    else:
        text = render_json({r["name"]: r["value"] for r in records})
    click.echo(text, nl=False)


def main(argv=None):
    try:
        cli.main(args=argv, prog_name="sgmcal", standalone_mode=True)
    except DomainError as exc:
        click.echo(f"Error: {exc}", err=True)
        sys.exit(EXIT_USAGE)


if __name__ == "__main__":
    main()
