"""Regenerate tests/fixtures/oracle.json with 60-digit mpmath arithmetic.

This script shares no code with sgmcal: the delta curve, its inverse, the
normal tail and the T function quantities are all re-derived here from their
closed forms. Run from the repository root:

    python tests/oracle/make_fixtures.py
"""

import json
import random
from pathlib import Path

from mpmath import mp, mpf

mp.dps = 60

OUT = Path(__file__).resolve().parents[1] / "fixtures" / "oracle.json"

DELTA_POINTS = [  # (sigma, q, epsilon)
    ("1", "0.01", "1"),
    ("0.8478", "3.82e-6", "3.82e-6"),
    ("0.5", "0.1", "0.5"),
    ("2", "0.5", "2"),
    ("10", "1e-3", "1e-3"),
    ("1", "1e-5", "5"),
    ("0.3", "1e-7", "1e-7"),
    ("5", "0.2", "1e-3"),
    ("1.5", "1", "1"),
    ("0.05", "0.3", "3"),
    ("20", "1e-2", "1e-3"),
    ("4", "1", "0.25"),
    ("2", "1e-5", "5"),
    ("6", "0.01", "1"),
]

CALIBRATION_POINTS = [  # (epsilon, delta, q)
    ("3.82e-6", "1e-6", "3.82e-6"),
    ("1", "1e-5", "0.01"),
    ("1", "1e-6", "1"),
    ("1", "1e-5", "1"),
    ("0.5", "1e-8", "0.1"),
    ("2", "1e-10", "1e-3"),
    ("1e-3", "1e-7", "0.5"),
    ("8", "1e-4", "0.05"),
    ("0.1", "1e-9", "1e-6"),
    ("3", "1e-6", "0.2"),
    ("1e-2", "1e-3", "0.9"),
    ("4", "1e-10", "1"),
]

CDF_POINTS = ["-37.5", "-30", "-20", "-8", "-3", "-1", "0", "0.5", "2", "6"]
LOG_TAIL_POINTS = ["0", "1", "8", "30", "31", "40", "100", "200"]


def ncdf(x):
    return mp.erfc(-x / mp.sqrt(2)) / 2


def upper_tail(x):
    """Pr(Z >= x)."""
    return mp.erfc(x / mp.sqrt(2)) / 2


def density(x):
    return mp.exp(-x * x / 2) / mp.sqrt(2 * mp.pi)


def ratio_log(q, eps):
    return mp.log((mp.exp(eps) - 1 + q) / q)


def delta_curve(sigma, q, eps):
    hq = mp.exp(eps) - 1 + q
    big_l = ratio_log(q, eps)
    upper = upper_tail(sigma * big_l - 1 / (2 * sigma))
    lower = upper_tail(sigma * big_l + 1 / (2 * sigma))
    return q * upper - hq * lower


def invert(eps, delta, q):
    lo, hi = mpf("1e-8"), mpf("1e14")
    assert delta_curve(lo, q, eps) > delta > delta_curve(hi, q, eps)
    for _ in range(400):
        mid = mp.sqrt(lo * hi)
        if delta_curve(mid, q, eps) > delta:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def t_value(z):
    grow = mp.exp(z * z / 2) - 1
    return ncdf(-z) - mp.exp(-z * z / 2) * (mpf(1) / 2 - min(grow, mpf(1)) / 4)


def random_delta_points(n, seed=20241016):
    """Log-uniform (sigma, q, epsilon) with delta inside the double range."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        sigma = mpf(10) ** rng.uniform(-1, 8)
        q = mpf(10) ** rng.uniform(-7, 0)
        eps = mpf(10) ** rng.uniform(-7, 1)
        value = delta_curve(sigma, q, eps)
        if mpf("1e-250") < value:
            out.append([s(sigma), s(q), s(eps), s(value)])
    return out


def s(x):
    return mp.nstr(x, 30, min_fixed=1, max_fixed=0)


def main():
    fixtures = {
        "phi_1": s(density(mpf(1))),
        "h_q0.01_eps1": s(mp.exp(1) - 1 + mpf("0.01")),
        "h_remark": s(mp.exp(mpf("3.82e-6")) - 1 + mpf("3.82e-6")),
        "cdf": [[x, s(ncdf(mpf(x)))] for x in CDF_POINTS],
        "log_cdf_neg": [[z, s(mp.log(ncdf(-mpf(z))))] for z in LOG_TAIL_POINTS],
        "delta": [
            [sg, q, e, s(delta_curve(mpf(sg), mpf(q), mpf(e)))]
            for sg, q, e in DELTA_POINTS
        ],
        "delta_random": random_delta_points(60),
        "calibrate": [
            [e, d, q, s(invert(mpf(e), mpf(d), mpf(q)))]
            for e, d, q in CALIBRATION_POINTS
        ],
    }
    branch = mp.sqrt(2 * mp.log(2))
    first = 4 / (3 * mp.sqrt(2 * mp.pi))
    second = 4 / mp.sqrt(2 * mp.pi)
    fixtures["lemma2"] = {
        "branch_point": s(branch),
        "first_critical": s(first),
        "second_critical": s(second),
        "t_branch": s(t_value(branch)),
        "t_first": s(t_value(first)),
        "t_second": s(t_value(second)),
        "tight_constant": s(1 / (mpf(1) / 2 - 2 * ncdf(-branch))),
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(fixtures, indent=2) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
