"""Time the pure-Python and compiled kernels on the same workloads.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one line per (workload, backend) with the best wall time over the
repeats and the speedup of the compiled kernels. Both backends must return
identical results; the script exits non-zero otherwise.
"""

import argparse
import math
import sys
import timeit

from sgmcal import _pykernels

try:
    from sgmcal import _ckernels
except ImportError:
    _ckernels = None


def grid(n):
    """n**3 log-spaced (sigma, q, growth, log_ratio) tuples."""
    def logspace(lo, hi):
        a, b = math.log(lo), math.log(hi)
        return [math.exp(a + (b - a) * i / (n - 1)) for i in range(n)]

    out = []
    for q in logspace(1e-8, 1.0):
        for eps in logspace(1e-8, 10.0):
            growth = math.expm1(eps)
            log_ratio = math.log1p(growth / q)
            out.extend((s, q, growth, log_ratio) for s in logspace(1e-3, 1e3))
    return out


def calibration_targets(n):
    out = []
    for i in range(n):
        q = 10 ** (-6 + 6 * i / (n - 1))
        eps = 10 ** (-5 + 6 * ((7 * i) % n) / n)
        growth = math.expm1(eps)
        delta = q * 10 ** (-1 - 9 * ((3 * i) % n) / n)
        out.append((delta, q, growth, math.log1p(growth / q), max(1e-9 * delta, 1e-15)))
    return out


def psi_workload(mod, points):
    psi = mod.psi
    return [psi(*p) for p in points]


def derivative_workload(mod, points):
    deriv = mod.psi_derivative
    return [deriv(*p) for p in points]


def solve_workload(mod, targets):
    solve = mod.solve_sigma
    return [solve(*t)[0] for t in targets]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--grid", type=int, default=40, help="points per axis")
    parser.add_argument("--solves", type=int, default=500)
    args = parser.parse_args(argv)

    if _ckernels is None:
        print("compiled kernels not built; only timing the Python backend")
    backends = [_pykernels] + ([_ckernels] if _ckernels is not None else [])
    points = grid(args.grid)
    targets = calibration_targets(args.solves)
    workloads = [
        (f"psi x{len(points)}", psi_workload, points),
        (f"psi_derivative x{len(points)}", derivative_workload, points),
        (f"solve_sigma x{len(targets)}", solve_workload, targets),
    ]

    status = 0
    for name, fn, data in workloads:
        times, results = {}, {}
        for mod in backends:
            results[mod.BACKEND] = fn(mod, data)
            times[mod.BACKEND] = min(
                timeit.repeat(lambda: fn(mod, data), number=1, repeat=args.repeat)
            )
            print(f"{name:<28} {mod.BACKEND:<8} {times[mod.BACKEND] * 1e3:9.2f} ms")
        if len(times) == 2:
            print(f"{name:<28} speedup  {times['python'] / times['cython']:9.1f}x")
            if results["python"] != results["cython"]:
                print(f"{name}: backends disagree", file=sys.stderr)
                status = 1
    return status


if __name__ == "__main__":
    sys.exit(main())
