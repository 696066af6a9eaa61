"""Compare the compiled and numpy oracle kernels.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from troploc import kernels, tropopt
from troploc.kernels import _pykernels
from troploc.location import LocationInstance, build_tropical_problem
from troploc.oracle import FEASIBILITY_EPS, GridSpec, _kernel_args

INST = LocationInstance(
    points=((1, 2), (5, 9), (7, 5), (-3, 4), (2, -6), (8, 8)),
    addends=(2, 1, 1, 0, 3, 2),
    distance_bounds=(12, 12, 12, 12, 12, 12),
    strip=(0, 6),
    mode="full",
)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--step", type=float, default=0.01)
    args = ap.parse_args()
    if kernels.compiled is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")

    grid = GridSpec.auto(INST, step=args.step)
    xs1, xs2 = grid.axes()
    kargs = _kernel_args(INST)
    prob = build_tropical_problem(INST)
    res = tropopt.solve(prob)
    uargs = (
        np.array(res.b_star.to_floats()), np.array(prob.B.to_floats()),
        np.array(prob.p.to_floats()), np.array(prob.q.to_floats()),
        np.array(prob.g.to_floats()), np.array(prob.h.to_floats()),
        np.array(res.u_lower.to_floats()), np.array(res.u_upper.to_floats()),
        float(res.theta), 401,
    )

    print(f"grid: {len(xs1)} x {len(xs2)} = {len(xs1) * len(xs2):,} points, m = {INST.m}")
    print(f"{'kernel':<12}{'cython':>12}{'numpy':>12}{'speedup':>10}")
    for name, call in (
        ("grid_scan", lambda k: k.grid_scan(xs1, xs2, *kargs, FEASIBILITY_EPS)),
        ("ubox_scan", lambda k: k.ubox_scan(*uargs)),
    ):
        tc, oc = best_of(lambda: call(kernels.compiled), args.repeat)
        tp, op = best_of(lambda: call(_pykernels), args.repeat)
        assert np.allclose(oc, op), (name, oc, op)
        print(f"{name:<12}{tc * 1e3:>10.1f}ms{tp * 1e3:>10.1f}ms{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
