"""Brute-force verification of the closed-form results.

Nothing in here calls the closed-form solvers: the grid search evaluates
the location objective directly, the u-box scan re-derives objective values
in plain floating point, and :func:`definitional_star` sums matrix powers
with its own loops.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from . import kernels
from .errors import EmptyFeasible, GridTooCoarse, OracleViolation
from .location import LocationInstance, LocationSolution, evaluate_objective, rect_distance
from .maxplus import BOTTOM, TropMatrix
from .tropopt import BoxConstrainedProblem, TropSolverResult

DEFAULT_STEP = 0.01
MAX_POINTS = 10**7
MIN_FEASIBLE = 100
FEASIBILITY_EPS = 1e-9
MAX_MINIMIZERS = 10_000
# smallest half-width of an auto grid without distance bounds, in steps
MIN_PAD_STEPS = 50


@dataclass(frozen=True)
class GridSpec:
    x1_range: tuple
    x2_range: tuple
    step: float = DEFAULT_STEP
    # extra x1 abscissae forced onto the grid (strip edges)
    x1_extra: tuple = ()

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError(f"grid step must be positive, got {self.step}")
        for name in ("x1_range", "x2_range"):
            lo, hi = getattr(self, name)
            if not lo <= hi:
                raise ValueError(f"{name} is empty: {lo} > {hi}")

    def _axis(self, lo: float, hi: float) -> np.ndarray:
        # snap to multiples of step so integer and half-integer points are hit exactly
        k_lo = math.floor(lo / self.step + 1e-9)
        k_hi = math.ceil(hi / self.step - 1e-9)
        k = np.arange(k_lo, k_hi + 1, dtype=float)
        inv = 1.0 / self.step
        if abs(inv - round(inv)) < 1e-9:
            return k / round(inv)
        return k * self.step

    def axes(self) -> tuple:
        ax1 = self._axis(*self.x1_range)
        if self.x1_extra:
            ax1 = np.unique(np.concatenate([ax1, np.asarray(self.x1_extra, float)]))
        return ax1, self._axis(*self.x2_range)

    @property
    def point_count(self) -> int:
        n1 = math.floor((self.x1_range[1] - self.x1_range[0]) / self.step) + 2 + len(self.x1_extra)
        n2 = math.floor((self.x2_range[1] - self.x2_range[0]) / self.step) + 2
        return n1 * n2

    @classmethod
    def auto(cls, inst: LocationInstance, step: float = DEFAULT_STEP,
             max_points: int = MAX_POINTS) -> "GridSpec":
        """Bounding box of the demand points, inflated to cover every optimum.

        With distance bounds the inflation is ``max d_j``.  Otherwise it is the
        objective at a feasible reference point (the centroid, pushed into the
        strip if there is one) less the smallest addend, which bounds the
        distance from any optimum to every demand point.
        """
        xs = [r[0] for r in inst.points]
        ys = [r[1] for r in inst.points]
        if inst.uses_bounds:
            pad = max(inst.distance_bounds)
        else:
            ref = [sum(xs) / len(xs), sum(ys) / len(ys)]
            if inst.uses_strip:
                ref[0] = min(max(ref[0], inst.strip[0]), inst.strip[1])
            pad = max(evaluate_objective(inst, ref) - min(inst.addends), MIN_PAD_STEPS * step)
        x1 = (min(xs) - pad, max(xs) + pad)
        x2 = (min(ys) - pad, max(ys) + pad)
        extra = ()
        if inst.uses_strip:
            s, t = inst.strip
            lo, hi = max(x1[0], s), min(x1[1], t)
            if lo <= hi:
                x1 = (lo, hi)
                extra = tuple(v for v in (s, t) if lo <= v <= hi)
        spec = cls(x1, x2, step, extra)
        if spec.point_count > max_points:
            while spec.point_count > max_points:
                spec = cls(x1, x2, spec.step * 1.25, extra)
            warnings.warn(
                f"grid step coarsened from {step} to {spec.step:.6g} to stay under "
                f"{max_points} points",
                RuntimeWarning,
                stacklevel=2,
            )
        return spec


class GridMinimum(NamedTuple):
    theta_hat: float
    minimizers: list
    feasible_count: int


def _kernel_args(inst: LocationInstance):
    r1 = np.array([r[0] for r in inst.points], float)
    r2 = np.array([r[1] for r in inst.points], float)
    w = np.array(inst.addends, float)
    d = np.array(inst.distance_bounds if inst.distance_bounds is not None else [0.0] * inst.m, float)
    s, t = inst.strip if inst.strip is not None else (0.0, 0.0)
    return r1, r2, w, d, bool(inst.uses_bounds), bool(inst.uses_strip), float(s), float(t)


def grid_minimize(inst: LocationInstance, grid: Optional[GridSpec] = None,
                  backend=None) -> GridMinimum:
    """Minimum of the objective over feasible grid points.

    ``minimizers`` holds the feasible grid points whose objective is within
    one grid step of the minimum, in lexicographic order (capped at
    ``MAX_MINIMIZERS``).

    Raises:
        EmptyFeasible: no grid point satisfies the constraints.
        GridTooCoarse: fewer than ``MIN_FEASIBLE`` feasible points.
    """
    grid = grid if grid is not None else GridSpec.auto(inst)
    k = backend if backend is not None else kernels
    xs1, xs2 = grid.axes()
    args = _kernel_args(inst)
    best, _, _, count = k.grid_scan(xs1, xs2, *args, FEASIBILITY_EPS)
    if count == 0:
        raise EmptyFeasible("no grid point satisfies the constraints")
    if count < MIN_FEASIBLE:
        raise GridTooCoarse(
            f"only {count} feasible grid points (need {MIN_FEASIBLE}); use a finer step"
        )
    idx = k.grid_collect(xs1, xs2, *args, FEASIBILITY_EPS, best + grid.step, MAX_MINIMIZERS)
    minimizers = [(float(xs1[i]), float(xs2[j])) for i, j in idx]
    return GridMinimum(float(best), minimizers, int(count))


@dataclass
class VerificationReport:
    theta_closed_form: float
    theta_grid: float
    max_constraint_violation: float
    max_objective_gap_on_solution_set: float
    verdict: str
    counterexamples: list = field(default_factory=list)
    step: float = DEFAULT_STEP
    tol: float = 1e-9

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "theta_closed_form": self.theta_closed_form,
            "theta_grid": self.theta_grid,
            "max_constraint_violation": self.max_constraint_violation,
            "max_objective_gap_on_solution_set": self.max_objective_gap_on_solution_set,
            "counterexamples": [list(p) for p in self.counterexamples],
            "step": self.step,
            "tol": self.tol,
        }


def constraint_violation(inst: LocationInstance, x) -> float:
    """How far ``x`` lies outside the active constraints (0 when feasible)."""
    worst = 0.0
    if inst.uses_bounds:
        for r, d in zip(inst.points, inst.distance_bounds):
            worst = max(worst, rect_distance(x, r) - d)
    if inst.uses_strip:
        s, t = inst.strip
        worst = max(worst, s - x[0], x[0] - t)
    return worst


def verify_solution(inst: LocationInstance, sol: LocationSolution, tol: float = 1e-9,
                    grid: Optional[GridSpec] = None, backend=None) -> VerificationReport:
    """Check a claimed solution against the constraints and a grid search.

    Passes when every polyline vertex is feasible and attains ``sol.theta``
    within ``tol``, and no feasible grid point beats ``sol.theta`` by more
    than ``tol + 2 * step``.
    """
    grid = grid if grid is not None else GridSpec.auto(inst)
    violation = max(constraint_violation(inst, x) for x in sol.polyline)
    gap = max(abs(evaluate_objective(inst, x) - sol.theta) for x in sol.polyline)
    gm = grid_minimize(inst, grid, backend=backend)
    floor = sol.theta - tol - 2 * grid.step
    counterexamples = []
    if gm.theta_hat < floor:
        counterexamples = [x for x in gm.minimizers if evaluate_objective(inst, x) < floor][:10]
    ok = violation <= tol and gap <= tol and gm.theta_hat >= floor
    return VerificationReport(
        theta_closed_form=sol.theta,
        theta_grid=gm.theta_hat,
        max_constraint_violation=violation,
        max_objective_gap_on_solution_set=gap,
        verdict="pass" if ok else "fail",
        counterexamples=counterexamples,
        step=grid.step,
        tol=tol,
    )


def u_box_scan(prob: BoxConstrainedProblem, result: TropSolverResult,
               samples_per_dim: int = 101, backend=None, tol: float = 1e-9) -> float:
    """Largest ``|objective(B* u) - theta|`` over a lattice in the u-box.

    Raises:
        OracleViolation: some sampled ``x`` breaks ``Bx <= x`` or ``g <= x <= h``
            by more than ``tol``.
    """
    k = backend if backend is not None else kernels
    lo = [hi if l is BOTTOM else l for l, hi in zip(result.u_lower, result.u_upper)]
    dev, viol = k.ubox_scan(
        np.array(result.b_star.to_floats()),
        np.array(prob.B.to_floats()),
        np.array(prob.p.to_floats()),
        np.array(prob.q.to_floats()),
        np.array(prob.g.to_floats()),
        np.array(prob.h.to_floats()),
        np.array(lo, float),
        np.array(result.u_upper.to_floats()),
        float(result.theta),
        int(samples_per_dim),
    )
    if viol > tol:
        raise OracleViolation(f"sampled solution violates a constraint by {viol:g}")
    return float(dev)


def definitional_star(a: TropMatrix) -> TropMatrix:
    """``I + A + A^2 + ... + A^(n-1)`` accumulated term by term."""
    n, m = a.shape
    if n != m:
        raise ValueError("definitional_star needs a square matrix")
    neg = -math.inf
    A = a.to_floats()
    power = [[0.0 if i == j else neg for j in range(n)] for i in range(n)]
    total = [row[:] for row in power]
    for _ in range(n - 1):
        power = [
            [max(power[i][k] + A[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
        total = [[max(total[i][j], power[i][j]) for j in range(n)] for i in range(n)]
    return TropMatrix(tuple(tuple(BOTTOM if v == neg else v for v in row) for row in total))

