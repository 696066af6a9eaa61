"""Constrained minimax single-facility location with addends under the
rectilinear metric.

The facility ``x`` minimizes ``max_j (|x1 - r1j| + |x2 - r2j| + w_j)``
subject to optional per-point distance bounds ``d_j`` and an optional
vertical strip ``s <= x1 <= t``.  The optimal set is a polyline traced by a
parameter ``alpha`` in ``[0, 1]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional, Sequence

from . import tropopt
from .errors import BoundsError, ConformanceError, DegenerateInput, Infeasible
from .maxplus import BOTTOM, TropMatrix, TropVector, mat_mul
from .tropopt import BoxConstrainedProblem, TropSolverResult

MODES = ("full", "distance", "boundary", "unconstrained")

# location mode -> tropical problem mode
TROPICAL_MODE = {
    "full": "full",
    "distance": "box_only",
    "boundary": "inequality_only",
    "unconstrained": "unconstrained",
}

Point = tuple  # (x1, x2)


def _finite(v, what):
    v = float(v)
    if not math.isfinite(v):
        raise DegenerateInput(f"{what} must be finite, got {v!r}")
    return v


@dataclass(frozen=True)
class LocationInstance:
    points: tuple
    addends: tuple
    distance_bounds: Optional[tuple] = None
    strip: Optional[tuple] = None
    mode: str = "unconstrained"

    def __post_init__(self):
        pts = tuple(
            (_finite(a, "point coordinate"), _finite(b, "point coordinate")) for a, b in self.points
        )
        if not pts:
            raise ConformanceError("at least one demand point is required")
        w = tuple(_finite(v, "addend") for v in self.addends)
        if len(w) != len(pts):
            raise ConformanceError(f"{len(pts)} points but {len(w)} addends")
        d = self.distance_bounds
        if d is not None:
            d = tuple(_finite(v, "distance bound") for v in d)
            if len(d) != len(pts):
                raise ConformanceError(f"{len(pts)} points but {len(d)} distance bounds")
            for j, dj in enumerate(d):
                if dj < 0:
                    raise BoundsError(f"distance bound {j} is negative ({dj})")
        strip = self.strip
        if strip is not None:
            s, t = (_finite(v, "strip edge") for v in strip)
            if s > t:
                raise BoundsError(f"strip left edge {s} exceeds right edge {t}")
            strip = (s, t)
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if self.mode in ("full", "distance") and d is None:
            raise DegenerateInput(f"mode {self.mode!r} needs distance bounds")
        if self.mode in ("full", "boundary") and strip is None:
            raise DegenerateInput(f"mode {self.mode!r} needs a strip")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "addends", w)
        object.__setattr__(self, "distance_bounds", d)
        object.__setattr__(self, "strip", strip)

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def uses_bounds(self) -> bool:
        return self.mode in ("full", "distance")

    @property
    def uses_strip(self) -> bool:
        return self.mode in ("full", "boundary")

    def with_mode(self, mode: str) -> "LocationInstance":
        return replace(self, mode=mode)


@dataclass(frozen=True)
class DerivedScalars:
    p1: float
    p2: float
    q1: float
    q2: float
    g1: float = -math.inf
    g2: float = -math.inf
    h1: float = math.inf
    h2: float = math.inf

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("p1", "p2", "q1", "q2", "g1", "g2", "h1", "h2")}


class ChebyshevPoint(NamedTuple):
    y1: float
    y2: float


@dataclass(frozen=True)
class AffineInAlpha:
    """``(1 - alpha) * start + alpha * end``."""

    start: float
    end: float

    def __call__(self, alpha: float) -> float:
        return (1 - alpha) * self.start + alpha * self.end


@dataclass(frozen=True)
class LocationSolution:
    theta: float
    u1_alpha: AffineInAlpha
    u2_alpha: AffineInAlpha
    strip: Optional[tuple]
    alpha_breakpoints: tuple
    polyline: tuple = field(default=())
    mode: str = "unconstrained"
    scalars: Optional[DerivedScalars] = None

    def x_at(self, alpha: float) -> Point:
        return _u_to_x(self.u1_alpha(alpha), self.u2_alpha(alpha), self.strip)

    @property
    def endpoints(self) -> tuple:
        return self.polyline[0], self.polyline[-1]


# -- elementary geometry -------------------------------------------------------

def rect_distance(a: Sequence[float], b: Sequence[float]) -> float:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def evaluate_objective(inst: LocationInstance, x: Sequence[float]) -> float:
    return max(rect_distance(x, r) + w for r, w in zip(inst.points, inst.addends))


def to_chebyshev(x: Sequence[float]) -> ChebyshevPoint:
    return ChebyshevPoint(x[0] + x[1], -x[0] + x[1])


def from_chebyshev(y: Sequence[float]) -> Point:
    return ((y[0] - y[1]) / 2, (y[0] + y[1]) / 2)


# -- closed form ---------------------------------------------------------------

def derive_scalars(inst: LocationInstance) -> DerivedScalars:
    if len(inst.addends) != len(inst.points):
        raise ConformanceError("points and addends differ in length")
    c1 = [r1 + r2 for r1, r2 in inst.points]
    c2 = [-r1 + r2 for r1, r2 in inst.points]
    w = inst.addends
    p1 = max(wj + c for wj, c in zip(w, c1))
    p2 = max(wj + c for wj, c in zip(w, c2))
    q1 = min(-wj + c for wj, c in zip(w, c1))
    q2 = min(-wj + c for wj, c in zip(w, c2))
    d = inst.distance_bounds
    if d is None:
        return DerivedScalars(p1, p2, q1, q2)
    if len(d) != len(c1):
        raise ConformanceError("points and distance bounds differ in length")
    return DerivedScalars(
        p1, p2, q1, q2,
        g1=max(-dj + c for dj, c in zip(d, c1)),
        g2=max(-dj + c for dj, c in zip(d, c2)),
        h1=min(dj + c for dj, c in zip(d, c1)),
        h2=min(dj + c for dj, c in zip(d, c2)),
    )


def feasibility_terms(sc: DerivedScalars, s: float, t: float, mode: str) -> list:
    """Labelled terms whose maximum must be non-positive for the mode to be feasible."""
    if mode == "full":
        return [
            ("g1-h1", sc.g1 - sc.h1),
            ("g1-h2-2t", sc.g1 - sc.h2 - 2 * t),
            ("g2-h1+2s", sc.g2 - sc.h1 + 2 * s),
            ("g2-h2", sc.g2 - sc.h2),
        ]
    if mode == "distance":
        return [("g1-h1", sc.g1 - sc.h1), ("g2-h2", sc.g2 - sc.h2)]
    return []


def check_feasibility(sc: DerivedScalars, s: float, t: float, mode: str) -> bool:
    return all(v <= 0 for _, v in feasibility_terms(sc, s, t, mode))


def _raise_if_infeasible(sc, s, t, mode):
    terms = feasibility_terms(sc, s, t, mode)
    if not terms:
        return
    index = max(range(len(terms)), key=lambda k: terms[k][1])
    label, value = terms[index]
    if value > 0:
        raise Infeasible(
            f"no feasible location: term {label} = {value:g} > 0",
            term_index=index,
            term=label,
            value=value,
        )


def _u_to_x(u1: float, u2: float, strip) -> Point:
    if strip is None:
        return ((u1 - u2) / 2, (u1 + u2) / 2)
    s, t = strip
    a = max(u1, u2 + 2 * s)
    b = max(u1 - 2 * t, u2)
    return (a / 2 - b / 2, a / 2 + b / 2)


def _breakpoints(u1: AffineInAlpha, u2: AffineInAlpha, strip) -> tuple:
    # branch switches happen where u1 - u2 crosses 2s or 2t
    if strip is None:
        return ()
    d0 = u1.start - u2.start
    d1 = u1.end - u2.end
    if d1 == d0:
        return ()
    found = set()
    for c in (2 * strip[0], 2 * strip[1]):
        alpha = (c - d0) / (d1 - d0)
        if 0 < alpha < 1:
            found.add(alpha)
    return tuple(sorted(found))


def _theta_and_bounds(sc: DerivedScalars, strip, mode):
    p1, p2, q1, q2 = sc.p1, sc.p2, sc.q1, sc.q2
    g1, g2, h1, h2 = sc.g1, sc.g2, sc.h1, sc.h2
    if mode == "unconstrained":
        theta = max(p1 - q1, p2 - q2) / 2
        return theta, (p1 - theta, q1 + theta), (p2 - theta, q2 + theta)
    if mode == "distance":
        theta = max((p1 - q1) / 2, (p2 - q2) / 2, p1 - h1, p2 - h2, g1 - q1, g2 - q2)
        return (
            theta,
            (max(g1, p1 - theta), min(h1, q1 + theta)),
            (max(g2, p2 - theta), min(h2, q2 + theta)),
        )
    s, t = strip
    if mode == "boundary":
        theta = max(p1 - q1, p1 - q2 - 2 * t, p2 - q1 + 2 * s, p2 - q2) / 2
        return (
            theta,
            (p1 - theta, min(q1, q2 + 2 * t) + theta),
            (p2 - theta, min(q1 - 2 * s, q2) + theta),
        )
    theta = max(
        (p1 - q1) / 2, (p1 - q2) / 2 - t, (p2 - q1) / 2 + s, (p2 - q2) / 2,
        p1 - h1, p1 - h2 - 2 * t, p2 - h1 + 2 * s, p2 - h2,
        g1 - q1, g1 - q2 - 2 * t, g2 - q1 + 2 * s, g2 - q2,
    )
    return (
        theta,
        (max(g1, p1 - theta), min(h1, q1 + theta, h2 + 2 * t, q2 + 2 * t + theta)),
        (max(g2, p2 - theta), min(h1 - 2 * s, q1 - 2 * s + theta, h2, q2 + theta)),
    )


def solve(inst: LocationInstance) -> LocationSolution:
    """Optimal value and the full optimal set of ``inst`` in closed form.

    Raises:
        Infeasible: the distance bounds and strip admit no common point.
    """
    sc = derive_scalars(inst)
    s, t = inst.strip if inst.strip is not None else (None, None)
    _raise_if_infeasible(sc, s, t, inst.mode)
    strip = inst.strip if inst.uses_strip else None
    theta, (l1, r1), (l2, r2) = _theta_and_bounds(sc, strip, inst.mode)
    u1 = AffineInAlpha(l1, r1)
    u2 = AffineInAlpha(l2, r2)
    bps = _breakpoints(u1, u2, strip)
    polyline = tuple(_u_to_x(u1(a), u2(a), strip) for a in (0.0, *bps, 1.0))
    return LocationSolution(
        theta=theta,
        u1_alpha=u1,
        u2_alpha=u2,
        strip=strip,
        alpha_breakpoints=bps,
        polyline=polyline,
        mode=inst.mode,
        scalars=sc,
    )


# -- tropical route ------------------------------------------------------------

def build_tropical_problem(inst: LocationInstance) -> BoxConstrainedProblem:
    """The equivalent two-dimensional tropical problem in Chebyshev coordinates."""
    sc = derive_scalars(inst)
    p = TropVector.column(sc.p1, sc.p2)
    q = TropVector.column(sc.q1, sc.q2)
    if inst.uses_bounds:
        g = TropVector.column(sc.g1, sc.g2)
        h = TropVector.column(sc.h1, sc.h2)
    else:
        g = tropopt.bottom_vector(2)
        h = tropopt.huge_vector(2)
    if inst.uses_strip:
        s, t = inst.strip
        B = TropMatrix.from_rows([[BOTTOM, 2 * s], [-2 * t, BOTTOM]])
    else:
        B = TropMatrix.zeros(2)
    return BoxConstrainedProblem(p, q, g, h, B, TROPICAL_MODE[inst.mode])


class TropicalPath(NamedTuple):
    theta: float
    endpoints: tuple
    problem: BoxConstrainedProblem
    result: TropSolverResult


def solve_via_tropical(inst: LocationInstance) -> TropicalPath:
    """Solve through the generic tropical solver and map back to the plane."""
    prob = build_tropical_problem(inst)
    res = tropopt.solve(prob)
    ends = []
    for u in (res.u_lower, res.u_upper):
        y = mat_mul(res.b_star, u)
        ends.append(from_chebyshev(tuple(y)))
    return TropicalPath(res.theta, tuple(ends), prob, res)


# -- application ---------------------------------------------------------------

def cctv_instance(cameras, cable_length: float, strip=None) -> LocationInstance:
    """Instance for placing a control room that serves wired cameras.

    Each camera is ``(x, y, height)`` or ``((x, y), height)``; the addend is
    the vertical cable run and what remains of ``cable_length`` bounds the
    horizontal run.
    """
    points, heights = [], []
    for cam in cameras:
        if len(cam) == 2:
            (x, y), hgt = cam
        else:
            x, y, hgt = cam
        points.append((x, y))
        heights.append(float(hgt))
    for j, hgt in enumerate(heights):
        if hgt < 0:
            raise BoundsError(f"camera {j}: negative height {hgt}")
        if hgt > cable_length:
            raise BoundsError(
                f"camera {j}: height {hgt} exceeds cable length {cable_length}; unreachable"
            )
    return LocationInstance(
        points=tuple(points),
        addends=tuple(heights),
        distance_bounds=tuple(cable_length - hgt for hgt in heights),
        strip=None if strip is None else tuple(strip),
        mode="distance" if strip is None else "full",
    )
