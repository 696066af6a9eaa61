"""Closed-form solutions of the box- and inequality-constrained problem

    minimize    x^- p  +  q^- x
    subject to  B x <= x,   g <= x <= h

over regular vectors ``x`` in R_max,+, together with its three reduced
variants (inequality only, box only, unconstrained).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import DegenerateInput, Infeasible, NotRegular, ShapeMismatch
from .maxplus import (
    BOTTOM,
    ONE,
    TropMatrix,
    TropScalar,
    TropVector,
    conjugate,
    kleene_star,
    mat_mul,
    scale,
    tadd,
    tinv,
    tle,
    tmul,
    tpow,
    vec_add,
)

MODES = ("full", "inequality_only", "box_only", "unconstrained")

# Stand-in for "no upper bound" in h.  Large enough to never win a max
# against location data, small enough that h - x stays exact.
HUGE_BOUND = 1e15


@dataclass(frozen=True)
class BoxConstrainedProblem:
    p: TropVector
    q: TropVector
    g: TropVector
    h: TropVector
    B: TropMatrix
    mode: str = "full"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        n = len(self.p)
        for name in ("q", "g", "h"):
            v = getattr(self, name)
            if len(v) != n or v.orientation != "column":
                raise ShapeMismatch(f"{name} must be a column vector of length {n}")
        if self.p.orientation != "column":
            raise ShapeMismatch("p must be a column vector")
        if self.B.shape != (n, n):
            raise ShapeMismatch(f"B must be {n}x{n}, got {self.B.shape}")

    @property
    def n(self) -> int:
        return len(self.p)

    @classmethod
    def create(cls, p, q, g=None, h=None, B=None, mode="full") -> "BoxConstrainedProblem":
        """Build a problem, filling absent constraint data with neutral encodings.

        A missing ``g`` becomes the zero vector, a missing ``h`` the vector of
        :data:`HUGE_BOUND` and a missing ``B`` the zero matrix; with these the
        corresponding constraint is void.
        """
        p = _column(p)
        q = _column(q)
        n = len(p)
        g = bottom_vector(n) if g is None else _column(g)
        h = huge_vector(n) if h is None else _column(h)
        B = TropMatrix.zeros(n) if B is None else (B if isinstance(B, TropMatrix) else TropMatrix.from_rows(B))
        return cls(p, q, g, h, B, mode)

    def as_full(self) -> "BoxConstrainedProblem":
        """The same problem posed in full mode, with unused constraints voided."""
        n = self.n
        g, h, B = self.g, self.h, self.B
        if self.mode in ("inequality_only", "unconstrained"):
            g, h = bottom_vector(n), huge_vector(n)
        if self.mode in ("box_only", "unconstrained"):
            B = TropMatrix.zeros(n)
        return replace(self, g=g, h=h, B=B, mode="full")


@dataclass(frozen=True)
class TropSolverResult:
    """Optimum and the box of generating vectors ``u``; solutions are ``B* u``."""

    theta: float
    b_star: TropMatrix
    u_lower: TropVector
    u_upper: TropVector


def _column(v) -> TropVector:
    if isinstance(v, TropVector):
        return v if v.orientation == "column" else v.transpose()
    return TropVector.column(tuple(v))


def bottom_vector(n: int) -> TropVector:
    return TropVector.zeros(n)


def huge_vector(n: int) -> TropVector:
    return TropVector.column((HUGE_BOUND,) * n)


def objective(x: TropVector, p: TropVector, q: TropVector) -> TropScalar:
    """``x^- p + q^- x`` for a regular ``x``."""
    if not x.is_regular:
        raise NotRegular("objective is defined for regular x only")
    x, p, q = _column(x), _column(p), _column(q)
    return tadd(mat_mul(conjugate(x), p), mat_mul(conjugate(q), x))


def _require(prob: BoxConstrainedProblem, *, h: bool = False) -> None:
    if prob.p.is_zero:
        raise DegenerateInput("p must have at least one finite element")
    if not prob.q.is_regular:
        raise DegenerateInput("q must be regular")
    if h and not prob.h.is_regular:
        raise DegenerateInput("h must be regular")


def _finite_theta(theta) -> float:
    # p nonzero and q regular keep theta finite; anything else is a bug here.
    if theta is BOTTOM:
        raise AssertionError("internal error: optimum evaluated to BOTTOM")
    return theta


def _check_box_feasible(h_conj: TropVector, bstar: TropMatrix, g: TropVector) -> None:
    worst, where = BOTTOM, None
    for i, hi in enumerate(h_conj):
        for k, gk in enumerate(g):
            term = tmul(tmul(hi, bstar[i, k]), gk)
            if where is None or not tle(term, worst):
                worst, where = term, (i, k)
    if not tle(worst, ONE):
        i, k = where
        label = f"h{i + 1}^-1 B*[{i + 1},{k + 1}] g{k + 1}"
        raise Infeasible(
            f"constraints are incompatible: term {label} = {worst} > 0",
            term_index=i * len(g) + k,
            term=label,
            value=worst,
        )


def solve_full(prob: BoxConstrainedProblem) -> TropSolverResult:
    _require(prob, h=True)
    bstar = kleene_star(prob.B)
    h_conj = conjugate(prob.h)
    q_conj = conjugate(prob.q)
    _check_box_feasible(h_conj, bstar, prob.g)

    qB = mat_mul(q_conj, bstar)
    hB = mat_mul(h_conj, bstar)
    theta = tadd(
        tpow(mat_mul(qB, prob.p), 0.5),
        tadd(mat_mul(hB, prob.p), mat_mul(qB, prob.g)),
    )
    theta = _finite_theta(theta)
    theta_inv = tinv(theta)

    u_lower = vec_add(prob.g, scale(theta_inv, prob.p))
    u_upper = conjugate(mat_mul(vec_add(h_conj, scale(theta_inv, q_conj)), bstar))
    return TropSolverResult(theta, bstar, u_lower, u_upper)


def solve_inequality_only(prob: BoxConstrainedProblem) -> TropSolverResult:
    _require(prob)
    bstar = kleene_star(prob.B)
    qB = mat_mul(conjugate(prob.q), bstar)
    theta = _finite_theta(tpow(mat_mul(qB, prob.p), 0.5))
    u_lower = scale(tinv(theta), prob.p)
    u_upper = scale(theta, conjugate(qB))
    return TropSolverResult(theta, bstar, u_lower, u_upper)


def solve_box_only(prob: BoxConstrainedProblem) -> TropSolverResult:
    _require(prob, h=True)
    for i, (gi, hi) in enumerate(zip(prob.g, prob.h)):
        if not tle(gi, hi):
            raise Infeasible(
                f"g{i + 1} = {gi} exceeds h{i + 1} = {hi}",
                term_index=i,
                term=f"g{i + 1} h{i + 1}^-1",
                value=gi - hi,
            )
    q_conj = conjugate(prob.q)
    h_conj = conjugate(prob.h)
    theta = tadd(
        tpow(mat_mul(q_conj, prob.p), 0.5),
        tadd(mat_mul(h_conj, prob.p), mat_mul(q_conj, prob.g)),
    )
    theta = _finite_theta(theta)
    theta_inv = tinv(theta)
    lower = vec_add(prob.g, scale(theta_inv, prob.p))
    upper = conjugate(vec_add(h_conj, scale(theta_inv, q_conj)))
    return TropSolverResult(theta, TropMatrix.identity(prob.n), lower, upper)


def solve_unconstrained(prob: BoxConstrainedProblem) -> TropSolverResult:
    _require(prob)
    theta = _finite_theta(tpow(mat_mul(conjugate(prob.q), prob.p), 0.5))
    lower = scale(tinv(theta), prob.p)
    upper = scale(theta, prob.q)
    return TropSolverResult(theta, TropMatrix.identity(prob.n), lower, upper)


_SOLVERS = {
    "full": solve_full,
    "inequality_only": solve_inequality_only,
    "box_only": solve_box_only,
    "unconstrained": solve_unconstrained,
}


def solve(prob: BoxConstrainedProblem) -> TropSolverResult:
    """Dispatch on ``prob.mode``."""
    return _SOLVERS[prob.mode](prob)


def sample_solutions(result: TropSolverResult, count: int) -> list:
    """``count`` optimal vectors ``B* u`` with ``u`` swept linearly across its box.

    The sweep runs coordinate-wise from ``u_lower`` (first sample) to
    ``u_upper`` (last sample).  A BOTTOM lower bound means the coordinate is
    unbounded below; the upper bound is used for it throughout.
    """
    if count < 1:
        raise ValueError("count must be positive")
    lo = [hi if l is BOTTOM else l for l, hi in zip(result.u_lower, result.u_upper)]
    hi = list(result.u_upper)
    out = []
    for k in range(count):
        a = 0.0 if count == 1 else k / (count - 1)
        u = TropVector.column(tuple((1 - a) * l + a * h for l, h in zip(lo, hi)))
        out.append(mat_mul(result.b_star, u))
    return out
