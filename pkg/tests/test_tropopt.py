import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from troploc import tropopt
from troploc.errors import DegenerateInput, Infeasible, NotRegular
from troploc.location import from_chebyshev
from troploc.maxplus import BOTTOM, TropMatrix, TropVector, kleene_star, mat_mul
from troploc.tropopt import BoxConstrainedProblem, objective, sample_solutions, solve

from .conftest import cycle_normalised

B48 = [[BOTTOM, 8], [-16, BOTTOM]]
P, Q, G, H = (15, 5), (1, -3), (9, -1), (10, 3)


def col(*v):
    return TropVector.column(*v)


def reference_problem(mode="full", g=G):
    return BoxConstrainedProblem.create(P, Q, g, H, B48, mode)


class TestObjective:
    def test_x_equals_p_equals_q(self):
        v = col(3, -2, 7)
        assert objective(v, v, v) == 0

    def test_hand_value(self):
        assert objective(col(9, -1), col(*P), col(*Q)) == 8

    def test_bottom_p_leaves_q_term(self):
        assert objective(col(2, 3), col(BOTTOM, BOTTOM), col(1, 1)) == 2

    def test_irregular_x(self):
        with pytest.raises(NotRegular):
            objective(col(BOTTOM, 1), col(*P), col(*Q))


class TestFull:
    def test_reference_problem(self):
        res = solve(reference_problem())
        assert res.theta == 8
        assert res.u_lower == col(9, -1)
        assert res.u_upper == col(9, 1)
        assert res.b_star == TropMatrix.from_rows([[0, 8], [-16, 0]])

    def test_voided_constraints(self):
        p = (2.5, -1, 4)
        res = solve(BoxConstrainedProblem.create(p, p, mode="full"))
        assert res.theta == 0
        assert res.u_lower.leq(col(*p)) and col(*p).leq(res.u_upper)

    def test_infeasible_box(self):
        with pytest.raises(Infeasible) as exc:
            solve(reference_problem(g=(20, 20)))
        # terms: h1^-1 g1 = 10, h1^-1 B*12 g2 = 18, h2^-1 B*21 g1 = -7, h2^-1 g2 = 17
        assert exc.value.value == 18
        assert exc.value.term_index == 1

    def test_missing_p(self):
        with pytest.raises(DegenerateInput):
            solve(BoxConstrainedProblem.create((BOTTOM, BOTTOM), Q))

    def test_irregular_q(self):
        with pytest.raises(DegenerateInput):
            solve(BoxConstrainedProblem.create(P, (1, BOTTOM)))


class TestReducedModes:
    def test_inequality_only(self):
        assert solve(reference_problem("inequality_only")).theta == 7

    def test_inequality_only_void_matrix(self):
        p = (1, 4)
        res = solve(BoxConstrainedProblem.create(p, p, B=TropMatrix.zeros(2), mode="inequality_only"))
        assert res.theta == 0
        assert res.u_lower == res.u_upper == col(*p)

    def test_box_only(self):
        res = solve(reference_problem("box_only"))
        assert res.theta == 8

    def test_box_only_collapse(self):
        v = (3, -3)
        res = solve(BoxConstrainedProblem.create(v, v, v, v, mode="box_only"))
        assert res.theta == 0
        assert res.u_lower == res.u_upper == col(*v)

    def test_box_only_lower_bound(self):
        res = solve(reference_problem("box_only"))
        assert res.u_lower == col(max(9, 15 - 8), max(-1, 5 - 8))

    def test_box_only_infeasible(self):
        with pytest.raises(Infeasible):
            solve(BoxConstrainedProblem.create(P, Q, (11, 0), H, mode="box_only"))

    def test_unconstrained(self):
        res = solve(reference_problem("unconstrained"))
        assert res.theta == 7
        assert res.u_lower == col(8, -2)
        assert res.u_upper == col(8, 4)

    def test_unconstrained_p_equals_q(self):
        res = solve(BoxConstrainedProblem.create((1, 2), (1, 2), mode="unconstrained"))
        assert res.theta == 0
        assert res.u_lower == res.u_upper == col(1, 2)


class TestSampling:
    def test_single_sample(self):
        res = solve(reference_problem())
        assert sample_solutions(res, 1) == [mat_mul(res.b_star, res.u_lower)]

    def test_endpoints_in_plane(self):
        res = solve(reference_problem())
        xs = [from_chebyshev(tuple(x)) for x in sample_solutions(res, 2)]
        assert xs == [(5, 4), (4, 5)]

    def test_bad_count(self):
        with pytest.raises(ValueError):
            sample_solutions(solve(reference_problem()), 0)


# -- brute force -----------------------------------------------------------------

def _brute(prob):
    """Minimum of the objective over the half-integer lattice in [g, h]."""
    B = np.array(prob.B.to_floats())
    p, q = np.array(prob.p.to_floats()), np.array(prob.q.to_floats())
    g, h = np.array(prob.g.to_floats()), np.array(prob.h.to_floats())
    # integer data: some optimum sits on the half-integer lattice
    axes = [np.arange(lo, hi + 0.25, 0.5) for lo, hi in zip(g, h)]
    X = np.array(list(itertools.product(*axes)))
    ok = np.ones(len(X), dtype=bool)
    Bx = np.max(B[None] + X[:, None, :], axis=2)
    ok &= np.all(Bx <= X + 1e-12, axis=1)
    obj = np.maximum(np.max(p - X, axis=1), np.max(X - q, axis=1))
    return obj[ok].min()


def _random_problem(rng, n):
    B = rng.integers(-6, 4, (n, n)).astype(float)
    mask = rng.random((n, n)) < 0.4
    rows = [[BOTTOM if mask[i, j] else B[i, j] for j in range(n)] for i in range(n)]
    A = TropMatrix.from_rows(rows)
    # push the maximal cycle mean down to <= 0 so B* exists
    A = cycle_normalised([list(r) for r in A.rows])
    x0 = rng.integers(-4, 5, n).astype(float)
    x0 = np.array(mat_mul(kleene_star(A), col(*x0)).to_floats())  # x0 with A x0 <= x0
    g = x0 - rng.integers(0, 4, n)
    h = x0 + rng.integers(0, 4, n)
    p = rng.integers(-6, 7, n).astype(float)
    q = p - rng.integers(-3, 6, n)
    return BoxConstrainedProblem.create(tuple(p), tuple(q), tuple(g), tuple(h), A, "full")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_full_matches_brute_force(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(25):
        prob = _random_problem(rng, n)
        res = solve(prob)
        assert res.theta == pytest.approx(_brute(prob), abs=1e-12)
        for x in sample_solutions(res, 5):
            assert objective(x, prob.p, prob.q) == pytest.approx(res.theta, abs=1e-12)
            assert prob.g.leq(x) and x.leq(prob.h)
            assert mat_mul(prob.B, x).leq(x)


@pytest.mark.parametrize("mode", ["inequality_only", "box_only", "unconstrained"])
def test_reduced_modes_agree_with_full(mode):
    rng = np.random.default_rng(7)
    for _ in range(30):
        prob = _random_problem(rng, 3)
        reduced = BoxConstrainedProblem(prob.p, prob.q, prob.g, prob.h, prob.B, mode)
        a, b = solve(reduced), solve(reduced.as_full())
        assert a.theta == b.theta


def test_constraint_monotonicity():
    rng = np.random.default_rng(11)
    for _ in range(40):
        prob = _random_problem(rng, 3)
        th = {m: solve(BoxConstrainedProblem(prob.p, prob.q, prob.g, prob.h, prob.B, m)).theta
              for m in tropopt.MODES}
        assert th["unconstrained"] <= th["inequality_only"] <= th["full"]
        assert th["unconstrained"] <= th["box_only"] <= th["full"]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(-20, 20), st.integers(0, 10)), min_size=1, max_size=5))
def test_unconstrained_box_nonempty(pairs):
    p = tuple(float(a) for a, _ in pairs)
    q = tuple(float(a - b) for a, b in pairs)
    res = solve(BoxConstrainedProblem.create(p, q, mode="unconstrained"))
    assert res.u_lower.leq(res.u_upper)
    # some coordinate is pinned: that is where the optimum is attained
    assert min(u - l for l, u in zip(res.u_lower, res.u_upper)) == 0
