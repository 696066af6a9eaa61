import numpy as np
import pytest
from hypothesis import strategies as st

from troploc.location import LocationInstance, check_feasibility, derive_scalars
from troploc.maxplus import BOTTOM, TropMatrix, mat_mul, trace

REF_POINTS = ((1, 2), (5, 9), (7, 5))
REF_ADDENDS = (2, 1, 1)
REF_BOUNDS = (7, 5, 5)
REF_STRIP = (4, 8)


def reference_instance(mode="full", bounds=REF_BOUNDS):
    return LocationInstance(REF_POINTS, REF_ADDENDS, bounds, REF_STRIP, mode)


@pytest.fixture
def reference():
    return reference_instance()


def random_feasible_instance(rng, max_m=6):
    """Integer data; distance bounds grown until the full mode is feasible."""
    m = int(rng.integers(1, max_m + 1))
    pts = tuple(tuple(int(v) for v in rng.integers(-10, 11, 2)) for _ in range(m))
    w = tuple(int(v) for v in rng.integers(0, 6, m))
    xs = [p[0] for p in pts]
    s, t = sorted(int(v) for v in rng.integers(min(xs), max(xs) + 1, 2))
    d = [int(v) for v in rng.integers(0, 8, m)]
    while True:
        inst = LocationInstance(pts, w, tuple(d), (s, t), "full")
        if check_feasibility(derive_scalars(inst), s, t, "full"):
            return inst
        d = [v + 1 for v in d]


def random_instances(n, seed):
    rng = np.random.default_rng(seed)
    return [random_feasible_instance(rng) for _ in range(n)]


# -- hypothesis strategies -----------------------------------------------------

finite = st.integers(-10**6, 10**6).map(float) | st.floats(-1e6, 1e6, allow_nan=False)
scalars = finite | st.just(BOTTOM)


def cycle_normalised(rows):
    """Shift every finite entry down so the largest cycle mean is <= 0."""
    a = TropMatrix.from_rows(rows)
    n = a.shape[0]
    worst = 0
    power = a
    for k in range(1, n + 1):
        tr = trace(power)
        if tr is not BOTTOM:
            worst = max(worst, -(-int(tr) // k))  # ceil(tr / k)
        power = mat_mul(power, a)
    return TropMatrix.from_rows(
        [[BOTTOM if e is BOTTOM else e - worst for e in r] for r in rows]
    )


@st.composite
def star_matrices(draw, max_n=6):
    """Integer square matrices with Tr(A) <= 0."""
    n = draw(st.integers(1, max_n))
    entry = st.integers(-20, 20).map(float) | st.just(BOTTOM)
    rows = [[draw(entry) for _ in range(n)] for _ in range(n)]
    return cycle_normalised(rows)


from pathlib import Path

import troploc

DATA = Path(troploc.__file__).parent / "data"


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
