"""Tropical (max-plus) closed-form solutions of the constrained minimax
single-facility location problem with addends under rectilinear distance.

Modules:
    maxplus   -- scalars, vectors and matrices over R_max,+
    tropopt   -- the generic box/inequality constrained tropical problem
    location  -- the location problem, its transformation and closed form
    oracle    -- brute-force verification (grid search, u-box scan)
    documents -- JSON instance and solution documents
    svg       -- figures
    cli       -- the ``troploc`` command
"""

from .errors import TropError
from .location import (
    LocationInstance,
    LocationSolution,
    cctv_instance,
    derive_scalars,
    evaluate_objective,
    solve,
    solve_via_tropical,
)

__version__ = "0.1.0"

__all__ = [
    "LocationInstance",
    "LocationSolution",
    "TropError",
    "cctv_instance",
    "derive_scalars",
    "evaluate_objective",
    "solve",
    "solve_via_tropical",
]
