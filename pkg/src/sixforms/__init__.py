"""Exact F_p engine for six linear forms in three variables.

Layers: ffield (modular linear algebra), geometry (the projective plane and
the moves on a line), lindata (linear data, game moves, certificates),
planner (certificate synthesis), verifier (numeric ground truth),
counterexample (the quadratic-phase construction), cli/service (entry
points and the game session API).
"""

from .ffield import FpMatrix, PrimeModulus, det, kernel_basis, solve, sqrt_mod
from .geometry import (
    BlockState,
    Mobius,
    ProjLine2,
    ProjPoint2,
    chart_on_line,
    collinear,
    conic_through,
    euclid_word,
    sigma,
    tau_involution,
    x5_coordinates,
)
from .lindata import (
    Certificate,
    LinearDatum,
    apply_cs,
    apply_merge,
    certificate_from_json,
    certificate_to_json,
    check_trivial,
    realize_graph,
    replay,
    standard_datum,
)
from .planner import FormSystem, analyze, block_datum, block_geometry, cs_complexity, plan
from .verifier import FunctionTable, check_step_numeric, check_theorem, lambda_avg, u2_norm

__all__ = [
    "FpMatrix", "PrimeModulus", "det", "kernel_basis", "solve", "sqrt_mod",
    "BlockState", "Mobius", "ProjLine2", "ProjPoint2", "chart_on_line",
    "collinear", "conic_through", "euclid_word", "sigma", "tau_involution",
    "x5_coordinates", "Certificate", "LinearDatum", "apply_cs", "apply_merge",
    "certificate_from_json", "certificate_to_json", "check_trivial",
    "realize_graph", "replay", "standard_datum", "FormSystem", "analyze",
    "block_datum", "block_geometry", "cs_complexity", "plan",
    "FunctionTable", "check_step_numeric", "check_theorem", "lambda_avg", "u2_norm",
]
