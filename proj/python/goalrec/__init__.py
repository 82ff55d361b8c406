from ._goalrec import (
    GroundingError,
    ParseError,
    Problem,
    SolverError,
    backends,
    generate,
    load,
    load_text,
    optimal_cost,
    recognize,
    run_suite,
    score,
    solve_lp,
    uncertainty_ratio,
)

__all__ = [
    "GroundingError",
    "ParseError",
    "Problem",
    "SolverError",
    "backends",
    "generate",
    "load",
    "load_text",
    "optimal_cost",
    "recognize",
    "run_suite",
    "score",
    "solve_lp",
    "uncertainty_ratio",
]
