from fpbandit.lowerbound.simplex import (
    GameSolution,
    grid_divisions,
    max_ratio,
    simplex_grid,
    solve_game,
)
from fpbandit.lowerbound.solver import (
    LowerBoundResult,
    divergence_table,
    lower_bound,
    solve_lower_bound,
)

__all__ = [
    "GameSolution",
    "LowerBoundResult",
    "divergence_table",
    "grid_divisions",
    "lower_bound",
    "max_ratio",
    "simplex_grid",
    "solve_game",
    "solve_lower_bound",
]
