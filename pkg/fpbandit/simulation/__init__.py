from fpbandit.simulation.results import (
    CSV_COLUMNS,
    BatchResult,
    PolicyCurve,
    Trajectory,
    scale_by_log,
    scaled_regret,
)
from fpbandit.simulation.runner import arm_gaps, run_batch, run_trajectory

__all__ = [
    "CSV_COLUMNS",
    "BatchResult",
    "PolicyCurve",
    "Trajectory",
    "arm_gaps",
    "run_batch",
    "run_trajectory",
    "scale_by_log",
    "scaled_regret",
]
