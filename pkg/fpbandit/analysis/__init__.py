from fpbandit.analysis.constants import (
    ConstantsReport,
    constants,
    episode_sum,
    episode_sum_bound,
    exploration_horizon,
    k_threshold,
    regret_upper_bound,
    ucb_log_coefficient,
)
from fpbandit.analysis.structure import StructuralReport, analyze, best_arm, best_arms

__all__ = [
    "ConstantsReport",
    "StructuralReport",
    "analyze",
    "best_arm",
    "best_arms",
    "constants",
    "episode_sum",
    "episode_sum_bound",
    "exploration_horizon",
    "k_threshold",
    "regret_upper_bound",
    "ucb_log_coefficient",
]
