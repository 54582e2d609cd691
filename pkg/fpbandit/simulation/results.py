"""Containers for simulated regret curves and their CSV/JSON renderings"""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
import pandas as pd

CSV_COLUMNS = ["policy", "t", "mean_regret", "std_regret"]


@dataclass
class Trajectory:
    """
    One simulated run of one policy

    :param policy: policy identifier
    :param seed: seed of the run
    :param checkpoints: times t at which the cumulative regret was stored
    :param cumulative_regret: sum of the gaps of the arms played up to each checkpoint
    :param pull_counts_final: n_i(T) for every arm
    :param episode_count: number of episodes, FP-UCB only
    :param actions: the full action sequence when requested
    :param wall_clock: seconds spent in the run
    """

    policy: str
    seed: int
    checkpoints: np.ndarray
    cumulative_regret: np.ndarray
    pull_counts_final: np.ndarray
    episode_count: Optional[int] = None
    actions: Optional[np.ndarray] = None
    wall_clock: float = 0.0

    @property
    def final_regret(self) -> float:
        return float(self.cumulative_regret[-1])


@dataclass
class PolicyCurve:
    """
    Regret statistics of one policy over R runs

    :param mean_regret: mean cumulative regret at every checkpoint
    :param std_regret: population standard deviation at every checkpoint
    :param final_regrets: final regret of every run, in run order
    :param mean_pull_counts: mean n_i(T) of every arm
    :param episode_counts: episode count of every run, FP-UCB only
    :param wall_clock: total seconds over the runs
    """

    mean_regret: np.ndarray
    std_regret: np.ndarray
    final_regrets: np.ndarray
    mean_pull_counts: np.ndarray
    episode_counts: Optional[np.ndarray] = None
    wall_clock: float = 0.0

    @classmethod
    def from_trajectories(cls, trajectories) -> "PolicyCurve":
        curves = np.stack([trajectory.cumulative_regret for trajectory in trajectories])
        episodes = [trajectory.episode_count for trajectory in trajectories]
        return cls(
            mean_regret=curves.mean(axis=0),
            std_regret=curves.std(axis=0),
            final_regrets=curves[:, -1].copy(),
            mean_pull_counts=np.mean(
                [trajectory.pull_counts_final for trajectory in trajectories], axis=0
            ),
            episode_counts=None
            if episodes[0] is None
            else np.asarray(episodes, dtype=np.int64),
            wall_clock=float(sum(trajectory.wall_clock for trajectory in trajectories)),
        )


@dataclass
class BatchResult:
    """
    Regret curves of several policies on the same instance and seeds

    :param curves: statistics per policy identifier, in the requested order
    :param runs: number of runs R per policy
    :param base_seed: seed every run seed was split from
    :param horizon: T
    :param checkpoints: the common checkpoint times
    """

    curves: Dict[str, PolicyCurve]
    runs: int
    base_seed: int
    horizon: int
    checkpoints: np.ndarray

    def to_frame(self) -> pd.DataFrame:
        """One row per (policy, checkpoint) with columns policy, t, mean_regret, std_regret"""
        frames = [
            pd.DataFrame(
                {
                    "policy": policy,
                    "t": self.checkpoints,
                    "mean_regret": curve.mean_regret,
                    "std_regret": curve.std_regret,
                }
            )
            for policy, curve in self.curves.items()
        ]
        return pd.concat(frames, ignore_index=True)[CSV_COLUMNS]

    def to_csv(self, path: str) -> None:
        self.to_frame().to_csv(path, index=False, float_format="%.10g")

    def scaled_frame(self) -> pd.DataFrame:
        """Same layout as `to_frame` with the regret divided by log(t), for t >= 2"""
        frames = []
        for policy, curve in self.curves.items():
            steps, mean, std = scale_by_log(
                self.checkpoints, curve.mean_regret, curve.std_regret
            )
            frames.append(
                pd.DataFrame(
                    {
                        "policy": policy,
                        "t": steps,
                        "mean_regret": mean,
                        "std_regret": std,
                    }
                )
            )
        return pd.concat(frames, ignore_index=True)[CSV_COLUMNS]

    def summary(self) -> Dict[str, Any]:
        """JSON ready summary: final mean/std regret, episode counts, pulls and wall clock per policy"""
        policies = {}
        for policy, curve in self.curves.items():
            entry = {
                "final_mean_regret": float(curve.mean_regret[-1]),
                "final_std_regret": float(curve.std_regret[-1]),
                "mean_pull_counts": [float(count) for count in curve.mean_pull_counts],
                "wall_clock_seconds": curve.wall_clock,
            }
            if curve.episode_counts is not None:
                entry["mean_episode_count"] = float(np.mean(curve.episode_counts))
                entry["episode_counts"] = [int(count) for count in curve.episode_counts]
            policies[policy] = entry
        return {
            "runs": self.runs,
            "base_seed": self.base_seed,
            "horizon": self.horizon,
            "policies": policies,
        }


def scale_by_log(
    checkpoints: np.ndarray,
    mean_regret: np.ndarray,
    std_regret: Optional[np.ndarray] = None,
):
    """
    Divide regret curves by log(t), dropping the checkpoints with t < 2

    :param checkpoints: times of the curve
    :param mean_regret: regret at those times
    :param std_regret: optional standard deviation, scaled the same way
    :return: (kept times, scaled mean, scaled std or None)
    """
    checkpoints = np.asarray(checkpoints)
    keep = checkpoints >= 2
    log_t = np.log(checkpoints[keep])
    scaled_std = None if std_regret is None else np.asarray(std_regret)[keep] / log_t
    return checkpoints[keep], np.asarray(mean_regret)[keep] / log_t, scaled_std


def scaled_regret(result: BatchResult) -> Dict[str, Tuple[np.ndarray, np.ndarray]]:
    """
    Mean regret of every policy divided by log(t), for t >= 2

    :param result: the batch result
    :return: (times, scaled mean regret) per policy
    """
    scaled = {}
    for policy, curve in result.curves.items():
        steps, mean, _ = scale_by_log(result.checkpoints, curve.mean_regret)
        scaled[policy] = (steps, mean)
    return scaled
