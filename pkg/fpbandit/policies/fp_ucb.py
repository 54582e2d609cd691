"""FP-UCB: episode based UCB over a known finite parameter set"""

from collections import deque
from dataclasses import dataclass, field
from typing import Deque, List, Optional, Tuple

import numpy as np

from fpbandit.analysis.structure import best_arms
from fpbandit.models.parameter_set import ParameterSet
from fpbandit.policies.base_policy import BasePolicy
from fpbandit.signal_processing.estimators import confidence_radius, empirical_mean


@dataclass
class FpUcbState:
    """
    Mutable state of FP-UCB

    :param candidate_arms: the set A of arms optimal for some parameter, ascending
    :param pull_counts: n_i(t) for every arm
    :param reward_sums: reward sums for every arm
    :param episode: number k of the next episode
    :param episode_start: time t_k at which the current episode started
    :param pending_queue: arms still to be played in the current episode
    :param horizon: T
    :param episode_log: (t_k, arms played) of every episode started so far
    """

    candidate_arms: Tuple[int, ...]
    pull_counts: np.ndarray
    reward_sums: np.ndarray
    episode: int = 1
    episode_start: int = 0
    pending_queue: Deque[int] = field(default_factory=deque)
    horizon: int = 0
    episode_log: List[Tuple[int, Tuple[int, ...]]] = field(default_factory=list)


def fpucb_episode_set(
    state: FpUcbState, params: ParameterSet, optimal: Optional[np.ndarray] = None
) -> Tuple[int, ...]:
    """
    A_k: optimal arms of the parameters whose means on every arm of A lie within
    sqrt(3 log(k) / n_i) of the empirical means

    :param state: the FP-UCB state at the start of episode k
    :param params: the parameter set
    :param optimal: precomputed a*(theta) for every parameter
    :return: the arms, ascending and without duplicates, possibly empty
    """
    if optimal is None:
        optimal = best_arms(params)
    candidates = np.asarray(state.candidate_arms)
    counts = state.pull_counts[candidates]
    radius = confidence_radius(state.episode, counts)
    means = empirical_mean(state.reward_sums[candidates], counts)
    consistent = np.all(np.abs(means - params.means[:, candidates]) <= radius, axis=1)
    return tuple(int(arm) for arm in np.unique(optimal[consistent]))


class FpUcb(BasePolicy):
    """
    FP-UCB. Plays every arm of A once, then runs episodes: each episode plays the
    arms of A_k once in ascending order, or all of A when A_k is empty. The last
    episode is cut at the horizon.

    :param params: the parameter set the true parameter belongs to
    :param horizon: number of steps T
    """

    def __init__(self, params: ParameterSet, horizon: int) -> None:
        super().__init__(params.arm_count, horizon)
        self.params = params
        self.optimal = best_arms(params)
        self.state = FpUcbState(
            candidate_arms=tuple(int(arm) for arm in np.unique(self.optimal)),
            pull_counts=self.pull_counts,
            reward_sums=self.reward_sums,
            horizon=horizon,
        )

    @property
    def candidate_arms(self) -> Tuple[int, ...]:
        return self.state.candidate_arms

    @property
    def episode_count(self) -> int:
        return len(self.state.episode_log)

    @property
    def episode_log(self) -> List[Tuple[int, Tuple[int, ...]]]:
        return self.state.episode_log

    def _start_episode(self) -> None:
        arms = fpucb_episode_set(self.state, self.params, self.optimal)
        played = arms if arms else self.state.candidate_arms
        self.state.episode_start = self.t
        self.state.episode_log.append((self.t, played))
        self.state.pending_queue.extend(played)
        self.state.episode += 1

    def select_arm(self) -> int:
        candidates = self.state.candidate_arms
        if self.t < len(candidates):
            return candidates[self.t]
        if not self.state.pending_queue:
            self._start_episode()
        return self.state.pending_queue.popleft()
