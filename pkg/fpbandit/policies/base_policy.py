from abc import ABC, abstractmethod
from typing import Optional

import numpy as np


class BasePolicy(ABC):
    """
    Base class for sequential arm selection policies. Subclasses implement `select_arm()`
    and may extend `update()`; the engine calls the two alternately, once per time step.
    `step()` wraps both for callers that feed back the previous reward.

    :param arm_count: number of arms L
    :param horizon: number of steps T the policy will be asked for
    """

    def __init__(self, arm_count: int, horizon: int) -> None:
        self.arm_count = arm_count
        self.horizon = horizon
        self.pull_counts = np.zeros(arm_count, dtype=np.int64)
        self.reward_sums = np.zeros(arm_count, dtype=np.float64)
        self.t = 0
        self._last_arm: Optional[int] = None

    @abstractmethod
    def select_arm(self) -> int:
        """Choose the arm for step t + 1"""

    @property
    def episode_count(self) -> Optional[int]:
        """Number of completed episodes, None for policies without episodes"""
        return None

    def update(self, arm: int, reward: float) -> None:
        """
        Record the reward of the arm played at the current step

        :param arm: the arm that was played
        :param reward: its reward in [0, 1]
        """
        self.pull_counts[arm] += 1
        self.reward_sums[arm] += reward
        self.t += 1

    def step(self, last_reward: Optional[float] = None) -> Optional[int]:
        """
        Feed back the reward of the previously returned arm and get the next one. The
        call that delivers the reward of step T returns None, so T + 1 calls play T arms.

        :param last_reward: reward of the previous arm, None at the first step
        :return: the arm to play, None once all T rewards are recorded
        """
        if self._last_arm is None:
            if self.t >= self.horizon:
                raise RuntimeError(
                    f"policy called beyond its horizon T = {self.horizon}"
                )
            if last_reward is not None:
                raise ValueError(
                    "no arm was played yet, there is no reward to feed back"
                )
        else:
            if last_reward is None:
                raise ValueError("the reward of the previous arm is missing")
            self.update(self._last_arm, last_reward)
            self._last_arm = None
            if self.t >= self.horizon:
                return None
        self._last_arm = self.select_arm()
        return self._last_arm
