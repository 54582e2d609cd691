"""UCB1 and Beta-Bernoulli Thompson sampling over all arms"""

from dataclasses import dataclass

import numpy as np

from fpbandit.policies.base_policy import BasePolicy
from fpbandit.signal_processing.estimators import empirical_mean, ucb_index


@dataclass
class BaselineState:
    """
    State shared by the baseline policies

    :param pull_counts: pulls of every arm
    :param reward_sums: reward sums of every arm
    :param posterior_a: Beta posterior parameter a_i of every arm (Thompson sampling)
    :param posterior_b: Beta posterior parameter b_i of every arm (Thompson sampling)
    """

    pull_counts: np.ndarray
    reward_sums: np.ndarray
    posterior_a: np.ndarray
    posterior_b: np.ndarray

    @classmethod
    def uniform_prior(cls, arm_count: int) -> "BaselineState":
        return cls(
            pull_counts=np.zeros(arm_count, dtype=np.int64),
            reward_sums=np.zeros(arm_count, dtype=np.float64),
            posterior_a=np.ones(arm_count, dtype=np.float64),
            posterior_b=np.ones(arm_count, dtype=np.float64),
        )


def ucb1_select(state: BaselineState, t: int) -> int:
    """
    argmax of mu_hat_i + sqrt(2 log(t) / n_i), ties to the smallest index

    :param state: baseline state with every arm pulled at least once
    :param t: current time
    :return: the arm
    """
    arm_count = state.pull_counts.shape[0]
    if t < arm_count:
        raise ValueError(f"UCB1 needs t >= L = {arm_count}, got t = {t}")
    means = empirical_mean(state.reward_sums, state.pull_counts)
    return int(np.argmax(ucb_index(means, state.pull_counts, t)))


def thompson_select(state: BaselineState, rng: np.random.Generator) -> int:
    """
    Draw psi_i ~ Beta(a_i, b_i) for every arm and return the argmax, ties to the smallest index

    :param state: baseline state
    :param rng: policy generator
    :return: the arm
    """
    return int(np.argmax(rng.beta(state.posterior_a, state.posterior_b)))


def thompson_update(
    state: BaselineState, arm: int, reward: float, rng: np.random.Generator
) -> None:
    """
    Conjugate update (a_i, b_i) -> (a_i + r, b_i + 1 - r). Rewards strictly between 0 and 1
    are first replaced by a Bernoulli draw with that mean.

    :param state: baseline state
    :param arm: the arm played
    :param reward: its reward in [0, 1]
    :param rng: policy generator
    """
    if reward != 0 and reward != 1:
        reward = float(rng.random() < reward)
    state.posterior_a[arm] += reward
    state.posterior_b[arm] += 1 - reward


class Ucb1(BasePolicy):
    """
    UCB1: pulls every arm once in order, then the arm with the largest UCB index

    :param arm_count: number of arms L
    :param horizon: number of steps T
    """

    def __init__(self, arm_count: int, horizon: int) -> None:
        super().__init__(arm_count, horizon)
        self.state = BaselineState.uniform_prior(arm_count)
        self.state.pull_counts = self.pull_counts
        self.state.reward_sums = self.reward_sums

    def select_arm(self) -> int:
        if self.t < self.arm_count:
            return self.t
        return ucb1_select(self.state, self.t + 1)


class ThompsonSampling(BasePolicy):
    """
    Thompson sampling with independent Beta(1, 1) priors

    :param arm_count: number of arms L
    :param horizon: number of steps T
    :param rng: generator for posterior draws and reward binarisation
    """

    def __init__(
        self, arm_count: int, horizon: int, rng: np.random.Generator
    ) -> None:
        super().__init__(arm_count, horizon)
        self.rng = rng
        self.state = BaselineState.uniform_prior(arm_count)
        self.state.pull_counts = self.pull_counts
        self.state.reward_sums = self.reward_sums

    def select_arm(self) -> int:
        return thompson_select(self.state, self.rng)

    def update(self, arm: int, reward: float) -> None:
        super().update(arm, reward)
        thompson_update(self.state, arm, reward, self.rng)
