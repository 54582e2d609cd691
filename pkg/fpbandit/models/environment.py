from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from fpbandit.common.enumerations import RewardFamily
from fpbandit.common.exceptions import InstanceError
from fpbandit.common.utils import make_generators
from fpbandit.models.parameter_set import ParameterSet


@dataclass(frozen=True, eq=False)
class Environment:
    """
    A bandit instance: the parameter set and the true parameter theta_o governing rewards.

    Every arm owns an independent PCG64 stream spawned from the seed, so the k-th reward
    of an arm is the same whichever policy asks for it and whenever it is asked.

    :param params: the parameter set
    :param true_parameter: index of theta_o in params
    :param rng_seed: default seed of the reward streams
    """

    params: ParameterSet
    true_parameter: int
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.true_parameter < len(self.params):
            raise InstanceError(
                f"true parameter index {self.true_parameter} out of range for {len(self.params)} parameters"
            )
        if not 0 <= self.rng_seed < 2 ** 64:
            raise InstanceError(
                f"seed must be a 64-bit unsigned integer, got {self.rng_seed}"
            )

    @property
    def arm_count(self) -> int:
        return self.params.arm_count

    @property
    def true_means(self) -> np.ndarray:
        return self.params.means[self.true_parameter]

    @property
    def true_name(self) -> str:
        return self.params.names[self.true_parameter]

    def reward_generators(
        self, seed: Optional[int] = None
    ) -> List[np.random.Generator]:
        """One generator per arm, spawned from `seed` (the environment seed by default)"""
        return make_generators(self.rng_seed if seed is None else seed, self.arm_count)

    def rewards_from_uniforms(self, arm: int, uniforms: np.ndarray) -> np.ndarray:
        """Map uniform draws on [0, 1) to rewards of `arm` by inverting its CDF under theta_o"""
        if self.params.reward_family == RewardFamily.BERNOULLI:
            return (uniforms < self.true_means[arm]).astype(np.float64)
        support, probabilities = self.params.distribution(self.true_parameter, arm)
        cdf = np.cumsum(probabilities)
        positions = np.searchsorted(cdf, uniforms, side="right")
        return support[np.minimum(positions, support.shape[0] - 1)]


def sample_reward(env: Environment, arm: int, rng: np.random.Generator) -> float:
    """
    Draw one reward of `arm` from P_arm(.; theta_o)

    :param env: the environment
    :param arm: arm index
    :param rng: the generator owning this arm's stream
    :return: a reward in [0, 1]
    """
    if not 0 <= arm < env.arm_count:
        raise IndexError(f"arm {arm} out of range for {env.arm_count} arms")
    return float(env.rewards_from_uniforms(arm, np.array([rng.random()]))[0])


class RewardSampler(object):
    """
    Buffered per-arm reward streams for long runs. Draws uniforms in blocks, which
    yields exactly the rewards repeated `sample_reward` calls would on the same generators.

    :param env: the environment
    :param seed: seed of the arm streams, the environment seed by default
    :param block_size: number of uniforms drawn per refill
    """

    def __init__(
        self, env: Environment, seed: Optional[int] = None, block_size: int = 4096
    ) -> None:
        self.env = env
        self.block_size = block_size
        self.generators = env.reward_generators(seed)
        self.blocks = [np.empty(0) for _ in range(env.arm_count)]
        self.positions = [0] * env.arm_count

    def sample(self, arm: int) -> float:
        position = self.positions[arm]
        block = self.blocks[arm]
        if position >= block.shape[0]:
            uniforms = self.generators[arm].random(self.block_size)
            block = self.env.rewards_from_uniforms(arm, uniforms)
            self.blocks[arm] = block
            position = 0
        self.positions[arm] = position + 1
        return float(block[position])
