import numpy as np

from fpbandit.common.enumerations import PolicyType
from fpbandit.common.exceptions import UnknownPolicyError
from fpbandit.models.parameter_set import ParameterSet
from fpbandit.policies.base_policy import BasePolicy
from fpbandit.policies.baselines import (
    BaselineState,
    ThompsonSampling,
    Ucb1,
    thompson_select,
    thompson_update,
    ucb1_select,
)
from fpbandit.policies.fp_ucb import FpUcb, FpUcbState, fpucb_episode_set

POLICY_NAMES = tuple(policy.value for policy in PolicyType)


def policy_key(name: str) -> int:
    """Fixed registry index of a policy, used to split its random stream from the run seed"""
    if name not in POLICY_NAMES:
        raise UnknownPolicyError(name, POLICY_NAMES)
    return POLICY_NAMES.index(name)


def make_policy(
    name: str, params: ParameterSet, horizon: int, seed: int = 0
) -> BasePolicy:
    """
    Build a policy from its identifier

    :param name: one of POLICY_NAMES
    :param params: the parameter set, only FP-UCB uses more than its arm count
    :param horizon: number of steps T
    :param seed: seed of the policy's own generator
    :return: the policy
    """
    policy_type = PolicyType(POLICY_NAMES[policy_key(name)])
    if policy_type == PolicyType.FP_UCB:
        return FpUcb(params, horizon)
    if policy_type == PolicyType.UCB1:
        return Ucb1(params.arm_count, horizon)
    rng = np.random.Generator(np.random.PCG64(seed))
    return ThompsonSampling(params.arm_count, horizon, rng)


__all__ = [
    "POLICY_NAMES",
    "BasePolicy",
    "BaselineState",
    "FpUcb",
    "FpUcbState",
    "ThompsonSampling",
    "Ucb1",
    "fpucb_episode_set",
    "make_policy",
    "policy_key",
    "thompson_select",
    "thompson_update",
    "ucb1_select",
]
