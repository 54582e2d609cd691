from fpbandit.models.environment import Environment, RewardSampler, sample_reward
from fpbandit.models.instance import load_instance, parse_instance, resolve_parameter
from fpbandit.models.parameter_set import ParameterSet, build_parameter_set

__all__ = [
    "Environment",
    "ParameterSet",
    "RewardSampler",
    "build_parameter_set",
    "load_instance",
    "parse_instance",
    "resolve_parameter",
    "sample_reward",
]
