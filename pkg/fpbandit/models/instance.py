"""Reading bandit instances from JSON"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

from fpbandit.common.exceptions import InstanceError
from fpbandit.models.environment import Environment
from fpbandit.models.parameter_set import ParameterSet, build_parameter_set


def resolve_parameter(params: ParameterSet, reference: Any) -> int:
    """
    Find a parameter by identifier, by index or by its mean vector

    :param params: the parameter set
    :param reference: a name, an integer index or a list of means
    :return: the parameter index
    """
    if isinstance(reference, str):
        return params.index_of(reference)
    if isinstance(reference, bool):
        raise InstanceError(f"cannot use {reference} as a parameter reference")
    if isinstance(reference, int):
        if not 0 <= reference < len(params):
            raise InstanceError(f"parameter index {reference} out of range")
        return reference
    if isinstance(reference, (list, tuple)):
        return params.index_of_means(reference)
    raise InstanceError(f"cannot resolve true parameter from {reference!r}")


def parse_instance(
    data: Dict[str, Any],
    true_parameter: Optional[Any] = None,
    seed: int = 0,
) -> Environment:
    """
    Build an environment from a parsed instance document.

    :param data: the instance document, see `build_parameter_set` for the "parameters" block
    :param true_parameter: overrides the document's "true_parameter"
    :param seed: reward stream seed
    :return: the environment
    """
    if not isinstance(data, dict):
        raise InstanceError("an instance must be a JSON object")
    if "parameters" not in data:
        raise InstanceError("instance has no 'parameters' block")
    arms = data.get("arms")
    params = build_parameter_set(
        data["parameters"],
        arm_count=None if arms is None else int(arms),
        reward_family=str(data.get("reward_family", "bernoulli")).lower(),
        tie_epsilon=float(data.get("tie_epsilon", 0.0)),
    )
    reference = (
        true_parameter if true_parameter is not None else data.get("true_parameter")
    )
    if reference is None:
        raise InstanceError("instance names no true parameter")

    return Environment(params, resolve_parameter(params, reference), seed)


def load_instance(
    path: Union[str, Path],
    true_parameter: Optional[Any] = None,
    seed: int = 0,
) -> Environment:
    """
    Read an instance file. Malformed JSON propagates as json.JSONDecodeError.

    :param path: path to the JSON instance
    :param true_parameter: overrides the file's true parameter
    :param seed: reward stream seed
    :return: the environment
    """
    with open(path) as f:
        data = json.load(f)
    return parse_instance(data, true_parameter=true_parameter, seed=seed)
