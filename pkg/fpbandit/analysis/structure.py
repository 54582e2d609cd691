"""Structural quantities of an instance: optimal arms, confusion sets, gaps and separations"""

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from fpbandit.common.enumerations import Regime
from fpbandit.models.parameter_set import ParameterSet


@dataclass(frozen=True)
class StructuralReport:
    """
    Structure of an instance relative to its true parameter theta_o

    :param true_parameter: index of theta_o
    :param best_arm_per_parameter: a*(theta) for every parameter
    :param candidate_arms: the set A of all optimal arms, ascending
    :param true_best_arm: a*(theta_o)
    :param confusion_parameters: B(theta_o), ascending parameter indices
    :param confusion_arms: C(theta_o), ascending arm indices
    :param gaps: Delta_i for every candidate arm
    :param arm_gaps: Delta_i for every arm, candidate or not
    :param separations: beta_i for every confusion arm
    :param alpha1: |mu_a*(theta_o) - mu_a*(theta)| for every parameter, a* = a*(theta_o)
    :param regime: bounded when B(theta_o) is empty, logarithmic otherwise
    :param ambiguous_parameters: parameters whose maximum mean is attained by several arms
    """

    true_parameter: int
    best_arm_per_parameter: Tuple[int, ...]
    candidate_arms: Tuple[int, ...]
    true_best_arm: int
    confusion_parameters: Tuple[int, ...]
    confusion_arms: Tuple[int, ...]
    gaps: Dict[int, float]
    arm_gaps: Tuple[float, ...]
    separations: Dict[int, float]
    alpha1: Tuple[float, ...]
    regime: Regime
    ambiguous_parameters: Tuple[int, ...]


def _maximizer_mask(params: ParameterSet) -> np.ndarray:
    row_max = params.means.max(axis=1, keepdims=True)
    return params.means >= row_max - params.tie_epsilon


def best_arm(params: ParameterSet, theta: int) -> int:
    """
    a*(theta): the smallest arm index attaining the largest mean under theta (within tie_epsilon)

    :param params: the parameter set
    :param theta: parameter index
    :return: the optimal arm
    """
    means = params.means[params.check_index(theta)]
    return int(np.argmax(means >= means.max() - params.tie_epsilon))


def best_arms(params: ParameterSet) -> np.ndarray:
    """a*(theta) for every parameter, same tie rule as `best_arm`"""
    return np.argmax(_maximizer_mask(params), axis=1)


def analyze(params: ParameterSet, true_parameter: int) -> StructuralReport:
    """
    Compute the candidate set, the confusion sets, gaps and separations for theta_o

    :param params: the parameter set
    :param true_parameter: index of theta_o
    :return: the structural report
    """
    true_parameter = params.check_index(true_parameter)
    optimal = best_arms(params)
    true_best = int(optimal[true_parameter])
    true_means = params.means[true_parameter]

    alpha1 = np.abs(true_means[true_best] - params.means[:, true_best])
    confused = (optimal != true_best) & (alpha1 <= params.tie_epsilon)
    confusion_parameters = tuple(int(theta) for theta in np.flatnonzero(confused))
    confusion_arms = tuple(
        sorted({int(optimal[theta]) for theta in confusion_parameters})
    )

    candidate_arms = tuple(int(arm) for arm in np.unique(optimal))
    arm_gaps = true_means[true_best] - true_means
    separations = {}
    for arm in confusion_arms:
        members = [theta for theta in confusion_parameters if optimal[theta] == arm]
        separations[arm] = float(
            np.min(np.abs(true_means[arm] - params.means[members, arm]))
        )

    ties = _maximizer_mask(params).sum(axis=1)
    return StructuralReport(
        true_parameter=true_parameter,
        best_arm_per_parameter=tuple(int(arm) for arm in optimal),
        candidate_arms=candidate_arms,
        true_best_arm=true_best,
        confusion_parameters=confusion_parameters,
        confusion_arms=confusion_arms,
        gaps={arm: float(arm_gaps[arm]) for arm in candidate_arms},
        arm_gaps=tuple(float(gap) for gap in arm_gaps),
        separations=separations,
        alpha1=tuple(float(alpha) for alpha in alpha1),
        regime=Regime.LOGARITHMIC if confusion_parameters else Regime.BOUNDED,
        ambiguous_parameters=tuple(int(theta) for theta in np.flatnonzero(ties > 1)),
    )
