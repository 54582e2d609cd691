"""Problem dependent constants of the FP-UCB regret bound"""

import math
from dataclasses import dataclass
from typing import Dict, Tuple

from fpbandit.analysis.structure import StructuralReport
from fpbandit.common.enumerations import Regime
from fpbandit.models.parameter_set import ParameterSet


@dataclass(frozen=True)
class ConstantsReport:
    """
    Regret bound constants for one instance

    :param k_theta: k_i(theta) for every eligible (arm, parameter) pair
    :param E_theta: E_i(theta) for the same pairs
    :param C_i: closed-form bound on the expected pulls of each eligible arm
    :param D1: constant of the bounded-regret bound
    :param D2: constant term of the logarithmic-regret bound
    :param log_coefficient: 12 * sum over C(theta_o) of Delta_i / beta_i^2
    :param regime: regime of the instance
    :param candidate_count: |A|
    """

    k_theta: Dict[Tuple[int, int], int]
    E_theta: Dict[Tuple[int, int], int]
    C_i: Dict[int, float]
    D1: float
    D2: float
    log_coefficient: float
    regime: Regime
    candidate_count: int


def _ceil_log_ratio(k: int, alpha: float) -> int:
    return math.ceil(12 * math.log(k) / alpha ** 2)


def k_threshold(alpha: float) -> int:
    """
    k_i(theta) = min {k : k >= 3, k > ceil(12 log(k) / alpha^2)}, natural log.

    Any k <= 12 / alpha^2 fails the condition (k >= 3 gives log k > 1), so the scan starts
    just above that point, where k - 12 log(k) / alpha^2 is increasing. The result is 3
    exactly when alpha >= sqrt(6 log 3).

    :param alpha: alpha_1(theta) > 0
    :return: the threshold episode
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    k = max(3, math.floor(12 / alpha ** 2) + 1)
    while not k > _ceil_log_ratio(k, alpha):
        k += 1
    return k


def exploration_horizon(alpha: float) -> int:
    """E_i(theta) = max {3, ceil(144 / alpha^4)}"""
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    return max(3, math.ceil(144 / alpha ** 4))


def episode_sum(alpha: float, candidate_count: int, last_episode: int) -> float:
    """
    Partial sum of 2|A| k / (k - ceil(12 log(k) / alpha^2))^5 for k from k_i(theta)
    up to `last_episode`, the episode sum bounded in closed form by `episode_sum_bound`.

    :param alpha: alpha_1(theta) > 0
    :param candidate_count: |A|
    :param last_episode: last episode included
    :return: the partial sum, 0 when last_episode < k_i(theta)
    """
    total = 0.0
    for k in range(k_threshold(alpha), last_episode + 1):
        total += 2 * candidate_count * k / (k - _ceil_log_ratio(k, alpha)) ** 5
    return total


def episode_sum_bound(alpha: float, candidate_count: int) -> float:
    """E (E + 1) |A| + 4 |A| alpha^10, the T-independent bound on `episode_sum`"""
    horizon = exploration_horizon(alpha)
    return horizon * (horizon + 1) * candidate_count + 4 * candidate_count * alpha ** 10


def constants(report: StructuralReport, params: ParameterSet) -> ConstantsReport:
    """
    Evaluate the regret bound constants.

    C_i is only defined for arms of A outside C(theta_o) other than a*(theta_o); the
    other arms contribute with C_i = 0 to D1 and D2. Parameters of B(theta_o) are left
    out of the minimum in C_i since alpha_1 vanishes on them.

    :param report: structural report computed on `params`
    :param params: the parameter set
    :return: the constants report
    """
    candidate_count = len(report.candidate_arms)
    eligible_arms = [
        arm
        for arm in report.candidate_arms
        if arm != report.true_best_arm and arm not in report.confusion_arms
    ]
    confusion = set(report.confusion_parameters)

    k_theta, E_theta, C_i = {}, {}, {}
    for arm in eligible_arms:
        terms = []
        for theta, optimal in enumerate(report.best_arm_per_parameter):
            if optimal != arm or theta in confusion:
                continue
            alpha = report.alpha1[theta]
            k_theta[(arm, theta)] = k_threshold(alpha)
            E_theta[(arm, theta)] = exploration_horizon(alpha)
            E = E_theta[(arm, theta)]
            terms.append(
                2 * E * (E + 1) * candidate_count + 4 * candidate_count * alpha ** 10
            )
        C_i[arm] = 1 + 4 * candidate_count + min(terms)

    gaps = report.gaps
    D1 = candidate_count * max(gaps[arm] * C_i.get(arm, 0.0) for arm in gaps)
    D2 = candidate_count * max(
        gaps[arm] * (2 + C_i.get(arm, 0.0) + 4 * candidate_count) for arm in gaps
    )
    log_coefficient = 12 * sum(
        gaps[arm] / report.separations[arm] ** 2 for arm in report.confusion_arms
    )

    return ConstantsReport(
        k_theta=k_theta,
        E_theta=E_theta,
        C_i=C_i,
        D1=float(D1),
        D2=float(D2),
        log_coefficient=float(log_coefficient),
        regime=report.regime,
        candidate_count=candidate_count,
    )


def regret_upper_bound(constants: ConstantsReport, horizon: float) -> float:
    """
    FP-UCB expected regret bound: D1 for bounded instances, D2 + coefficient * log(T) otherwise

    :param constants: the constants report
    :param horizon: T >= 1
    :return: the bound
    """
    if horizon < 1:
        raise ValueError(f"horizon must be at least 1, got {horizon}")
    if constants.regime == Regime.BOUNDED:
        return constants.D1
    return constants.D2 + constants.log_coefficient * math.log(horizon)


def ucb_log_coefficient(report: StructuralReport) -> float:
    """Sum of 1 / Delta_i over suboptimal arms, the classical UCB log(T) coefficient"""
    return float(sum(1 / gap for gap in report.arm_gaps if gap > 0))
