"""KL divergences between the reward distributions of two parameters"""

import numpy as np
from scipy.special import rel_entr

from fpbandit.common.enumerations import RewardFamily
from fpbandit.models.parameter_set import ParameterSet


def bernoulli_kl(p: float, q: float) -> float:
    """
    KL(Bernoulli(p) || Bernoulli(q)) with the 0 log 0 = 0 convention

    :param p: mean of the first distribution
    :param q: mean of the second distribution
    :return: the divergence, inf when q puts no mass where p does
    """
    if not (0 <= p <= 1 and 0 <= q <= 1):
        raise ValueError(f"Bernoulli means must lie in [0, 1], got {p} and {q}")
    return float(rel_entr(p, q) + rel_entr(1 - p, 1 - q))


def discrete_kl(
    support_p: np.ndarray,
    probabilities_p: np.ndarray,
    support_q: np.ndarray,
    probabilities_q: np.ndarray,
) -> float:
    """
    KL divergence between two finite distributions on [0, 1], summed over the union of supports

    :param support_p: support points of the first distribution
    :param probabilities_p: their probabilities
    :param support_q: support points of the second distribution
    :param probabilities_q: their probabilities
    :return: the divergence, inf when the second misses mass of the first
    """
    points = np.union1d(support_p, support_q)
    p = np.zeros(points.shape[0])
    q = np.zeros(points.shape[0])
    np.add.at(p, np.searchsorted(points, support_p), probabilities_p)
    np.add.at(q, np.searchsorted(points, support_q), probabilities_q)
    return float(np.sum(rel_entr(p, q)))


def kl_divergence(params: ParameterSet, arm: int, theta_p: int, theta_q: int) -> float:
    """
    D_arm(theta_p || theta_q), the divergence between the reward distributions of one arm

    :param params: the parameter set
    :param arm: arm index
    :param theta_p: parameter index of the first distribution (usually theta_o)
    :param theta_q: parameter index of the second distribution
    :return: the divergence
    """
    if params.reward_family == RewardFamily.BERNOULLI:
        return bernoulli_kl(params.means[theta_p, arm], params.means[theta_q, arm])
    return discrete_kl(
        *params.distribution(theta_p, arm), *params.distribution(theta_q, arm)
    )
