"""Methods for estimating arm statistics from pull counts and reward sums"""

from typing import Union

import numpy as np


def empirical_mean(
    reward_sum: Union[float, np.ndarray], count: Union[int, np.ndarray]
) -> Union[float, np.ndarray]:
    """
    Empirical mean reward mu_hat = reward_sum / count

    :param reward_sum: sum of the observed rewards (or an array of sums)
    :param count: number of observations, must be positive (or an array of counts)
    :return: the empirical mean(s)
    """
    if np.any(np.asarray(count) <= 0):
        raise ValueError(
            "the empirical mean of an arm that was never pulled is undefined"
        )
    if np.ndim(reward_sum) == 0 and np.ndim(count) == 0:
        return float(reward_sum) / int(count)
    return np.asarray(reward_sum, dtype=np.float64) / np.asarray(count)


def confidence_radius(episode: int, counts: np.ndarray) -> np.ndarray:
    """
    FP-UCB consistency radius sqrt(3 log(k) / n_i) for episode k

    :param episode: the episode number k >= 1
    :param counts: pull counts n_i, all positive
    :return: radius per arm, zero when k == 1
    """
    if episode < 1:
        raise ValueError(f"episode numbers start at 1, got {episode}")
    counts = np.asarray(counts)
    if np.any(counts <= 0):
        raise ValueError("every candidate arm needs at least one pull")
    return np.sqrt(3 * np.log(episode) / counts)


def ucb_index(means: np.ndarray, counts: np.ndarray, t: int) -> np.ndarray:
    """
    UCB1 index mu_hat_i + sqrt(2 log(t) / n_i)

    :param means: empirical means
    :param counts: pull counts, all positive
    :param t: current time
    :return: the index of every arm
    """
    return means + np.sqrt(2 * np.log(t) / counts)
