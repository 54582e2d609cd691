"""Tools for min-max problems over the probability simplex"""

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import comb, softmax


def simplex_grid(dimension: int, divisions: int) -> np.ndarray:
    """
    Every point of the simplex whose coordinates are multiples of 1 / divisions

    :param dimension: number of coordinates
    :param divisions: grid step is 1 / divisions
    :return: array of shape (number of points, dimension)
    """
    if dimension < 1 or divisions < 1:
        raise ValueError(
            f"dimension and divisions must be positive, got {dimension} and {divisions}"
        )
    if dimension == 1:
        return np.ones((1, 1))
    slots = divisions + dimension - 1
    combinations = itertools.combinations(range(slots), dimension - 1)
    bars = np.fromiter(
        itertools.chain.from_iterable(combinations),
        dtype=np.int64,
    ).reshape(-1, dimension - 1)
    count = bars.shape[0]
    edges = np.hstack(
        (np.full((count, 1), -1), bars, np.full((count, 1), slots))
    )
    return (np.diff(edges, axis=1) - 1) / divisions


def grid_divisions(dimension: int, max_points: int) -> int:
    """Largest number of divisions whose simplex grid has at most `max_points` points"""
    if dimension == 1:
        return 1
    low, high = 1, max(1, max_points)
    while low < high:
        middle = (low + high + 1) // 2
        if comb(middle + dimension - 1, dimension - 1, exact=True) <= max_points:
            low = middle
        else:
            high = middle - 1
    return low


def max_ratio(
    allocations: np.ndarray, gaps: np.ndarray, divergences: np.ndarray
) -> np.ndarray:
    """
    max over columns of (h . gaps) / (h . divergences[:, column]) for every allocation h.
    An infinite divergence on an arm with positive weight makes the ratio 0, as does a zero
    numerator; a zero denominator with a positive numerator gives inf.

    :param allocations: one allocation per row, or a single allocation
    :param gaps: gap of every explorable arm
    :param divergences: divergence table, one row per arm and one column per parameter
    :return: the largest ratio of every allocation
    """
    allocations = np.atleast_2d(allocations)
    infinite = np.isinf(divergences)
    numerators = allocations @ gaps
    denominators = allocations @ np.where(infinite, 0.0, divergences)
    weighted = (allocations > 0).astype(np.float64)
    reaches_infinite = weighted @ infinite.astype(np.float64) > 0
    denominators = np.where(reaches_infinite, np.inf, denominators)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = numerators[:, None] / denominators
    ratios = np.where(numerators[:, None] == 0, 0.0, ratios)
    return ratios.max(axis=1)


@dataclass
class GameSolution:
    """
    Outcome of the multiplicative-weights game solver on a payoff matrix M

    :param feasible: True if max_j (h M)_j <= 0 was certified, False if min_i (M q)_i > 0 was,
        None when neither certificate was found
    :param allocation: average row strategy h
    :param upper: max_j (h M)_j, an upper bound on the game value
    :param lower: min_i (M q)_i for the average column strategy, a lower bound on the value
    :param iterations: iterations performed
    """

    feasible: Optional[bool]
    allocation: np.ndarray
    upper: float
    lower: float
    iterations: int


def solve_game(
    payoff: np.ndarray,
    max_iterations: int = 20000,
    check_every: int = 50,
    step_size: float = 0.25,
) -> GameSolution:
    """
    Decide the sign of min_h max_q h^T M q, h and q in simplices, by optimistic
    multiplicative weights played by both sides. Entries of M must lie in [-1, 1].

    :param payoff: the matrix M, rows are minimised over and columns maximised over
    :param max_iterations: iteration budget
    :param check_every: iterations between two certificate checks
    :param step_size: step of both players
    :return: the solution with its certificate
    """
    rows, columns = payoff.shape
    row_losses = np.zeros(rows)
    column_gains = np.zeros(columns)
    last_row_loss = np.zeros(rows)
    last_column_gain = np.zeros(columns)
    row_total = np.zeros(rows)
    column_total = np.zeros(columns)

    for iteration in range(1, max_iterations + 1):
        h = softmax(-step_size * (row_losses + last_row_loss))
        q = softmax(step_size * (column_gains + last_column_gain))
        last_row_loss = payoff @ q
        last_column_gain = h @ payoff
        row_losses += last_row_loss
        column_gains += last_column_gain
        row_total += h
        column_total += q

        if iteration % check_every == 0 or iteration == max_iterations:
            allocation = row_total / iteration
            upper = float(np.max(allocation @ payoff))
            lower = float(np.min(payoff @ (column_total / iteration)))
            if upper <= 0 or lower > 0:
                return GameSolution(upper <= 0, allocation, upper, lower, iteration)

    return GameSolution(None, allocation, upper, lower, max_iterations)
