"""Asymptotic regret lower bound: min over allocations of the max gap-to-information ratio"""

import logging
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from fpbandit.analysis.structure import StructuralReport
from fpbandit.common.enumerations import CertificateType
from fpbandit.common.exceptions import DegenerateLowerBoundError
from fpbandit.common.type_aliases import KLTable
from fpbandit.lowerbound.simplex import (
    grid_divisions,
    max_ratio,
    simplex_grid,
    solve_game,
)
from fpbandit.models.parameter_set import ParameterSet
from fpbandit.settings import LowerBoundSettings
from fpbandit.signal_processing.divergences import kl_divergence

logger = logging.getLogger(__name__)

GRID_CHUNK = 20000
ZOOM_POINTS = 2000
ZOOM_LEVELS = 200


@dataclass(frozen=True)
class LowerBoundResult:
    """
    Value of the lower bound and the allocation achieving it

    :param value: max over confusion parameters of the ratio at `allocation`
    :param allocation: exploration weight h_u of every arm of A other than a*(theta_o)
    :param kl_table: D_u(theta_o || theta) for every explorable arm u and confusion parameter theta
    :param resolution: bisection tolerance
    :param bracket: final bisection bracket on the value
    :param certificate: how the last feasibility decision was made
    :param warnings: corner cases met on the way
    """

    value: float
    allocation: Dict[int, float]
    kl_table: KLTable
    resolution: float
    bracket: Tuple[float, float]
    certificate: CertificateType
    warnings: Tuple[str, ...] = ()


def _feasibility_payoff(
    gaps: np.ndarray, divergences: np.ndarray, value: float
) -> np.ndarray:
    """
    Delta_u - value * D_u(theta), scaled into [-1, 1]. Infinite divergences are clipped
    to the most negative finite entry, which can only make the check stricter.
    """
    with np.errstate(invalid="ignore"):
        payoff = gaps[:, None] - value * divergences
    finite = np.isfinite(payoff)
    scale = float(np.max(np.abs(payoff[finite]))) if finite.any() else 1.0
    if scale == 0:
        scale = 1.0
    payoff = np.where(finite, payoff, -scale)
    return np.maximum(payoff, -scale) / scale


def _best_point(
    points: np.ndarray, gaps: np.ndarray, divergences: np.ndarray
) -> Tuple[np.ndarray, float]:
    best_index, best_value = 0, np.inf
    for start in range(0, points.shape[0], GRID_CHUNK):
        values = max_ratio(points[start : start + GRID_CHUNK], gaps, divergences)
        index = int(np.argmin(values))
        if values[index] < best_value:
            best_index, best_value = start + index, float(values[index])
    return points[best_index], best_value


def _grid_minimum(
    gaps: np.ndarray, divergences: np.ndarray, max_points: int
) -> Tuple[np.ndarray, float]:
    """
    Best point of the full simplex grid, then of shrinking copies of a small grid mapped
    around it by h -> (1 - s) best + s h. The scale s is halved whenever a level brings
    no improvement.
    """
    dimension = gaps.shape[0]
    divisions = grid_divisions(dimension, max_points)
    best, value = _best_point(simplex_grid(dimension, divisions), gaps, divergences)
    local = simplex_grid(dimension, grid_divisions(dimension, ZOOM_POINTS))
    scale = min(1.0, 4 / divisions)
    for _ in range(ZOOM_LEVELS):
        candidate, candidate_value = _best_point(
            (1 - scale) * best + scale * local, gaps, divergences
        )
        if candidate_value < value:
            best, value = candidate, candidate_value
        else:
            scale /= 2
        if scale < 1e-12:
            break
    return best, value


def solve_lower_bound(
    gaps: np.ndarray,
    divergences: np.ndarray,
    settings: LowerBoundSettings = LowerBoundSettings(),
    initial_allocations: Sequence[np.ndarray] = (),
) -> Tuple[float, np.ndarray, CertificateType, Tuple[float, float]]:
    """
    min over the simplex of max_theta (h . gaps) / (h . D[:, theta]) by bisection on the value.
    A value t is feasible iff some h makes every h . (gaps - t D[:, theta]) <= 0, decided by
    the multiplicative-weights game solver and, when it cannot decide, by an exhaustive grid
    for small tables. Every feasible allocation met is kept and the best one is returned.

    :param gaps: gap of every explorable arm
    :param divergences: divergence table, one row per explorable arm, one column per parameter
    :param settings: solver settings
    :param initial_allocations: allocations to start the upper end of the bracket from
    :return: (value, allocation, certificate, bracket)
    """
    arm_count = gaps.shape[0]
    if arm_count == 1:
        allocation = np.ones(1)
        value = float(max_ratio(allocation, gaps, divergences)[0])
        return value, allocation, CertificateType.EXACT, (value, value)

    candidates = [np.full(arm_count, 1 / arm_count), *initial_allocations]
    ratios = [
        float(max_ratio(candidate, gaps, divergences)[0]) for candidate in candidates
    ]
    best = int(np.argmin(ratios))
    best_allocation, best_value = candidates[best], ratios[best]
    if not np.isfinite(best_value):
        raise DegenerateLowerBoundError(
            "some parameter has a zero divergence on every explorable arm"
        )

    low, high = 0.0, best_value
    certificate = CertificateType.MULTIPLICATIVE_WEIGHTS
    while high - low > settings.resolution:
        middle = (low + high) / 2
        solution = solve_game(
            _feasibility_payoff(gaps, divergences, middle),
            max_iterations=settings.max_iterations,
            check_every=settings.check_every,
            step_size=settings.step_size,
        )
        if solution.feasible is None:
            logger.debug(
                f"No certificate at {middle:.6g} after {solution.iterations} iterations, "
                f"game value in [{solution.lower:.3g}, {solution.upper:.3g}]"
            )
            if arm_count + 1 <= settings.grid_max_candidates:
                allocation, value = _grid_minimum(
                    gaps, divergences, settings.grid_max_points
                )
                if value < best_value:
                    best_allocation, best_value = allocation, value
                if value <= middle:
                    high = middle
                else:
                    low = middle
                certificate = CertificateType.GRID
            else:
                certificate = CertificateType.UNDECIDED
            break
        if solution.feasible:
            high = middle
            value = float(max_ratio(solution.allocation, gaps, divergences)[0])
            if value < best_value:
                best_allocation, best_value = solution.allocation, value
        else:
            low = middle

    return best_value, best_allocation, certificate, (low, min(high, best_value))


def divergence_table(
    params: ParameterSet, report: StructuralReport
) -> Tuple[List[int], np.ndarray]:
    """
    D_u(theta_o || theta) for u in A other than a*(theta_o) and theta in B(theta_o)

    :param params: the parameter set
    :param report: its structural report
    :return: (explorable arms, table with one row per arm and one column per confusion parameter)
    """
    arms = [arm for arm in report.candidate_arms if arm != report.true_best_arm]
    table = np.array(
        [
            [
                kl_divergence(params, arm, report.true_parameter, theta)
                for theta in report.confusion_parameters
            ]
            for arm in arms
        ],
        dtype=np.float64,
    ).reshape(len(arms), len(report.confusion_parameters))
    return arms, table


def _separation_allocation(
    report: StructuralReport, arms: List[int]
) -> Optional[np.ndarray]:
    """Weights proportional to 1 / beta_i^2 on the confusion arms"""
    weights = np.zeros(len(arms))
    for index, arm in enumerate(arms):
        beta = report.separations.get(arm)
        if beta is None:
            continue
        if beta == 0:
            return None
        weights[index] = 1 / beta ** 2
    if weights.sum() == 0:
        return None
    return weights / weights.sum()


def lower_bound(
    params: ParameterSet,
    report: StructuralReport,
    resolution: Optional[float] = None,
    settings: LowerBoundSettings = LowerBoundSettings(),
) -> LowerBoundResult:
    """
    Evaluate min over h of max over theta in B(theta_o) of
    sum_u h_u Delta_u / sum_u h_u D_u(theta_o || theta), u ranging over A without a*(theta_o)

    :param params: the parameter set
    :param report: structural report of `params`
    :param resolution: bisection tolerance, overrides the settings
    :param settings: solver settings
    :return: the lower bound result
    """
    if resolution is not None:
        settings = replace(settings, resolution=resolution)
    arms, table = divergence_table(params, report)
    kl_table = {
        (arm, theta): float(table[row, column])
        for row, arm in enumerate(arms)
        for column, theta in enumerate(report.confusion_parameters)
    }

    if not report.confusion_parameters:
        return LowerBoundResult(
            value=0.0,
            allocation={arm: 1 / len(arms) for arm in arms},
            kl_table=kl_table,
            resolution=settings.resolution,
            bracket=(0.0, 0.0),
            certificate=CertificateType.VACUOUS,
        )
    if not arms:
        message = (
            "B(theta_o) is not empty but A has no arm besides a*(theta_o), "
            "the bound is vacuous"
        )
        logger.warning(message)
        return LowerBoundResult(
            value=0.0,
            allocation={},
            kl_table=kl_table,
            resolution=settings.resolution,
            bracket=(0.0, 0.0),
            certificate=CertificateType.VACUOUS,
            warnings=(message,),
        )

    uninformative = np.flatnonzero(np.all(table == 0, axis=0))
    if uninformative.size:
        confusion = np.asarray(report.confusion_parameters)
        names = [params.names[theta] for theta in confusion[uninformative]]
        raise DegenerateLowerBoundError(
            f"parameters {names} have the same reward distributions as "
            f"{params.names[report.true_parameter]} on every explorable arm"
        )

    gaps = np.array([report.gaps[arm] for arm in arms])
    separation = _separation_allocation(report, arms)
    value, allocation, certificate, bracket = solve_lower_bound(
        gaps,
        table,
        settings,
        initial_allocations=() if separation is None else (separation,),
    )
    warnings: Tuple[str, ...] = ()
    if certificate == CertificateType.UNDECIDED:
        message = (
            f"bisection stopped with bracket [{bracket[0]:.6g}, {bracket[1]:.6g}] "
            f"wider than the resolution {settings.resolution:g}, "
            "raise max_iterations to narrow it"
        )
        logger.warning(message)
        warnings = (message,)
    return LowerBoundResult(
        value=value,
        allocation={arm: float(weight) for arm, weight in zip(arms, allocation)},
        kl_table=kl_table,
        resolution=settings.resolution,
        bracket=bracket,
        certificate=certificate,
        warnings=warnings,
    )
