import numpy as np
import pytest

from fpbandit.analysis import analyze, constants
from fpbandit.common.enumerations import CertificateType
from fpbandit.common.exceptions import DegenerateLowerBoundError
from fpbandit.lowerbound import (
    divergence_table,
    grid_divisions,
    lower_bound,
    max_ratio,
    simplex_grid,
    solve_game,
    solve_lower_bound,
)
from fpbandit.models import ParameterSet, build_parameter_set
from fpbandit.settings import LowerBoundSettings
from fpbandit.signal_processing import bernoulli_kl

two_arm = build_parameter_set({"type": "explicit", "list": [[0.9, 0.5], [0.2, 0.5]]})
three_arm = ParameterSet(
    3,
    ("true", "a", "b"),
    np.array([[0.5, 0.4, 0.3], [0.5, 0.7, 0.3], [0.5, 0.4, 0.8]]),
)
fast_settings = LowerBoundSettings(
    resolution=1e-4, max_iterations=2000, grid_max_points=20000
)


def random_confusable_instance(rng):
    """Means on a 0.05 grid, unique optimal arms, parameter 0 is the true one"""
    arm_count = int(rng.integers(2, 5))
    size = int(rng.integers(2, 10))
    rows = []
    while not rows:
        row = rng.integers(1, 20, arm_count)
        if np.sum(row == row.max()) == 1:
            rows.append(row)
    best = int(np.argmax(rows[0]))
    while len(rows) < size:
        row = rng.integers(1, 20, arm_count)
        if rng.random() < 0.5:
            row[best] = rows[0][best]
        if np.sum(row == row.max()) == 1:
            rows.append(row)
    return ParameterSet(
        arm_count, tuple(f"p{i}" for i in range(size)), np.array(rows) * 0.05
    )


def test_two_arm_value():
    result = lower_bound(two_arm, analyze(two_arm, 1))

    assert result.value == pytest.approx(0.220145, abs=1e-6)
    assert result.value == pytest.approx(0.3 / bernoulli_kl(0.2, 0.9))
    assert result.certificate == CertificateType.EXACT
    assert result.allocation == {0: 1.0}
    assert result.kl_table == pytest.approx({(0, 0): 1.362738}, abs=1e-6)


def test_bounded_instance_is_vacuous():
    result = lower_bound(two_arm, analyze(two_arm, 0))

    assert result.value == 0
    assert result.certificate == CertificateType.VACUOUS
    assert result.kl_table == {}
    assert result.allocation == {1: 1.0}


def test_resolution_override():
    result = lower_bound(three_arm, analyze(three_arm, 0), resolution=1e-3)
    assert result.resolution == 1e-3


def test_divergence_table():
    report = analyze(three_arm, 0)
    arms, table = divergence_table(three_arm, report)

    assert report.confusion_parameters == (1, 2)
    assert arms == [1, 2]
    np.testing.assert_array_almost_equal(
        table, [[bernoulli_kl(0.4, 0.7), 0.0], [0.0, bernoulli_kl(0.3, 0.8)]]
    )


def test_three_arm_value_matches_fine_grid():
    report = analyze(three_arm, 0)
    arms, table = divergence_table(three_arm, report)
    gaps = np.array([report.gaps[arm] for arm in arms])
    reference = max_ratio(simplex_grid(2, 1000), gaps, table).min()

    result = lower_bound(three_arm, report)
    assert result.value <= reference + 1e-5
    assert result.value >= reference - 2e-3
    assert result.bracket[0] <= result.value + 1e-12


def test_allocation_is_a_distribution():
    report = analyze(three_arm, 0)
    result = lower_bound(three_arm, report)
    weights = np.array(list(result.allocation.values()))

    assert set(result.allocation) == {1, 2}
    assert np.all(weights >= 0)
    assert weights.sum() == pytest.approx(1.0)
    arms, table = divergence_table(three_arm, report)
    gaps = np.array([report.gaps[arm] for arm in arms])
    assert max_ratio(weights, gaps, table)[0] == pytest.approx(result.value)


def test_scaling_the_gaps_scales_the_value():
    gaps = np.array([0.1, 0.2, 0.15])
    divergences = np.array([[0.5, 0.1, 0.0], [0.0, 0.7, 0.2], [0.3, 0.0, 0.9]])

    value = solve_lower_bound(gaps, divergences, fast_settings)[0]
    doubled = solve_lower_bound(2 * gaps, divergences, fast_settings)[0]
    assert doubled == pytest.approx(2 * value, rel=2e-3)


def test_degenerate_table():
    gaps = np.array([0.1, 0.2])
    divergences = np.array([[0.0, 1.0], [0.0, 2.0]])
    with pytest.raises(DegenerateLowerBoundError):
        solve_lower_bound(gaps, divergences)


def test_random_instances_below_separation_bound():
    rng = np.random.default_rng(2718)
    for _ in range(100):
        params = random_confusable_instance(rng)
        report = analyze(params, 0)
        result = lower_bound(params, report, settings=fast_settings)
        bound = constants(report, params).log_coefficient / 24

        assert result.value >= 0
        assert result.value <= bound * (1 + 1e-9) + 1e-12


def test_simplex_grid():
    grid = simplex_grid(3, 2)

    assert grid.shape == (6, 3)
    np.testing.assert_array_almost_equal(grid.sum(axis=1), np.ones(6))
    np.testing.assert_array_almost_equal(grid * 2, np.round(grid * 2))
    assert len({tuple(point) for point in grid}) == 6
    np.testing.assert_array_equal(simplex_grid(1, 5), [[1.0]])


@pytest.mark.parametrize("dimension, divisions", [(0, 3), (3, 0)])
def test_simplex_grid_errors(dimension, divisions):
    with pytest.raises(ValueError):
        simplex_grid(dimension, divisions)


@pytest.mark.parametrize(
    "dimension, max_points, expected",
    [(3, 15, 4), (3, 14, 3), (2, 11, 10), (1, 100, 1)],
)
def test_grid_divisions(dimension, max_points, expected):
    assert grid_divisions(dimension, max_points) == expected


def test_max_ratio():
    gaps = np.array([0.1, 0.2])
    divergences = np.array([[1.0, np.inf], [2.0, 0.0]])
    allocations = np.array([[1.0, 0.0], [0.5, 0.5], [0.0, 1.0]])

    np.testing.assert_array_almost_equal(
        max_ratio(allocations, gaps, divergences)[:2], [0.1, 0.1]
    )
    assert max_ratio(allocations[2], gaps, divergences)[0] == np.inf
    assert max_ratio(np.array([1.0, 0.0]), np.array([0.0, 0.2]), divergences)[0] == 0


def test_solve_game_feasible():
    payoff = np.array([[-0.3, 0.2], [0.3, -0.6]])
    solution = solve_game(payoff)

    assert solution.feasible is True
    assert solution.upper <= 0
    assert 0.5 <= solution.allocation[0] <= 0.75
    assert solution.allocation.sum() == pytest.approx(1.0)


def test_solve_game_infeasible():
    payoff = np.array([[-0.1, 0.4], [0.5, -0.4]])
    solution = solve_game(payoff)

    assert solution.feasible is False
    assert solution.lower > 0


def test_solve_game_undecided():
    solution = solve_game(np.array([[1.0, -1.0], [-0.5, 0.5]]), max_iterations=100)

    assert solution.feasible is None
    assert solution.iterations == 100
    assert solution.lower <= 0 < solution.upper


def test_indistinguishable_confusion_parameter():
    params = ParameterSet(
        2, ("true", "twin"), np.array([[0.4, 0.5], [0.4, 0.45]]), tie_epsilon=0.06
    )
    report = analyze(params, 0)

    assert report.confusion_parameters == (1,)
    with pytest.raises(DegenerateLowerBoundError):
        lower_bound(params, report)


def test_four_arm_value_matches_fine_grid():
    params = ParameterSet(
        4,
        ("true", "a", "b", "c", "d"),
        np.array(
            [
                [0.5, 0.4, 0.3, 0.2],
                [0.5, 0.7, 0.3, 0.2],
                [0.5, 0.4, 0.8, 0.2],
                [0.5, 0.4, 0.3, 0.6],
                [0.5, 0.45, 0.35, 0.7],
            ]
        ),
    )
    report = analyze(params, 0)
    arms, table = divergence_table(params, report)
    gaps = np.array([report.gaps[arm] for arm in arms])
    reference = max_ratio(simplex_grid(3, 1000), gaps, table).min()

    assert report.candidate_arms == (0, 1, 2, 3)
    result = lower_bound(params, report, settings=fast_settings)
    assert abs(result.value - reference) <= 2e-3


def test_scaling_the_divergences_divides_the_value():
    gaps = np.array([0.1, 0.2, 0.15])
    divergences = np.array([[0.5, 0.1, 0.0], [0.0, 0.7, 0.2], [0.3, 0.0, 0.9]])

    value = solve_lower_bound(gaps, divergences, fast_settings)[0]
    tripled = solve_lower_bound(gaps, 3 * divergences, fast_settings)[0]
    assert tripled == pytest.approx(value / 3, rel=2e-3)


def test_undecided_bisection_is_reported():
    gaps = np.array([0.1] + [0.5] * 6)
    divergences = np.array([[1.0]] + [[0.1]] * 6)
    settings = LowerBoundSettings(resolution=1e-6, max_iterations=1, check_every=1)

    value, allocation, certificate, bracket = solve_lower_bound(
        gaps, divergences, settings
    )
    assert certificate == CertificateType.UNDECIDED
    assert bracket[1] - bracket[0] > settings.resolution
    assert value == pytest.approx(max_ratio(allocation, gaps, divergences)[0])


def test_undecided_bisection_warns(monkeypatch):
    def undecided(gaps, divergences, settings, initial_allocations=()):
        return 0.3, np.array([0.5, 0.5]), CertificateType.UNDECIDED, (0.1, 0.3)

    monkeypatch.setattr("fpbandit.lowerbound.solver.solve_lower_bound", undecided)
    result = lower_bound(three_arm, analyze(three_arm, 0))

    assert result.certificate == CertificateType.UNDECIDED
    assert result.bracket == (0.1, 0.3)
    assert len(result.warnings) == 1
    assert "wider than the resolution" in result.warnings[0]
