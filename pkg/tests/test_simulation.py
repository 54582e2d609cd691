import math

import numpy as np
import pandas as pd
import pytest

from fpbandit.analysis import best_arms
from fpbandit.common.exceptions import UnknownPolicyError
from fpbandit.common.logging_ import Logger
from fpbandit.common.utils import checkpoint_schedule, split_seed
from fpbandit.models import (
    Environment,
    ParameterSet,
    build_parameter_set,
    sample_reward,
)
from fpbandit.settings import CheckpointSettings
from fpbandit.simulation import (
    CSV_COLUMNS,
    arm_gaps,
    run_batch,
    run_trajectory,
    scale_by_log,
    scaled_regret,
)

two_arm = build_parameter_set({"type": "explicit", "list": [[0.9, 0.5], [0.2, 0.5]]})
permutations = build_parameter_set(
    {"type": "permutations", "base": [0.6, 0.4, 0.3, 0.2]}
)


def naive_fp_ucb(env, horizon, seed):
    """Step by step FP-UCB, looping over the parameters one at a time"""
    params = env.params
    generators = env.reward_generators(seed)
    optimal = best_arms(params)
    candidates = sorted({int(arm) for arm in optimal})
    counts = np.zeros(env.arm_count, dtype=np.int64)
    sums = np.zeros(env.arm_count)
    actions = []

    def play(arm):
        counts[arm] += 1
        sums[arm] += sample_reward(env, arm, generators[arm])
        actions.append(arm)

    for arm in candidates[:horizon]:
        play(arm)
    episode = 1
    while len(actions) < horizon:
        index = np.asarray(candidates)
        radius = np.sqrt(3 * np.log(episode) / counts[index])
        means = sums[index] / counts[index]
        arms = set()
        for theta in range(len(params)):
            if np.all(np.abs(means - params.means[theta, index]) <= radius):
                arms.add(int(optimal[theta]))
        for arm in sorted(arms) or candidates:
            if len(actions) == horizon:
                break
            play(arm)
        episode += 1
    return actions


def random_instance(rng):
    arm_count = int(rng.integers(2, 5))
    size = int(rng.integers(1, 8))
    rows = []
    while len(rows) < size:
        row = rng.integers(1, 20, arm_count)
        if np.sum(row == row.max()) == 1:
            rows.append(row)
    params = ParameterSet(
        arm_count, tuple(f"p{i}" for i in range(size)), np.array(rows) * 0.05
    )
    return Environment(params, int(rng.integers(size)))


def test_arm_gaps():
    np.testing.assert_array_almost_equal(arm_gaps(Environment(two_arm, 0)), [0.0, 0.4])
    np.testing.assert_array_almost_equal(arm_gaps(Environment(two_arm, 1)), [0.3, 0.0])


def test_single_candidate_arm_has_no_regret():
    params = ParameterSet(2, ("a", "b"), np.array([[0.9, 0.5], [0.8, 0.3]]))
    trajectory = run_trajectory(Environment(params, 0), "fp-ucb", 1000, seed=3)

    np.testing.assert_array_equal(trajectory.cumulative_regret, np.zeros(1000))
    np.testing.assert_array_equal(trajectory.pull_counts_final, [1000, 0])


@pytest.mark.parametrize("policy", ["fp-ucb", "ucb1", "thompson"])
def test_trajectory_regret(policy):
    env = Environment(permutations, 5)
    trajectory = run_trajectory(env, policy, 2000, seed=17, record_actions=True)

    assert trajectory.pull_counts_final.sum() == 2000
    assert trajectory.final_regret == pytest.approx(
        arm_gaps(env) @ trajectory.pull_counts_final
    )
    assert np.all(np.diff(trajectory.cumulative_regret) >= 0)
    np.testing.assert_array_equal(
        np.bincount(trajectory.actions, minlength=4), trajectory.pull_counts_final
    )
    steps = np.cumsum(arm_gaps(env)[trajectory.actions])
    np.testing.assert_array_almost_equal(trajectory.cumulative_regret, steps)


def test_trajectory_episode_count():
    env = Environment(two_arm, 1)
    assert run_trajectory(env, "fp-ucb", 500, seed=0).episode_count > 0
    assert run_trajectory(env, "ucb1", 500, seed=0).episode_count is None


def test_trajectory_checkpoints():
    env = Environment(two_arm, 1)
    full = run_trajectory(env, "ucb1", 300, seed=4)
    checkpoints = np.array([10, 100, 300])
    sparse = run_trajectory(env, "ucb1", 300, seed=4, checkpoints=checkpoints)

    np.testing.assert_array_equal(
        sparse.cumulative_regret, full.cumulative_regret[[9, 99, 299]]
    )


def test_trajectory_errors():
    env = Environment(permutations, 0)
    with pytest.raises(UnknownPolicyError):
        run_trajectory(env, "greedy", 100, seed=0)
    with pytest.raises(ValueError):
        run_trajectory(env, "fp-ucb", 3, seed=0)
    with pytest.raises(ValueError):
        run_trajectory(env, "fp-ucb", 100, seed=0, checkpoints=np.array([10, 50]))


@pytest.mark.parametrize("policy", ["fp-ucb", "ucb1", "thompson"])
def test_trajectory_deterministic(policy):
    env = Environment(two_arm, 1)
    first = run_trajectory(env, policy, 500, seed=99, record_actions=True)
    second = run_trajectory(env, policy, 500, seed=99, record_actions=True)
    np.testing.assert_array_equal(first.actions, second.actions)

    other = run_trajectory(env, policy, 500, seed=100, record_actions=True)
    assert not np.array_equal(first.actions, other.actions)


def test_fp_ucb_matches_step_by_step_version():
    rng = np.random.default_rng(31)
    for _ in range(50):
        env = random_instance(rng)
        seed = int(rng.integers(2 ** 32))
        trajectory = run_trajectory(env, "fp-ucb", 200, seed=seed, record_actions=True)
        assert trajectory.actions.tolist() == naive_fp_ucb(env, 200, seed)


def test_batch_single_run_matches_trajectory():
    env = Environment(two_arm, 1)
    result = run_batch(env, ["fp-ucb"], 2000, runs=1, base_seed=8, workers=1)
    checkpoints = checkpoint_schedule(2000)
    trajectory = run_trajectory(env, "fp-ucb", 2000, split_seed(8, 0), checkpoints)

    curve = result.curves["fp-ucb"]
    np.testing.assert_array_equal(result.checkpoints, checkpoints)
    np.testing.assert_array_equal(curve.mean_regret, trajectory.cumulative_regret)
    np.testing.assert_array_equal(curve.std_regret, np.zeros_like(checkpoints))
    np.testing.assert_array_equal(curve.episode_counts, [trajectory.episode_count])


def test_batch_policy_order_does_not_matter():
    env = Environment(permutations, 3)
    settings = CheckpointSettings(dense_until=100, points_per_decade=10)
    first = run_batch(env, ["fp-ucb", "ucb1"], 1000, 3, 5, settings, workers=1)
    second = run_batch(env, ["ucb1", "fp-ucb"], 1000, 3, 5, settings, workers=1)

    assert list(first.curves) == ["fp-ucb", "ucb1"]
    for policy in ("fp-ucb", "ucb1"):
        np.testing.assert_array_equal(
            first.curves[policy].final_regrets, second.curves[policy].final_regrets
        )


def test_batch_same_seeds_for_every_policy():
    env = Environment(two_arm, 1)
    result = run_batch(env, ["ucb1", "thompson"], 300, 2, base_seed=1, workers=1)
    for policy in ("ucb1", "thompson"):
        expected = [
            run_trajectory(env, policy, 300, split_seed(1, run)).final_regret
            for run in range(2)
        ]
        np.testing.assert_array_equal(result.curves[policy].final_regrets, expected)


def test_batch_worker_count_does_not_matter():
    env = Environment(two_arm, 1)
    settings = CheckpointSettings(dense_until=50, points_per_decade=5)
    serial = run_batch(env, ["fp-ucb", "thompson"], 500, 4, 3, settings, workers=1)
    parallel = run_batch(env, ["fp-ucb", "thompson"], 500, 4, 3, settings, workers=2)

    pd.testing.assert_frame_equal(serial.to_frame(), parallel.to_frame())


def test_batch_errors():
    env = Environment(two_arm, 0)
    with pytest.raises(ValueError):
        run_batch(env, ["fp-ucb"], 100, runs=0)
    with pytest.raises(UnknownPolicyError):
        run_batch(env, ["fp-ucb", "egreedy"], 100, runs=1)
    with pytest.raises(ValueError):
        run_batch(env, ["fp-ucb"], 1, runs=1)


def test_batch_logs_every_policy():
    env = Environment(two_arm, 1)
    logger = Logger(verbose=False)
    run_batch(env, ["fp-ucb", "ucb1"], 200, 2, workers=1, logger=logger)

    assert logger.final_regrets == []
    assert logger.episodes == []


def test_frame_and_csv(tmp_path):
    env = Environment(two_arm, 1)
    settings = CheckpointSettings(dense_until=10, points_per_decade=2)
    result = run_batch(env, ["fp-ucb", "ucb1"], 1000, 2, 0, settings, workers=1)

    frame = result.to_frame()
    assert list(frame.columns) == CSV_COLUMNS
    assert len(frame) == 2 * len(result.checkpoints)
    assert frame["policy"].tolist()[0] == "fp-ucb"
    assert frame["t"].iloc[-1] == 1000

    path = tmp_path / "curves.csv"
    result.to_csv(str(path))
    loaded = pd.read_csv(path)
    assert list(loaded.columns) == CSV_COLUMNS
    np.testing.assert_allclose(loaded["mean_regret"], frame["mean_regret"], rtol=1e-9)


def test_scale_by_log():
    steps, mean, std = scale_by_log(
        np.array([1, 2, 3]), np.array([1.0, 2.0, 3.0]), np.array([0.0, 1.0, 1.0])
    )
    np.testing.assert_array_equal(steps, [2, 3])
    np.testing.assert_array_almost_equal(mean, [2 / math.log(2), 3 / math.log(3)])
    np.testing.assert_array_almost_equal(std, [1 / math.log(2), 1 / math.log(3)])

    _, _, std = scale_by_log(np.array([1, 2]), np.array([0.0, 1.0]))
    assert std is None


def test_scaled_regret_and_frame():
    env = Environment(two_arm, 1)
    result = run_batch(env, ["fp-ucb"], 100, 2, workers=1)

    steps, values = scaled_regret(result)["fp-ucb"]
    np.testing.assert_array_equal(steps, np.arange(2, 101))
    np.testing.assert_array_almost_equal(
        values, result.curves["fp-ucb"].mean_regret[1:] / np.log(steps)
    )
    assert len(result.scaled_frame()) == 99


def test_summary():
    env = Environment(two_arm, 1)
    result = run_batch(env, ["fp-ucb", "thompson"], 300, 3, base_seed=2, workers=1)
    summary = result.summary()

    assert summary["runs"] == 3
    assert summary["base_seed"] == 2
    assert summary["horizon"] == 300
    fp_ucb = summary["policies"]["fp-ucb"]
    assert fp_ucb["final_mean_regret"] == pytest.approx(
        np.mean(result.curves["fp-ucb"].final_regrets)
    )
    assert len(fp_ucb["episode_counts"]) == 3
    assert sum(fp_ucb["mean_pull_counts"]) == pytest.approx(300)
    assert "episode_counts" not in summary["policies"]["thompson"]
