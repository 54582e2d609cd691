"""Seeded Monte-Carlo runs of bandit policies"""

import time
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from fpbandit.common.logging_ import Logger
from fpbandit.common.utils import checkpoint_schedule, get_worker_count, split_seed
from fpbandit.models.environment import Environment, RewardSampler
from fpbandit.policies import make_policy, policy_key
from fpbandit.settings import CheckpointSettings
from fpbandit.simulation.results import BatchResult, PolicyCurve, Trajectory


def arm_gaps(env: Environment) -> np.ndarray:
    """Gap of every arm to the largest true mean"""
    return env.true_means.max() - env.true_means


def run_trajectory(
    env: Environment,
    policy: str,
    horizon: int,
    seed: int,
    checkpoints: Optional[np.ndarray] = None,
    record_actions: bool = False,
) -> Trajectory:
    """
    Play one policy for T steps. The arm reward streams are spawned from `seed` and the
    policy's own generator from split_seed(seed, policy key), so every policy sees the same
    rewards and the run is a deterministic function of its arguments.

    :param env: the environment
    :param policy: policy identifier
    :param horizon: number of steps T >= L
    :param seed: run seed
    :param checkpoints: 1-based times to store the regret at, every step by default
    :param record_actions: also keep the full action sequence
    :return: the trajectory
    """
    key = policy_key(policy)
    if horizon < env.arm_count:
        raise ValueError(
            f"horizon T = {horizon} is shorter than the number of arms L = {env.arm_count}"
        )
    if checkpoints is None:
        checkpoints = np.arange(1, horizon + 1, dtype=np.int64)
    checkpoints = np.asarray(checkpoints, dtype=np.int64)
    if checkpoints.size == 0 or checkpoints[-1] != horizon:
        raise ValueError("checkpoints must end at the horizon")

    agent = make_policy(policy, env.params, horizon, seed=split_seed(seed, key))
    sampler = RewardSampler(env, seed=seed)
    gaps = arm_gaps(env)
    counts = agent.pull_counts
    regret = np.empty(checkpoints.shape[0], dtype=np.float64)
    actions = np.empty(horizon, dtype=np.int64) if record_actions else None

    start = time.perf_counter()
    next_index = 0
    next_checkpoint = checkpoints[0]
    for t in range(1, horizon + 1):
        arm = agent.select_arm()
        agent.update(arm, sampler.sample(arm))
        if actions is not None:
            actions[t - 1] = arm
        if t == next_checkpoint:
            regret[next_index] = gaps @ counts
            next_index += 1
            if next_index < checkpoints.shape[0]:
                next_checkpoint = checkpoints[next_index]

    return Trajectory(
        policy=policy,
        seed=seed,
        checkpoints=checkpoints,
        cumulative_regret=regret,
        pull_counts_final=counts.copy(),
        episode_count=agent.episode_count,
        actions=actions,
        wall_clock=time.perf_counter() - start,
    )


def _run_task(task: Tuple[Environment, str, int, int, np.ndarray]) -> Trajectory:
    env, policy, horizon, seed, checkpoints = task
    return run_trajectory(env, policy, horizon, seed, checkpoints)


def run_batch(
    env: Environment,
    policies: Sequence[str],
    horizon: int,
    runs: int,
    base_seed: int = 0,
    checkpoint_settings: CheckpointSettings = CheckpointSettings(),
    workers: Optional[int] = None,
    logger: Optional[Logger] = None,
) -> BatchResult:
    """
    Run every policy R times. Run r uses the seed split_seed(base_seed, r) for all policies,
    and results are reduced in run order, so they do not depend on the worker count.

    :param env: the environment
    :param policies: policy identifiers
    :param horizon: number of steps T per run
    :param runs: number of runs R >= 1
    :param base_seed: seed the run seeds are split from
    :param checkpoint_settings: schedule of the stored regret values
    :param workers: worker processes, 1 runs in-process
    :param logger: optional logger for per-policy summaries and tensorboard curves
    :return: the batch result
    """
    if runs < 1:
        raise ValueError(f"at least one run is needed, got {runs}")
    for policy in policies:
        policy_key(policy)
    if horizon < env.arm_count:
        raise ValueError(
            f"horizon T = {horizon} is shorter than the number of arms L = {env.arm_count}"
        )
    checkpoints = checkpoint_schedule(horizon, **checkpoint_settings.filter_none())
    tasks = [
        (env, policy, horizon, split_seed(base_seed, run), checkpoints)
        for policy in policies
        for run in range(runs)
    ]
    workers = min(get_worker_count(workers), len(tasks))
    if logger is not None:
        logger.info(
            f"Simulating {', '.join(policies)} on {env.true_name}: T = {horizon}, R = {runs}, "
            f"{workers} worker(s)"
        )
    if workers == 1:
        trajectories: List[Trajectory] = [_run_task(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            trajectories = list(executor.map(_run_task, tasks))

    curves = {}
    for index, policy in enumerate(policies):
        runs_of_policy = trajectories[index * runs : (index + 1) * runs]
        curves[policy] = PolicyCurve.from_trajectories(runs_of_policy)
        if logger is not None:
            for trajectory in runs_of_policy:
                logger.add_run(
                    trajectory.final_regret,
                    trajectory.episode_count,
                    trajectory.wall_clock,
                )
            logger.write_log(policy)
            logger.write_curve(
                f"Regret/{policy}", checkpoints, curves[policy].mean_regret
            )

    return BatchResult(
        curves=curves,
        runs=runs,
        base_seed=base_seed,
        horizon=horizon,
        checkpoints=checkpoints,
    )
