"""This module holds settings objects to configure the other modules"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union


@dataclass
class Settings:
    """Base class for settings objects"""

    def filter_none(self) -> Dict[str, Any]:
        return {k: v for k, v in self.__dict__.items() if v is not None}


@dataclass
class LoggerSettings(Settings):
    """
    Settings for the Logger

    :param tensorboard_log_path: path to store the tensorboard log, no tensorboard output if None
    :param log_file: optional file to mirror the log into
    :param file_handler_level: logging level for the file log
    :param stream_handler_level: logging level for the streaming log
    :param verbose: whether to record any logs at all
    """

    tensorboard_log_path: Optional[str] = None
    log_file: Optional[str] = None
    file_handler_level: int = logging.DEBUG
    stream_handler_level: int = logging.INFO
    verbose: bool = True


@dataclass
class CheckpointSettings(Settings):
    """
    Settings for the times at which regret curves are stored

    :param dense_until: every step up to this time is stored
    :param points_per_decade: number of multiplicatively spaced checkpoints per decade afterwards
    """

    dense_until: int = 1000
    points_per_decade: int = 100


@dataclass
class LowerBoundSettings(Settings):
    """
    Settings for the lower bound solver

    :param resolution: bisection stops once the bracket is narrower than this
    :param max_iterations: multiplicative-weights iterations per feasibility check
    :param check_every: iterations between two certificate checks
    :param step_size: multiplicative-weights step on the normalised payoff matrix
    :param grid_max_candidates: the grid fallback is used when |A| is at most this
    :param grid_max_points: size limit of the fallback grid
    """

    resolution: float = 1e-6
    max_iterations: int = 20000
    check_every: int = 50
    step_size: float = 0.25
    grid_max_candidates: int = 6
    grid_max_points: int = 250000


@dataclass
class ExperimentConfig(Settings):
    """
    Everything one CLI invocation needs, usually read from a recipe file

    :param instance: path to the instance file
    :param true_parameter: overrides the instance's true parameter (name)
    :param policies: policy identifiers to simulate
    :param horizon: steps per run
    :param runs: runs per policy
    :param seed: base seed
    :param checkpoints: checkpoint schedule for the stored curves
    :param output: output path prefix, `.csv` and `.json` are appended
    :param resolution: lower bound bisection tolerance
    :param scaled: also write the regret curve scaled by log t
    :param workers: worker processes for the simulation
    :param tensorboard_log_path: optional tensorboard directory
    """

    instance: Optional[str] = None
    true_parameter: Optional[str] = None
    policies: List[str] = field(default_factory=lambda: ["fp-ucb"])
    horizon: int = 100000
    runs: int = 10
    seed: int = 0
    checkpoints: CheckpointSettings = field(default_factory=CheckpointSettings)
    output: Optional[str] = None
    resolution: float = 1e-6
    scaled: bool = False
    workers: Optional[int] = None
    tensorboard_log_path: Optional[str] = None

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        """Build a config from a parsed recipe, unknown keys are rejected"""
        data = dict(data)
        checkpoints = data.pop("checkpoints", None)
        policies: Union[str, List[str], None] = data.pop("policies", None)
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        config = cls(**data)
        if checkpoints is not None:
            config.checkpoints = CheckpointSettings(**checkpoints)
        if policies is not None:
            config.policies = (
                policies.split(",") if isinstance(policies, str) else list(policies)
            )
        return config
