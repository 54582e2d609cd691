import logging
from typing import List, Optional, Sequence

import numpy as np

from fpbandit.common.type_aliases import Log


def get_logger(
    file_handler_level: int,
    stream_handler_level: int,
    log_file: Optional[str] = None,
) -> logging.Logger:
    logger = logging.getLogger("fpbandit")
    logger.setLevel(logging.DEBUG)

    if logger.hasHandlers():
        logger.handlers.clear()
    if log_file is not None:
        file_handler = logging.FileHandler(log_file, mode="w")
        file_handler.setLevel(file_handler_level)
        logger.addHandler(file_handler)
    stream_handler = logging.StreamHandler()
    stream_handler.setLevel(stream_handler_level)
    logger.addHandler(stream_handler)

    return logger


class Logger(object):
    """
    The Logger object combines the torch SummaryWriter with python in-built logging

    :param tensorboard_log_path: path to store the tensorboard log, None disables tensorboard
    :param log_file: optional file to mirror the log into
    :param file_handler_level: logging level for the file log
    :param stream_handler_level: logging level for the streaming log
    :param verbose: whether to display at all or not
    """

    def __init__(
        self,
        tensorboard_log_path: Optional[str] = None,
        log_file: Optional[str] = None,
        file_handler_level: int = logging.DEBUG,
        stream_handler_level: int = logging.INFO,
        verbose: bool = True,
    ) -> None:
        self.tensorboard_log_path = tensorboard_log_path
        self._writer = None
        self.logger = get_logger(file_handler_level, stream_handler_level, log_file)
        self.verbose = verbose
        self.final_regrets: List[float] = []
        self.episodes: List[int] = []
        self.wall_clocks: List[float] = []

    @property
    def writer(self):
        if self._writer is None and self.tensorboard_log_path is not None:
            from torch.utils.tensorboard import SummaryWriter

            self._writer = SummaryWriter(self.tensorboard_log_path)
        return self._writer

    def reset_log(self) -> None:
        self.final_regrets = []
        self.episodes = []
        self.wall_clocks = []

    def add_run(
        self,
        final_regret: float,
        episode_count: Optional[int] = None,
        wall_clock: float = 0,
    ) -> None:
        """Add the outcome of one run to the current policy log"""
        self.final_regrets.append(final_regret)
        if episode_count is not None:
            self.episodes.append(episode_count)
        self.wall_clocks.append(wall_clock)

    def _make_policy_log(self, policy: str) -> Log:
        """Make a policy log out of the collected runs"""
        policy_log = Log(policy=policy, runs=len(self.final_regrets))
        if self.final_regrets:
            policy_log.final_regret = float(np.mean(self.final_regrets))
            policy_log.final_regret_std = float(np.std(self.final_regrets))
        if self.episodes:
            policy_log.episodes = float(np.mean(self.episodes))
        policy_log.wall_clock = float(np.sum(self.wall_clocks))

        return policy_log

    def write_log(self, policy: str) -> Log:
        """Write the policy log to python logging and reset it"""
        policy_log = self._make_policy_log(policy)
        if self.verbose:
            self.logger.info(f"{policy}: {policy_log}")
        self.reset_log()
        return policy_log

    def write_curve(
        self, tag: str, steps: Sequence[int], values: Sequence[float]
    ) -> None:
        """Write a curve to tensorboard, one scalar per checkpoint"""
        if self.writer is None:
            return
        for step, value in zip(steps, values):
            self.writer.add_scalar(tag, float(value), int(step))
        self.writer.flush()

    def close(self) -> None:
        if self._writer is not None:
            self._writer.close()
            self._writer = None

    def info(self, msg: str):
        if self.verbose:
            self.logger.info(msg)

    def debug(self, msg: str):
        if self.verbose:
            self.logger.debug(msg)

    def warning(self, msg: str):
        if self.verbose:
            self.logger.warning(msg)

    def error(self, msg: str):
        if self.verbose:
            self.logger.error(msg)

    def exception(self, msg: str):
        if self.verbose:
            self.logger.exception(msg)
