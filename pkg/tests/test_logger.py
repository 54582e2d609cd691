import logging
import os

import numpy as np
import pytest

from fpbandit.common.logging_ import Logger
from fpbandit.common.type_aliases import Log


def test_init():
    logger = Logger()
    assert logger.writer is None
    assert logger.logger.name == "fpbandit"


def test_reset_log():
    logger = Logger()
    logger.add_run(1.0, 3, 0.5)
    logger.reset_log()

    assert logger.final_regrets == []
    assert logger.episodes == []
    assert logger.wall_clocks == []


def test_add_run():
    logger = Logger()
    logger.add_run(2.0, 4, 0.5)
    logger.add_run(4.0, None, 0.25)

    assert logger.final_regrets == [2.0, 4.0]
    assert logger.episodes == [4]
    assert logger.wall_clocks == [0.5, 0.25]


def test_make_policy_log():
    logger = Logger()
    logger.add_run(2.0, 4, 0.5)
    logger.add_run(4.0, 6, 0.25)

    actual_log = logger._make_policy_log("fp-ucb")
    expected_log = Log(
        policy="fp-ucb",
        runs=2,
        final_regret=3.0,
        final_regret_std=1.0,
        episodes=5.0,
        wall_clock=0.75,
    )
    assert actual_log == expected_log


def test_make_policy_log_without_episodes():
    logger = Logger()
    logger.add_run(1.0)

    actual_log = logger._make_policy_log("ucb1")
    assert actual_log.episodes is None
    assert actual_log.runs == 1


def test_write_log_resets(caplog):
    logger = Logger()
    logger.add_run(1.0, 2)
    with caplog.at_level(logging.INFO, logger="fpbandit"):
        policy_log = logger.write_log("fp-ucb")

    assert policy_log.final_regret == 1.0
    assert logger.final_regrets == []
    assert "fp-ucb" in caplog.text


def test_quiet_logger(caplog):
    logger = Logger(verbose=False)
    with caplog.at_level(logging.DEBUG, logger="fpbandit"):
        logger.info("hidden")
        logger.warning("hidden")
    assert caplog.text == ""


def test_log_file(tmp_path):
    path = tmp_path / "run.log"
    logger = Logger(log_file=str(path))
    logger.info("first line")
    logger.debug("debug line")
    for handler in logger.logger.handlers:
        handler.flush()

    text = path.read_text()
    assert "first line" in text
    assert "debug line" in text


def test_write_curve(tmp_path):
    pytest.importorskip("torch.utils.tensorboard")
    path = str(tmp_path / "tb")
    logger = Logger(tensorboard_log_path=path)
    logger.write_curve("Regret/fp-ucb", np.arange(1, 4), [0.0, 0.5, 0.5])
    logger.close()

    assert logger._writer is None
    assert os.listdir(path)


def test_write_curve_without_tensorboard():
    logger = Logger()
    logger.write_curve("Regret/fp-ucb", [1, 2], [0.0, 1.0])
    logger.close()


def test_stream_log():
    logger = Logger()
    logger.warning("test")
    logger.error("test")
    logger.exception("test")
