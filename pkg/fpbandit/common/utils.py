import os
from dataclasses import asdict, is_dataclass
from enum import Enum
from typing import Any, List, Optional

import numpy as np
import psutil

THREADS_ENV_VAR = "FPBANDIT_THREADS"


def split_seed(base_seed: int, *keys: int) -> int:
    """
    Derive an independent 64-bit seed from a base seed and a sequence of integer keys.
    Uses numpy's SeedSequence entropy mixing, so (base_seed, 0) and (base_seed, 1)
    give unrelated streams and the result does not depend on call order.

    :param base_seed: the base seed
    :param keys: e.g. run index, policy key
    :return: the derived seed
    """
    sequence = np.random.SeedSequence([int(base_seed), *[int(key) for key in keys]])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def make_generators(seed: int, count: int) -> List[np.random.Generator]:
    """
    Spawn `count` independent PCG64 generators from one seed

    :param seed: the seed
    :param count: number of generators
    :return: the generators, one per child SeedSequence
    """
    children = np.random.SeedSequence(int(seed)).spawn(count)
    return [np.random.Generator(np.random.PCG64(child)) for child in children]


def checkpoint_schedule(
    horizon: int, dense_until: int = 1000, points_per_decade: int = 100
) -> np.ndarray:
    """
    Times (1-based) at which regret curves are stored: every step up to `dense_until`,
    then multiplicatively spaced, always ending with the horizon itself.

    :param horizon: the last time step
    :param dense_until: store every step up to here
    :param points_per_decade: checkpoints per factor of 10 after `dense_until`
    :return: strictly increasing int64 array of checkpoint times
    """
    if horizon < 1:
        raise ValueError(f"horizon must be positive, got {horizon}")
    dense = np.arange(1, min(horizon, dense_until) + 1, dtype=np.int64)
    if horizon <= dense_until:
        return dense
    decades = np.log10(horizon / dense_until)
    num_points = max(1, int(np.ceil(decades * points_per_decade)))
    sparse = np.round(
        dense_until * np.logspace(0, decades, num_points + 1)[1:]
    ).astype(np.int64)
    sparse = np.clip(sparse, dense_until + 1, horizon)
    checkpoints = np.unique(np.concatenate((dense, sparse, [horizon])))

    return checkpoints


def get_worker_count(requested: Optional[int] = None) -> int:
    """
    Number of worker processes to use, capped by the FPBANDIT_THREADS environment variable

    :param requested: explicitly requested count, defaults to the physical cores
    :return: at least 1
    """
    count = requested
    if count is None:
        count = psutil.cpu_count(logical=False) or psutil.cpu_count() or 1
    cap = os.environ.get(THREADS_ENV_VAR)
    if cap:
        try:
            count = min(count, int(cap))
        except ValueError:
            raise ValueError(
                f"{THREADS_ENV_VAR} must be an integer, got '{cap}'"
            ) from None
    return max(1, int(count))


def to_builtin(data: Any) -> Any:
    """Convert dataclasses, enums and numpy types into JSON-serialisable python objects"""
    if is_dataclass(data) and not isinstance(data, type):
        return to_builtin(asdict(data))
    if isinstance(data, Enum):
        return data.value
    if isinstance(data, dict):
        return {_key(k): to_builtin(v) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [to_builtin(v) for v in data]
    if isinstance(data, np.ndarray):
        return to_builtin(data.tolist())
    if isinstance(data, np.integer):
        return int(data)
    if isinstance(data, np.floating):
        data = float(data)
    if isinstance(data, float) and not np.isfinite(data):
        return "inf" if data > 0 else ("-inf" if data < 0 else "nan")
    return data


def _key(key: Any) -> str:
    if isinstance(key, tuple):
        return ",".join(str(to_builtin(k)) for k in key)
    return str(to_builtin(key))
