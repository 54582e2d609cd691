from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

ArmIndex = int
ParameterIndex = int
MeanVector = Union[Sequence[float], np.ndarray]
# (support points, probabilities) of one arm under one parameter
DiscreteDistribution = Tuple[np.ndarray, np.ndarray]
KLTable = Dict[Tuple[ArmIndex, ParameterIndex], float]


@dataclass
class Log:
    """
    Log to see simulation progress for one policy

    :param policy: policy identifier
    :param runs: number of completed runs
    :param final_regret: mean final pseudo-regret over the completed runs
    :param final_regret_std: standard deviation of the final pseudo-regret
    :param episodes: mean number of episodes, FP-UCB only
    :param wall_clock: total seconds spent in the runs
    """

    policy: str = ""
    runs: int = 0
    final_regret: float = 0
    final_regret_std: float = 0
    episodes: Optional[float] = None
    wall_clock: float = 0
