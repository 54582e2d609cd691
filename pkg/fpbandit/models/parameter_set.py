"""The finite hypothesis class Theta and the generators that enumerate it"""

import itertools
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from fpbandit.common.enumerations import GeneratorType, RewardFamily
from fpbandit.common.exceptions import InstanceError
from fpbandit.common.type_aliases import DiscreteDistribution, MeanVector

DISTRIBUTION_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class ParameterSet:
    """
    A finite parameter set: every parameter fixes the reward distribution of every arm.

    :param arm_count: number of arms L
    :param names: unique parameter identifiers, in enumeration order
    :param means: (|Theta|, L) array of mean rewards mu_i(theta)
    :param reward_family: the reward distribution family
    :param distributions: for the discrete family, distributions[theta][arm] = (support, probabilities)
    :param tie_epsilon: tolerance used whenever two means are tested for equality
    """

    arm_count: int
    names: Tuple[str, ...]
    means: np.ndarray
    reward_family: RewardFamily = RewardFamily.BERNOULLI
    distributions: Optional[Tuple[Tuple[DiscreteDistribution, ...], ...]] = None
    tie_epsilon: float = 0.0

    def __post_init__(self) -> None:
        means = np.array(self.means, dtype=np.float64)
        if means.ndim != 2:
            raise InstanceError(
                f"means must be a (parameters, arms) table, got shape {means.shape}"
            )
        means.setflags(write=False)
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "reward_family", RewardFamily(self.reward_family))

        if self.arm_count < 2:
            raise InstanceError(f"at least 2 arms are needed, got {self.arm_count}")
        if means.shape[0] < 1:
            raise InstanceError("the parameter set is empty")
        if means.shape[1] != self.arm_count:
            raise InstanceError(
                f"every mean vector needs {self.arm_count} entries, got {means.shape[1]}"
            )
        if len(self.names) != means.shape[0]:
            raise InstanceError(
                f"{len(self.names)} names given for {means.shape[0]} parameters"
            )
        if len(set(self.names)) != len(self.names):
            raise InstanceError("parameter identifiers must be unique")
        if not np.all(np.isfinite(means)) or np.any(means < 0) or np.any(means > 1):
            bad = np.argwhere(~((means >= 0) & (means <= 1)))[0]
            raise InstanceError(
                f"mean of arm {bad[1]} under '{self.names[bad[0]]}' is outside [0, 1]"
            )
        if self.tie_epsilon < 0:
            raise InstanceError(
                f"tie_epsilon must be nonnegative, got {self.tie_epsilon}"
            )

        if self.reward_family == RewardFamily.DISCRETE_BOUNDED:
            self._check_distributions()
        elif self.distributions is not None:
            raise InstanceError(
                "explicit distributions need the discrete reward family"
            )

    def _check_distributions(self) -> None:
        if self.distributions is None or len(self.distributions) != len(self):
            raise InstanceError(
                "the discrete family needs a distribution per parameter"
            )
        checked = []
        for theta, arms in enumerate(self.distributions):
            if len(arms) != self.arm_count:
                raise InstanceError(
                    f"'{self.names[theta]}' needs a distribution for each of the {self.arm_count} arms"
                )
            checked_arms = []
            for arm, (support, probabilities) in enumerate(arms):
                support = np.array(support, dtype=np.float64)
                probabilities = np.array(probabilities, dtype=np.float64)
                where = f"arm {arm} under '{self.names[theta]}'"
                if support.shape != probabilities.shape or support.ndim != 1:
                    raise InstanceError(
                        f"support and probabilities differ in shape for {where}"
                    )
                if np.any(support < 0) or np.any(support > 1):
                    raise InstanceError(f"support of {where} leaves [0, 1]")
                if np.any(probabilities < 0):
                    raise InstanceError(f"negative probability for {where}")
                if abs(probabilities.sum() - 1) > DISTRIBUTION_TOLERANCE:
                    raise InstanceError(f"probabilities of {where} do not sum to 1")
                mean = support @ probabilities
                if abs(mean - self.means[theta, arm]) > DISTRIBUTION_TOLERANCE:
                    raise InstanceError(
                        f"declared mean of {where} does not match its distribution"
                    )
                support.setflags(write=False)
                probabilities.setflags(write=False)
                checked_arms.append((support, probabilities))
            checked.append(tuple(checked_arms))
        object.__setattr__(self, "distributions", tuple(checked))

    def __len__(self) -> int:
        return self.means.shape[0]

    def index_of(self, name: str) -> int:
        """Index of the parameter with the given identifier"""
        try:
            return self.names.index(name)
        except ValueError:
            raise InstanceError(f"no parameter named '{name}'") from None

    def index_of_means(self, means: MeanVector) -> int:
        """Index of the first parameter whose mean vector matches `means` within tie_epsilon"""
        means = np.asarray(means, dtype=np.float64)
        if means.shape != (self.arm_count,):
            raise InstanceError(f"expected {self.arm_count} means, got {means.shape}")
        matches = np.all(np.abs(self.means - means) <= self.tie_epsilon, axis=1)
        if not np.any(matches):
            raise InstanceError(f"no parameter has means {means.tolist()}")
        return int(np.argmax(matches))

    def check_index(self, theta: int) -> int:
        if not 0 <= theta < len(self):
            raise IndexError(
                f"parameter index {theta} out of range for {len(self)} parameters"
            )
        return int(theta)

    def distribution(self, theta: int, arm: int) -> DiscreteDistribution:
        """
        The reward distribution of one arm under one parameter as (support, probabilities)

        :param theta: parameter index
        :param arm: arm index
        :return: support points and their probabilities
        """
        if self.reward_family == RewardFamily.BERNOULLI:
            mean = self.means[theta, arm]
            return np.array([0.0, 1.0]), np.array([1 - mean, mean])
        return self.distributions[theta][arm]


def _identifiers(prefix: str, count: int, width: int) -> List[str]:
    width = max(width, len(str(max(count - 1, 0))))
    return [f"{prefix}_{i:0{width}d}" for i in range(count)]


def _check_values(values: Sequence[float], what: str) -> List[float]:
    values = [float(v) for v in values]
    if not values:
        raise InstanceError(f"{what} is empty")
    for v in values:
        if not 0 <= v <= 1:
            raise InstanceError(f"{what} contains {v}, outside [0, 1]")
    return values


def build_parameter_set(
    description: Dict[str, Any],
    arm_count: Optional[int] = None,
    reward_family: Union[str, RewardFamily] = RewardFamily.BERNOULLI,
    tie_epsilon: float = 0.0,
) -> ParameterSet:
    """
    Enumerate a parameter set from a generator description.

    Explicit: {"type": "explicit", "list": [{"name": ..., "means": [...]}, ...]}; entries may
        also be bare mean vectors, and for the discrete family carry "supports" and
        "probabilities" (one list per arm).
    Permutations: {"type": "permutations", "base": [...]}; every distinct permutation of the
        base vector, in itertools order, named perm_000, perm_001, ...
    Product: {"type": "product", "values": [...], "arms": L}; the Cartesian product of the
        value set over L arms, in lexicographic order, named prod_0000, prod_0001, ...

    :param description: the generator description
    :param arm_count: number of arms, checked against the description when both are given
    :param reward_family: reward distribution family
    :param tie_epsilon: tolerance for mean equality
    :return: the fully enumerated parameter set
    """
    reward_family = RewardFamily(reward_family)
    try:
        generator = GeneratorType(str(description.get("type", "explicit")).lower())
    except ValueError:
        raise InstanceError(
            f"unknown parameter generator '{description.get('type')}'"
        ) from None
    if arm_count is not None and arm_count < 1:
        raise InstanceError(f"arm count must be positive, got {arm_count}")
    distributions = None

    if generator == GeneratorType.EXPLICIT:
        entries = description.get("list", [])
        if not entries:
            raise InstanceError("explicit parameter list is empty")
        names, rows, distributions = [], [], []
        default_names = _identifiers("theta", len(entries), 3)
        for i, entry in enumerate(entries):
            if not isinstance(entry, dict):
                entry = {"means": entry}
            means = _check_values(entry.get("means", []), f"means of parameter {i}")
            if arm_count is None:
                arm_count = len(means)
            if len(means) != arm_count:
                raise InstanceError(
                    f"parameter {i} has {len(means)} means, expected {arm_count}"
                )
            names.append(str(entry.get("name", default_names[i])))
            rows.append(means)
            if "supports" in entry:
                distributions.append(
                    tuple(zip(entry["supports"], entry.get("probabilities", [])))
                )
        if not distributions:
            distributions = None
        elif len(distributions) != len(rows):
            raise InstanceError("either every parameter or none carries a distribution")

    elif generator == GeneratorType.PERMUTATIONS:
        base = _check_values(description.get("base", []), "permutation base")
        if arm_count is not None and arm_count != len(base):
            raise InstanceError(
                f"permutation base has {len(base)} entries, expected {arm_count}"
            )
        arm_count = len(base)
        # dict keeps the first occurrence of repeated permutations
        rows = list(dict.fromkeys(itertools.permutations(base)))
        names = _identifiers("perm", len(rows), 3)

    else:
        values = _check_values(description.get("values", []), "product value set")
        arms = description.get("arms", arm_count)
        if arms is None or int(arms) < 1:
            raise InstanceError(
                f"product generator needs a positive arm count, got {arms}"
            )
        if arm_count is not None and int(arms) != arm_count:
            raise InstanceError(
                f"product generator has {arms} arms, expected {arm_count}"
            )
        arm_count = int(arms)
        rows = list(itertools.product(values, repeat=arm_count))
        names = _identifiers("prod", len(rows), 4)

    return ParameterSet(
        arm_count=arm_count,
        names=tuple(names),
        means=np.array(rows, dtype=np.float64).reshape(len(rows), arm_count),
        reward_family=reward_family,
        distributions=None if distributions is None else tuple(distributions),
        tie_epsilon=tie_epsilon,
    )
