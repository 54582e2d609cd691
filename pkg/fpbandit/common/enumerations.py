from enum import Enum


class RewardFamily(Enum):
    """Reward distribution families P_i(.; theta)"""

    BERNOULLI = "bernoulli"
    DISCRETE_BOUNDED = "discrete"


class GeneratorType(Enum):
    """Ways of describing a parameter set in an instance file"""

    EXPLICIT = "explicit"
    PERMUTATIONS = "permutations"
    PRODUCT = "product"


class Regime(Enum):
    """Regret regime of an instance, decided by whether the confusion set is empty"""

    BOUNDED = "bounded"
    LOGARITHMIC = "logarithmic"


class PolicyType(Enum):
    FP_UCB = "fp-ucb"
    UCB1 = "ucb1"
    THOMPSON = "thompson"


class CertificateType(Enum):
    """How the lower bound solver decided feasibility of its last bracket"""

    EXACT = "exact"
    MULTIPLICATIVE_WEIGHTS = "multiplicative_weights"
    GRID = "grid"
    UNDECIDED = "undecided"
    VACUOUS = "vacuous"
