from fpbandit.signal_processing.divergences import (
    bernoulli_kl,
    discrete_kl,
    kl_divergence,
)
from fpbandit.signal_processing.estimators import (
    confidence_radius,
    empirical_mean,
    ucb_index,
)

__all__ = [
    "bernoulli_kl",
    "confidence_radius",
    "discrete_kl",
    "empirical_mean",
    "kl_divergence",
    "ucb_index",
]
