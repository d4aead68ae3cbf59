"""Driver-set identification and policy optimization for causal Bayesian networks."""

from ._core import (
    BudgetError,
    Error,
    Network,
    ValidationError,
    ZeroProbabilityError,
    load,
    parse,
    random_network,
)

__all__ = [
    "BudgetError",
    "Error",
    "Network",
    "ValidationError",
    "ZeroProbabilityError",
    "load",
    "parse",
    "random_network",
]
__version__ = "0.1.0"
