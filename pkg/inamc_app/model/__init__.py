"""
Clancy-Rudy INa Markov chain model: states, rates and generators.
"""

# relative imports
from .constants import (
    N_RATES,
    N_STATES,
    RATE_NAMES,
    RAW_INITIAL_OCCUPANCY,
    STATE_INDEX,
    STATE_NAMES,
)
from .generators import (
    SplitGenerators,
    assemble_full,
    assemble_split,
    generator_derivative,
    generators_at,
)
from .occupancy import conservation_error, initial_occupancy, validate_occupancy
from .rates import RateSet, eval_rates

__all__ = [
    "N_RATES",
    "N_STATES",
    "RATE_NAMES",
    "RAW_INITIAL_OCCUPANCY",
    "STATE_INDEX",
    "STATE_NAMES",
    "SplitGenerators",
    "assemble_full",
    "assemble_split",
    "generator_derivative",
    "generators_at",
    "conservation_error",
    "initial_occupancy",
    "validate_occupancy",
    "RateSet",
    "eval_rates",
]
