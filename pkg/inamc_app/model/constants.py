"""
Constants for the Clancy-Rudy INa Markov chain: state layout and initial occupancies.
"""

# imports
from typing import Dict, Tuple

# canonical state order used by every vector, matrix and file in the package
STATE_NAMES: Tuple[str, ...] = ("O", "P", "Q", "R", "S", "T", "U", "V", "W")
N_STATES = len(STATE_NAMES)
STATE_INDEX: Dict[str, int] = {name: index for index, name in enumerate(STATE_NAMES)}

# conventional names of the states in the channel literature
STANDARD_STATE_NAMES: Dict[str, str] = {
    "O": "O",
    "P": "C1",
    "Q": "C2",
    "R": "C3",
    "S": "IC3",
    "T": "IC2",
    "U": "IF",
    "V": "IM1",
    "W": "IM2",
}

# raw initial occupancies as published; they sum to 1.0000331
RAW_INITIAL_OCCUPANCY: Tuple[float, ...] = (
    4.386e-8,
    5.329e-5,
    1.064e-2,
    8.018e-1,
    1.436e-1,
    1.907e-3,
    1.111e-5,
    8.417e-4,
    4.118e-2,
)

# the 14 distinct transition rate names, in RateSet field order
RATE_NAMES: Tuple[str, ...] = (
    "a11",
    "a12",
    "a13",
    "b11",
    "b12",
    "b13",
    "a2",
    "b2",
    "a3",
    "b3",
    "a4",
    "b4",
    "a5",
    "b5",
)
N_RATES = len(RATE_NAMES)

# directed edges (source, target, rate name) per split part
#   part 0: fast at high Vm, part 1: fast at low Vm, part 2: uniformly slow
SPLIT_EDGES: Tuple[Tuple[Tuple[str, str, str], ...], ...] = (
    (
        ("R", "Q", "a11"),
        ("S", "T", "a11"),
        ("Q", "P", "a12"),
        ("T", "U", "a12"),
        ("P", "O", "a13"),
        ("O", "U", "a2"),
    ),
    (
        ("P", "Q", "b12"),
        ("U", "T", "b12"),
        ("Q", "R", "b11"),
        ("T", "S", "b11"),
        ("O", "P", "b13"),
    ),
    (
        ("R", "S", "b3"),
        ("Q", "T", "b3"),
        ("P", "U", "b3"),
        ("S", "R", "a3"),
        ("T", "Q", "a3"),
        ("U", "P", "a3"),
        ("V", "W", "a5"),
        ("W", "V", "b5"),
        ("U", "O", "b2"),
        ("U", "V", "a4"),
        ("V", "U", "b4"),
    ),
)
