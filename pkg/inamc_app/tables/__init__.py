"""
Voltage-indexed tables: grids, eigendecompositions, transition matrices and rates.
"""

# relative imports
from .eigen_table import EigenTable, build_eigen_table, load_table, save_table
from .grid import VoltageGrid, lookup
from .rate_table import RateTable, build_rate_table
from .stepper_table import StepperTable, build_stepper

__all__ = [
    "EigenTable",
    "build_eigen_table",
    "load_table",
    "save_table",
    "VoltageGrid",
    "lookup",
    "RateTable",
    "build_rate_table",
    "StepperTable",
    "build_stepper",
]
