"""
Matrix Rush-Larsen step from a tabulated transition matrix.
"""

# future
from __future__ import annotations

# packages
import numpy

# project
from inamc_app.tables.stepper_table import StepperTable


def step_mrl(u: numpy.ndarray, stepper: StepperTable, vm: float) -> numpy.ndarray:
    """
    Advance occupancies by u' = T_j u with j the grid point nearest vm.

    Args:
        u: State occupancies.
        stepper: Transition matrices built for the run's time step.
        vm: Frozen membrane potential, mV.

    Returns:
        numpy.ndarray: Updated occupancies.
    """
    return stepper.matrix(vm) @ u
