"""
Stimulus by instantaneous potassium injection.
"""

# future
from __future__ import annotations

# imports
import dataclasses

# project
from inamc_app.cell.constants import FLUX_FACTOR, MEMBRANE_CAPACITANCE
from inamc_app.cell.state import CellState

# default stimulus target potential, mV
DEFAULT_STIM_VM = -35.0


def apply_stimulus(s: CellState, stim_vm: float = DEFAULT_STIM_VM) -> CellState:
    """
    Inject enough potassium to set the membrane potential to stim_vm.

    The injected charge dV Cm Acap is added to Ki, so ion accounting stays
    consistent with the potential jump.

    Args:
        s: Current state.
        stim_vm: Target membrane potential, mV.

    Returns:
        CellState: Stimulated state.
    """
    delta_v = stim_vm - s.vm
    return dataclasses.replace(
        s, vm=stim_vm, ki=s.ki + delta_v * MEMBRANE_CAPACITANCE * FLUX_FACTOR
    )
