"""
Whole-cell model state.
"""

# future
from __future__ import annotations

# imports
import math
from dataclasses import dataclass

# packages
import numpy

# project
from inamc_app.cell.constants import (
    INITIAL_CAI,
    INITIAL_CAJSR,
    INITIAL_CANSR,
    INITIAL_CICR_TIMER,
    INITIAL_GATES,
    INITIAL_KI,
    INITIAL_NAI,
    INITIAL_VM,
)
from inamc_app.model.constants import STATE_INDEX
from inamc_app.model import occupancy

# concentrations that must stay positive
CONCENTRATION_FIELDS = ("nai", "ki", "cai", "cansr", "cajsr")

# Hodgkin-Huxley style gates
GATE_FIELDS = ("d", "f", "b", "g", "xr", "xs1", "xs2")


@dataclass(slots=True)
class CellState:
    """
    State of the cell at time t.

    Attributes:
        t: Time, ms.
        vm: Membrane potential, mV.
        nai, ki, cai, cansr, cajsr: Concentrations, mmol/L.
        d, f, b, g, xr, xs1, xs2: Gates.
        mc: INa Markov chain occupancies (O, P, Q, R, S, T, U, V, W).
        tc: Time since the last significant dV/dt maximum, ms.
        dvdt: dV/dt of the previous step, mV/ms; NaN before the first step.
        dvdt_prev: dV/dt of the step before that, mV/ms.
    """

    t: float
    vm: float
    nai: float
    ki: float
    cai: float
    cansr: float
    cajsr: float
    d: float
    f: float
    b: float
    g: float
    xr: float
    xs1: float
    xs2: float
    mc: numpy.ndarray
    tc: float = INITIAL_CICR_TIMER
    dvdt: float = math.nan
    dvdt_prev: float = math.nan

    @property
    def open_probability(self) -> float:
        return float(self.mc[STATE_INDEX["O"]])

    @property
    def conservation_error(self) -> float:
        return occupancy.conservation_error(self.mc)

    def concentrations(self) -> dict:
        return {name: getattr(self, name) for name in CONCENTRATION_FIELDS}

    def gates(self) -> dict:
        return {name: getattr(self, name) for name in GATE_FIELDS}


def init_state(normalize: bool = True) -> CellState:
    """
    Resting state of the cell at t = 0.

    Args:
        normalize: Rescale the Markov chain occupancies to sum to 1.

    Returns:
        CellState: The initial state.
    """
    return CellState(
        t=0.0,
        vm=INITIAL_VM,
        nai=INITIAL_NAI,
        ki=INITIAL_KI,
        cai=INITIAL_CAI,
        cansr=INITIAL_CANSR,
        cajsr=INITIAL_CAJSR,
        mc=occupancy.initial_occupancy(normalize=normalize),
        **INITIAL_GATES,
    )
