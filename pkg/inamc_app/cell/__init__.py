"""
Whole-cell action potential model hosting the INa Markov chain.
"""

# relative imports
from .calibrate import calibrate_gna, peak_potential
from .cicr import CicrTimer, ryr_close, ryr_open, update_cicr_timer
from .currents import Currents, GateKinetics, compute_currents, gate_kinetics, ghk_current
from .scan import ScanResult, scan_extreme_dt
from .simulate import (
    CellParameters,
    Protocol,
    advance_cell,
    rest_state,
    simulate,
    solve_jsr_calcium,
    solve_myoplasmic_calcium,
    step_cell,
)
from .state import CellState, init_state
from .stimulus import apply_stimulus
from .trace import TRACE_COLUMNS, Trace, TraceRecorder

__all__ = [
    "calibrate_gna",
    "peak_potential",
    "CicrTimer",
    "ryr_close",
    "ryr_open",
    "update_cicr_timer",
    "Currents",
    "GateKinetics",
    "compute_currents",
    "gate_kinetics",
    "ghk_current",
    "ScanResult",
    "scan_extreme_dt",
    "CellParameters",
    "Protocol",
    "advance_cell",
    "rest_state",
    "simulate",
    "solve_jsr_calcium",
    "solve_myoplasmic_calcium",
    "step_cell",
    "CellState",
    "init_state",
    "apply_stimulus",
    "TRACE_COLUMNS",
    "Trace",
    "TraceRecorder",
]
