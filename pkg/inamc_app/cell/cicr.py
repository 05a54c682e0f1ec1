"""
Calcium-induced calcium release timer.

The release channel opens in a fuzzy window around 4 ms after each significant
maximum of dV/dt; ``tc`` counts time since the last such maximum.
"""

# future
from __future__ import annotations

# imports
import math
from typing import NamedTuple

# project
from inamc_app.cell.constants import RYR_HALF_TIME, RYR_SLOPE
from inamc_app.cell.state import CellState

# defaults
DEFAULT_THRESHOLD = 1.0
DEFAULT_REFRACTORY = 10.0


class CicrTimer(NamedTuple):
    """Updated timer and release gating."""

    tc: float
    ryropen: float
    ryrclose: float


def ryr_open(tc: float) -> float:
    return 1.0 / (1.0 + math.exp((-tc + RYR_HALF_TIME) / RYR_SLOPE))


def ryr_close(tc: float) -> float:
    return 1.0 - ryr_open(tc)


def update_cicr_timer(
    s: CellState,
    dvdt: float,
    dt: float,
    threshold: float = DEFAULT_THRESHOLD,
    refractory: float = DEFAULT_REFRACTORY,
) -> CicrTimer:
    """
    Advance the CICR timer by one step.

    A maximum of dV/dt is recognised causally over three samples: the previous
    step's dV/dt exceeded the threshold and both its neighbours. A missing
    (NaN) history never counts as a maximum, so the decay of a drifting start
    does not reset the timer. Resets closer than the refractory period to the
    previous one are ignored.

    Args:
        s: State at the start of the step; s.dvdt and s.dvdt_prev are the
            dV/dt of the two previous steps.
        dvdt: dV/dt of the current step, mV/ms.
        dt: Time step, ms.
        threshold: Smallest significant dV/dt maximum, mV/ms.
        refractory: Minimum time between resets, ms.

    Returns:
        CicrTimer: New timer value with the release gating at that value.
    """
    peaked = s.dvdt > threshold and s.dvdt > s.dvdt_prev and dvdt < s.dvdt
    tc = 0.0 if peaked and s.tc >= refractory else s.tc + dt
    opened = ryr_open(tc)
    return CicrTimer(tc=tc, ryropen=opened, ryrclose=1.0 - opened)
