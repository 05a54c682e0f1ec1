"""
Calibration of the fast sodium conductance.

The model description leaves GNa open. It is fixed here by the height of the
first action potential: the conductance is solved for so that a forward Euler
run at the reference step, started from the resting state, peaks at the
configured potential.
"""

# future
from __future__ import annotations

# imports
from dataclasses import replace
from functools import lru_cache
from typing import Optional

# packages
from scipy.optimize import brentq

# project
from inamc_app.cell import constants as c
from inamc_app.cell.simulate import CellParameters, Protocol, rest_state, simulate
from inamc_app.config import AppConfig
from inamc_app.exceptions import InputError, InstabilityDetectedError
from inamc_app.logger import create_logger
from inamc_app.solvers.stepper import MarkovStepper
from inamc_app.solvers.types import Method, MethodConfig

# create logger
LOGGER = create_logger(__name__)

# reference run
CALIBRATION_DT = 0.01
CALIBRATION_WINDOW = 5.0

# conductance search interval, mS/uF, and tolerance
GNA_BRACKET = (0.5 * c.DEFAULT_GNA, 4.0 * c.DEFAULT_GNA)
GNA_XTOL = 1e-4


def peak_potential(
    gna: float,
    params: CellParameters,
    app_config: AppConfig,
    dt: float = CALIBRATION_DT,
) -> float:
    """
    Highest membrane potential of the first action potential.

    The run covers CALIBRATION_WINDOW ms after the stimulus, starting from
    the resting state of ``params``; gna is replaced for the paced run only.

    Args:
        gna: Fast sodium conductance, mS/uF.
        params: Cell parameters; gna is replaced.
        app_config: App configuration, for the resting state.
        dt: Forward Euler step, ms.

    Returns:
        float: Peak Vm, mV.
    """
    config = MethodConfig(Method.FE, dt)
    trace = simulate(
        Protocol(pulses=1, duration=params.stim_time + CALIBRATION_WINDOW, record_stride=1),
        config,
        stepper=MarkovStepper(config),
        params=replace(params, gna=gna),
        state=rest_state(params, app_config),
        app_config=app_config,
    )
    return float(trace.vm.max())


@lru_cache(maxsize=8)
def _solve_gna(
    params: CellParameters,
    rest_start: str,
    settle_ms: float,
    settle_dt: float,
    target: float,
    dt: float,
) -> float:
    app_config = AppConfig(
        rest_start=rest_start, rest_settle_ms=settle_ms, rest_settle_dt=settle_dt
    )
    lo, hi = GNA_BRACKET
    try:
        low_peak = peak_potential(lo, params, app_config, dt)
        high_peak = peak_potential(hi, params, app_config, dt)
    except InstabilityDetectedError as e:
        raise InputError(f"Calibration run failed: {e}") from e
    if not low_peak < target < high_peak:
        raise InputError(
            f"Peak Vm target {target} mV outside [{low_peak:.4g}, {high_peak:.4g}] "
            f"reached for gna in [{lo}, {hi}]"
        )
    gna = brentq(
        lambda g: peak_potential(g, params, app_config, dt) - target, lo, hi, xtol=GNA_XTOL
    )
    LOGGER.info("Calibrated gna=%.6g mS/uF for peak Vm %g mV", gna, target)
    return float(gna)


def calibrate_gna(
    app_config: AppConfig, target: Optional[float] = None, dt: float = CALIBRATION_DT
) -> float:
    """
    Solve for the fast sodium conductance that puts the first action potential
    peak at the target potential.

    The peak is monotone in gna, so the root is found by bracketing. Results
    are cached per cell parameter set, resting state setting and target.

    Args:
        app_config: App configuration; its gna is ignored.
        target: Peak Vm, mV; calibration_peak_vm if None.
        dt: Forward Euler step of the reference run, ms.

    Returns:
        float: The conductance, mS/uF.

    Raises:
        InputError: The target is not reached inside GNA_BRACKET.
    """
    if target is None:
        target = app_config.calibration_peak_vm
    params = CellParameters.from_config(app_config, gna=c.DEFAULT_GNA)
    return _solve_gna(
        params,
        app_config.rest_start,
        app_config.rest_settle_ms,
        app_config.rest_settle_dt,
        float(target),
        float(dt),
    )
