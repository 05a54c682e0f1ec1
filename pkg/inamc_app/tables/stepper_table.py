"""
Per-timestep transition matrices T_j = S_j exp(D_j dt) S_j^-1 on a voltage grid.
"""

# future
from __future__ import annotations

# imports
from dataclasses import dataclass
from typing import Optional

# packages
import numpy

# project
from inamc_app.config import AppConfig, get_config
from inamc_app.exceptions import ImagResidueExceededError, InputError, TabulationError
from inamc_app.logger import create_logger
from inamc_app.tables.eigen_table import EigenTable
from inamc_app.tables.grid import VoltageGrid, lookup

# create logger
LOGGER = create_logger(__name__)

# tolerance on the unit column sums of every T_j
COLUMN_SUM_TOLERANCE = 1e-10


@dataclass(frozen=True)
class StepperTable:
    """
    Transition matrices for one time step on a voltage grid.

    Attributes:
        grid: The voltage grid.
        dt: Time step the matrices were built for, ms.
        T: Real matrices, shape (count, 9, 9).
    """

    grid: VoltageGrid
    dt: float
    T: numpy.ndarray

    def matrix(self, vm: float) -> numpy.ndarray:
        """
        Get the transition matrix for the grid point nearest vm.

        Args:
            vm: Membrane potential, mV.

        Returns:
            numpy.ndarray: The 9x9 transition matrix.
        """
        return self.T[lookup(self.grid, vm)]


def build_stepper(
    table: EigenTable, dt: float, app_config: Optional[AppConfig] = None
) -> StepperTable:
    """
    Exponentiate every tabulated decomposition for a fixed time step.

    Args:
        table: Eigen table.
        dt: Time step, ms; must be positive.
        app_config: App configuration. If None, load from file.

    Returns:
        StepperTable: The transition matrices.

    Raises:
        InputError: Non-positive dt.
        ImagResidueExceededError: Imaginary residue too large at some voltage.
        TabulationError: Column sums of some T_j deviate from 1.
    """
    if not dt > 0.0:
        raise InputError(f"Time step must be positive, got {dt!r}")
    if app_config is None:
        app_config = get_config()

    # S * exp(D dt) scales the columns of S
    t_complex = (table.S * numpy.exp(table.D * dt)[:, None, :]) @ table.Sinv

    imag_residue = numpy.abs(t_complex.imag).max(axis=(1, 2))
    worst = int(numpy.argmax(imag_residue))
    if imag_residue[worst] > app_config.imag_residue_max:
        raise ImagResidueExceededError(
            f"Imaginary residue {imag_residue[worst]:.3e} at "
            f"Vm={table.grid.voltage(worst):.6g} mV"
        )
    if imag_residue[worst] > app_config.imag_residue_log:
        LOGGER.info(
            "Largest imaginary residue %.3e at Vm=%.6g mV",
            imag_residue[worst],
            table.grid.voltage(worst),
        )

    t_real = numpy.ascontiguousarray(t_complex.real)
    column_error = numpy.abs(t_real.sum(axis=1) - 1.0).max(axis=1)
    worst = int(numpy.argmax(column_error))
    if column_error[worst] > COLUMN_SUM_TOLERANCE:
        raise TabulationError(
            f"Column sums of T deviate by {column_error[worst]:.3e} at "
            f"Vm={table.grid.voltage(worst):.6g} mV"
        )

    t_real.setflags(write=False)
    LOGGER.info("Built stepper table for dt=%g ms over %d voltages", dt, len(table))
    return StepperTable(grid=table.grid, dt=dt, T=t_real)
