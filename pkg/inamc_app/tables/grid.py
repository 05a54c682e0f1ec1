"""
Voltage grids and nearest-point lookup.
"""

# future
from __future__ import annotations

# imports
import math
from dataclasses import dataclass

# packages
import numpy

# project
from inamc_app.config import AppConfig
from inamc_app.exceptions import InputError
from inamc_app.logger import create_logger

# create logger
LOGGER = create_logger(__name__)

# slack for float division when counting grid points
COUNT_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class VoltageGrid:
    """
    Uniform grid of membrane potentials vmin + j * dv, j = 0 .. count - 1, in mV.
    """

    vmin: float = -100.0
    vmax: float = 70.0
    dv: float = 0.01

    def __post_init__(self):
        if not (math.isfinite(self.vmin) and math.isfinite(self.vmax)):
            raise InputError("Grid bounds must be finite")
        if not self.dv > 0.0:
            raise InputError(f"Grid step must be positive, got {self.dv!r}")
        if self.vmax < self.vmin:
            raise InputError(f"Grid vmax {self.vmax} below vmin {self.vmin}")

    @property
    def count(self) -> int:
        return int(math.floor((self.vmax - self.vmin) / self.dv + COUNT_SLACK)) + 1

    @property
    def voltages(self) -> numpy.ndarray:
        return self.vmin + numpy.arange(self.count, dtype=numpy.float64) * self.dv

    def voltage(self, j: int) -> float:
        """
        Get the potential of grid point j.

        Args:
            j: Grid index.

        Returns:
            float: The tabulated potential, mV.
        """
        return self.vmin + j * self.dv

    @classmethod
    def from_count(cls, vmin: float, dv: float, count: int) -> VoltageGrid:
        """
        Rebuild a grid from its stored (vmin, dv, count) description.

        Args:
            vmin: First grid potential, mV.
            dv: Grid step, mV.
            count: Number of grid points.

        Returns:
            VoltageGrid: The grid.
        """
        if count < 1:
            raise InputError(f"Grid count must be positive, got {count}")
        return cls(vmin=vmin, vmax=vmin + (count - 1) * dv, dv=dv)

    @classmethod
    def from_config(cls, app_config: AppConfig) -> VoltageGrid:
        """
        Build the configured default grid.

        Args:
            app_config: App configuration.

        Returns:
            VoltageGrid: The grid.
        """
        return cls(
            vmin=app_config.grid_vmin, vmax=app_config.grid_vmax, dv=app_config.grid_dv
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VoltageGrid):
            return NotImplemented
        return (
            self.vmin == other.vmin and self.dv == other.dv and self.count == other.count
        )

    def __hash__(self) -> int:
        return hash((self.vmin, self.dv, self.count))


def lookup(grid: VoltageGrid, vm: float) -> int:
    """
    Index of the grid potential nearest to vm.

    Ties round half away from zero; potentials outside the grid clamp to the
    first or last point.

    Args:
        grid: The voltage grid.
        vm: Membrane potential, mV.

    Returns:
        int: Grid index in [0, count - 1].

    Raises:
        InputError: If vm is not finite.
    """
    if not math.isfinite(vm):
        raise InputError(f"Membrane potential must be finite, got {vm!r}")

    x = (vm - grid.vmin) / grid.dv
    j = int(math.floor(x + 0.5)) if x >= 0.0 else -int(math.floor(-x + 0.5))

    last = grid.count - 1
    if j < 0 or j > last:
        LOGGER.debug("Clamped Vm=%.6g mV outside grid [%g, %g]", vm, grid.vmin, grid.vmax)
        return 0 if j < 0 else last
    return j
