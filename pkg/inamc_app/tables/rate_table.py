"""
Tabulated transition rates and generators on a voltage grid.
"""

# future
from __future__ import annotations

# imports
from dataclasses import dataclass
from typing import Tuple

# packages
import numpy

# project
from inamc_app.logger import create_logger
from inamc_app.model.generators import assemble_full
from inamc_app.model.rates import RateSet, eval_rates
from inamc_app.tables.grid import VoltageGrid, lookup

# create logger
LOGGER = create_logger(__name__)


@dataclass(frozen=True)
class RateTable:
    """
    Rates and full generators at every point of a voltage grid.

    Attributes:
        grid: The voltage grid.
        rate_sets: Rates per grid point.
        rates: Packed rates, shape (count, 14).
        generators: Full generators, shape (count, 9, 9).
    """

    grid: VoltageGrid
    rate_sets: Tuple[RateSet, ...]
    rates: numpy.ndarray
    generators: numpy.ndarray

    def rate_set(self, vm: float) -> RateSet:
        """
        Get the rates tabulated nearest to vm.

        Args:
            vm: Membrane potential, mV.

        Returns:
            RateSet: The tabulated rates.
        """
        return self.rate_sets[lookup(self.grid, vm)]

    def generator(self, vm: float) -> numpy.ndarray:
        """
        Get the generator tabulated nearest to vm.

        Args:
            vm: Membrane potential, mV.

        Returns:
            numpy.ndarray: The 9x9 generator.
        """
        return self.generators[lookup(self.grid, vm)]


def build_rate_table(grid: VoltageGrid) -> RateTable:
    """
    Evaluate rates and generators at every grid voltage.

    Args:
        grid: The voltage grid.

    Returns:
        RateTable: The table.
    """
    rate_sets = tuple(eval_rates(vm) for vm in grid.voltages.tolist())
    rates = numpy.stack([rate_set.to_array() for rate_set in rate_sets])
    generators = numpy.stack([assemble_full(rate_set) for rate_set in rate_sets])
    rates.setflags(write=False)
    generators.setflags(write=False)
    LOGGER.info("Built rate table over %d voltages", grid.count)
    return RateTable(grid=grid, rate_sets=rate_sets, rates=rates, generators=generators)
