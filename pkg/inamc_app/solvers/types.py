"""
Method selection types for the Markov chain timesteppers.
"""

# future
from __future__ import annotations

# imports
import math
from dataclasses import dataclass
from enum import Enum

# project
from inamc_app.exceptions import InputError


class Method(str, Enum):
    """Markov chain timestepping method."""

    FE = "fe"
    MRL = "mrl"
    HOS = "hos"


class HosTableMode(str, Enum):
    """Which quantities a tabulated HOS run looks up per voltage."""

    RATES = "rates"
    COEFFICIENTS = "coefficients"


@dataclass(frozen=True)
class MethodConfig:
    """
    Markov chain method configuration.

    Attributes:
        method: The timestepping method.
        dt: Time step, ms.
        tabulated: Use voltage tables for FE and HOS; MRL is always tabulated.
        hos_table_mode: Quantities tabulated for HOS when tabulated is set.
    """

    method: Method
    dt: float
    tabulated: bool = False
    hos_table_mode: HosTableMode = HosTableMode.COEFFICIENTS

    def __post_init__(self):
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise InputError(f"Time step must be positive, got {self.dt!r}")
        # accept plain strings from the CLI
        object.__setattr__(self, "method", Method(self.method))
        object.__setattr__(self, "hos_table_mode", HosTableMode(self.hos_table_mode))

    @property
    def uses_tables(self) -> bool:
        return self.method is Method.MRL or self.tabulated

    @property
    def label(self) -> str:
        """Short display name such as ``HOS (tab.)``."""
        name = self.method.name
        if self.method is Method.MRL or not self.tabulated:
            return name
        if self.method is Method.HOS and self.hos_table_mode is HosTableMode.RATES:
            return f"{name} (tab. rates)"
        return f"{name} (tab.)"
