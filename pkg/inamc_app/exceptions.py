"""
Exception hierarchy for the INa Markov chain toolkit.
"""

# future
from __future__ import annotations

# imports
from typing import Any, Optional

# instability kinds
UNSTABLE = "unstable"
UNPHYSICAL = "unphysical"


class InaMCError(Exception):
    """Base class for all toolkit errors."""


class InputError(InaMCError, ValueError):
    """Invalid input value, e.g. a non-finite voltage or a negative time step."""


class NonConvergenceError(InaMCError, ArithmeticError):
    """The eigensolver did not converge."""


class NearDefectiveError(InaMCError, ArithmeticError):
    """
    A matrix is too close to defective for a reliable eigendecomposition.
    """

    def __init__(self, message: str, voltage: Optional[float] = None):
        self.voltage = voltage
        if voltage is not None:
            message = f"{message} (Vm={voltage:.6g} mV)"
        super().__init__(message)


class ImagResidueExceededError(InaMCError, ArithmeticError):
    """The imaginary part of an eigen-reconstructed real matrix is too large."""


class DegenerateRatesError(InaMCError, ArithmeticError):
    """Two rates entering an analytic substep denominator (nearly) coincide."""


class TableFormatError(InaMCError, ValueError):
    """A table file has a bad magic, version or length."""


class InstabilityDetectedError(InaMCError, RuntimeError):
    """
    The cell simulation left its physical envelope.

    Attributes:
        t: Simulation time of detection, ms.
        kind: "unphysical" for a negative or unsolvable concentration,
            "unstable" for divergence.
        trace: The partial trace recorded up to detection, if any.
    """

    def __init__(self, message: str, t: float, kind: str = UNSTABLE, trace: Any = None):
        self.t = t
        self.kind = kind
        self.trace = trace
        super().__init__(f"{message} at t={t:.6g} ms")


class TabulationError(InaMCError, ArithmeticError):
    """A tabulated transition matrix failed its probability check."""


class TraceFormatError(InaMCError, ValueError):
    """A trace file or frame has a missing, extra or misnamed column."""
