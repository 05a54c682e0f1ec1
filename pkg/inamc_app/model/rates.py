"""
Voltage-dependent transition rates of the Clancy-Rudy INa Markov chain.
"""

# future
from __future__ import annotations

# imports
import math
from dataclasses import dataclass, astuple

# packages
import numpy

# project
from inamc_app.exceptions import InputError
from inamc_app.model.constants import N_RATES


@dataclass(frozen=True, slots=True)
class RateSet:
    """
    The 14 distinct transition rates of the chain at one voltage, in 1/ms.

    Directional aliases follow the state letters, e.g. ``a_po`` is the rate
    from P into O.
    """

    a11: float
    a12: float
    a13: float
    b11: float
    b12: float
    b13: float
    a2: float
    b2: float
    a3: float
    b3: float
    a4: float
    b4: float
    a5: float
    b5: float

    # fast at high Vm
    @property
    def a_rq(self) -> float:
        return self.a11

    @property
    def a_st(self) -> float:
        return self.a11

    @property
    def a_qp(self) -> float:
        return self.a12

    @property
    def a_tu(self) -> float:
        return self.a12

    @property
    def a_po(self) -> float:
        return self.a13

    @property
    def a_ou(self) -> float:
        return self.a2

    # fast at low Vm
    @property
    def a_qr(self) -> float:
        return self.b11

    @property
    def a_ts(self) -> float:
        return self.b11

    @property
    def a_pq(self) -> float:
        return self.b12

    @property
    def a_ut(self) -> float:
        return self.b12

    @property
    def a_op(self) -> float:
        return self.b13

    def to_array(self) -> numpy.ndarray:
        """
        Pack the rates into a float64 vector in field order.

        Returns:
            numpy.ndarray: Vector of length 14.
        """
        return numpy.array(astuple(self), dtype=numpy.float64)

    @classmethod
    def from_array(cls, values: numpy.ndarray) -> RateSet:
        """
        Build a RateSet from a vector in field order.

        Args:
            values: Vector of length 14.

        Returns:
            RateSet: The rate set.
        """
        if len(values) != N_RATES:
            raise InputError(f"Expected {N_RATES} rates, got {len(values)}")
        return cls(*(float(value) for value in values))


def eval_rates(vm: float) -> RateSet:
    """
    Evaluate all transition rates at a membrane potential.

    Args:
        vm: Membrane potential, mV.

    Returns:
        RateSet: Rates in 1/ms.

    Raises:
        InputError: If vm is not finite.
    """
    if not math.isfinite(vm):
        raise InputError(f"Membrane potential must be finite, got {vm!r}")

    a11 = 3.802 / (0.1027 * math.exp(-vm / 17.0) + 0.20 * math.exp(-vm / 150.0))
    a12 = 3.802 / (0.1027 * math.exp(-vm / 15.0) + 0.23 * math.exp(-vm / 150.0))
    a13 = 3.802 / (0.1027 * math.exp(-vm / 12.0) + 0.25 * math.exp(-vm / 150.0))
    b11 = 0.1917 * math.exp(-vm / 20.3)
    b12 = 0.20 * math.exp(-(vm - 5.0) / 20.3)
    b13 = 0.22 * math.exp(-(vm - 10.0) / 20.3)
    a3 = 3.7933e-7 * math.exp(-vm / 7.7)
    b3 = 8.4e-3 + 2e-5 * vm
    a2 = 9.178 * math.exp(vm / 29.68)

    # derived rates
    b2 = (a13 * a2 * a3) / (b13 * b3)
    a4 = a2 / 100.0
    b4 = a3
    a5 = a2 / 9.5e4
    b5 = a3 / 50.0

    return RateSet(
        a11=a11,
        a12=a12,
        a13=a13,
        b11=b11,
        b12=b12,
        b13=b13,
        a2=a2,
        b2=b2,
        a3=a3,
        b3=b3,
        a4=a4,
        b4=b4,
        a5=a5,
        b5=b5,
    )
