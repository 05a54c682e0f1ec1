"""
Forward Euler and Rush-Larsen single-step updates.
"""

# future
from __future__ import annotations

# imports
import math
from functools import lru_cache

# packages
import numpy

# project
from inamc_app.exceptions import InputError
from inamc_app.model.generators import assemble_full
from inamc_app.model.rates import eval_rates

# voltage resolution of the cached spectral radius, mV
STABILITY_BUCKET_MV = 0.01

# forward Euler is stable while dt * rho(A) stays within this bound
FE_STABILITY_BOUND = 2.0


def step_fe(u: numpy.ndarray, a: numpy.ndarray, dt: float) -> numpy.ndarray:
    """
    Forward Euler step u' = u + dt A u of the master equation.

    Args:
        u: State occupancies.
        a: Generator at the frozen voltage.
        dt: Time step, ms.

    Returns:
        numpy.ndarray: Updated occupancies.
    """
    return u + dt * (a @ u)


def step_gate_fe(y: float, yss: float, tau: float, dt: float) -> float:
    """
    Forward Euler step of a gate dy/dt = (yss - y) / tau.

    Args:
        y: Gate value.
        yss: Steady-state value at the frozen voltage.
        tau: Time constant, ms.
        dt: Time step, ms.

    Returns:
        float: Updated gate value.
    """
    return y + dt * (yss - y) / tau


def step_gate_rl(y: float, yss: float, tau: float, dt: float) -> float:
    """
    Rush-Larsen step: exact relaxation of a gate towards yss for frozen voltage.

    Args:
        y: Gate value.
        yss: Steady-state value.
        tau: Time constant, ms; must be positive.
        dt: Time step, ms.

    Returns:
        float: y + (yss - y) (1 - exp(-dt / tau)), exact at dt = 0.

    Raises:
        InputError: Non-positive tau.
    """
    if not tau > 0.0:
        raise InputError(f"Gate time constant must be positive, got {tau!r}")
    return y + (yss - y) * -math.expm1(-dt / tau)


@lru_cache(maxsize=None)
def _spectral_radius_at(bucket: int) -> float:
    a = assemble_full(eval_rates(bucket * STABILITY_BUCKET_MV))
    return float(numpy.abs(numpy.linalg.eigvals(a)).max())


def spectral_radius(vm: float) -> float:
    """
    Spectral radius of the generator, cached on a 0.01 mV lattice.

    Args:
        vm: Membrane potential, mV.

    Returns:
        float: max |lambda| over the eigenvalues of A(vm), 1/ms.
    """
    return _spectral_radius_at(int(round(vm / STABILITY_BUCKET_MV)))


def fe_stable(vm: float, dt: float) -> bool:
    """
    Whether a forward Euler step of the Markov chain is inside its stability
    region at vm.

    The generator has real non-positive eigenvalues, so |1 + dt lambda| <= 1
    for all of them exactly when dt * rho(A) <= 2. Past that bound the fastest
    mode flips sign every step and grows.

    Args:
        vm: Membrane potential, mV.
        dt: Time step, ms.

    Returns:
        bool: True if the step does not amplify any mode.
    """
    return dt * spectral_radius(vm) <= FE_STABILITY_BOUND
