"""
Helpers for state occupancy vectors.
"""

# imports
from typing import Sequence

# packages
import numpy

# project
from inamc_app.exceptions import InputError
from inamc_app.model.constants import N_STATES, RAW_INITIAL_OCCUPANCY

# round-off allowance outside [0, 1]
OCCUPANCY_SLACK = 1e-9


def initial_occupancy(normalize: bool = True) -> numpy.ndarray:
    """
    Get the resting-state occupancy vector.

    Args:
        normalize: Rescale so the components sum to 1 to machine precision.

    Returns:
        numpy.ndarray: Occupancies in canonical order.
    """
    u = numpy.array(RAW_INITIAL_OCCUPANCY, dtype=numpy.float64)
    if normalize:
        u = u / u.sum()
    return u


def conservation_error(u: numpy.ndarray) -> float:
    """
    Deviation of the occupancies from the conservation law, sum(u) - 1.

    Args:
        u: Occupancy vector.

    Returns:
        float: The signed deviation.
    """
    return float(numpy.sum(u)) - 1.0


def validate_occupancy(
    values: Sequence[float], slack: float = OCCUPANCY_SLACK
) -> numpy.ndarray:
    """
    Convert to an occupancy vector and check its shape and bounds.

    Args:
        values: Nine occupancies.
        slack: Allowed excursion beyond [0, 1].

    Returns:
        numpy.ndarray: The occupancy vector.

    Raises:
        InputError: Wrong length, non-finite entries or out-of-bounds components.
    """
    u = numpy.asarray(values, dtype=numpy.float64)
    if u.shape != (N_STATES,):
        raise InputError(f"Occupancy vector must have shape ({N_STATES},), got {u.shape}")
    if not numpy.all(numpy.isfinite(u)):
        raise InputError("Occupancy vector has non-finite entries")
    if numpy.any(u < -slack) or numpy.any(u > 1.0 + slack):
        raise InputError(f"Occupancy components outside [0, 1]: {u}")
    return u
