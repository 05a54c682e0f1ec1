"""
Assembly of the full and split generator matrices of the INa Markov chain.

Matrices act on column vectors of occupancies in the canonical state order
(O, P, Q, R, S, T, U, V, W); entry [i, j] is the rate from state j into
state i, and every column sums to zero.
"""

# future
from __future__ import annotations

# imports
from dataclasses import dataclass
from typing import Tuple

# packages
import numpy

# project
from inamc_app.model.constants import (
    N_STATES,
    RATE_NAMES,
    SPLIT_EDGES,
    STATE_INDEX,
)
from inamc_app.model.rates import RateSet, eval_rates

# finite difference step for voltage derivatives, mV
DERIVATIVE_STEP = 1e-3


def _edge_indices(
    edges: Tuple[Tuple[str, str, str], ...],
) -> Tuple[numpy.ndarray, numpy.ndarray, numpy.ndarray]:
    """
    Convert edge triples into (target row, source column, rate index) arrays.

    Args:
        edges: Directed edges (source, target, rate name).

    Returns:
        Tuple of integer arrays: rows, columns, rate indices.
    """
    rows = numpy.array([STATE_INDEX[target] for _, target, _ in edges], dtype=numpy.intp)
    cols = numpy.array([STATE_INDEX[source] for source, _, _ in edges], dtype=numpy.intp)
    rate_index = numpy.array(
        [RATE_NAMES.index(name) for _, _, name in edges], dtype=numpy.intp
    )
    return rows, cols, rate_index


# precomputed scatter indices for the three parts
_PART_INDICES = tuple(_edge_indices(edges) for edges in SPLIT_EDGES)
_DIAGONAL = numpy.arange(N_STATES)


@dataclass(frozen=True)
class SplitGenerators:
    """
    Full generator and its fast-high / fast-low / slow decomposition, 1/ms.

    Attributes:
        A: Full generator, equal to A0 + A1 + A2 entrywise.
        A0: Rates fast at high potentials.
        A1: Rates fast at low potentials.
        A2: Uniformly slow rates.
    """

    A: numpy.ndarray
    A0: numpy.ndarray
    A1: numpy.ndarray
    A2: numpy.ndarray

    @property
    def parts(self) -> Tuple[numpy.ndarray, numpy.ndarray, numpy.ndarray]:
        return self.A0, self.A1, self.A2


def _assemble_part(rates: numpy.ndarray, part: int) -> numpy.ndarray:
    """
    Assemble one split part from a packed rate vector.

    The diagonal is the negated sum of the off-diagonal column entries.

    Args:
        rates: Packed rates in RateSet field order.
        part: Part number 0, 1 or 2.

    Returns:
        numpy.ndarray: 9x9 generator part.
    """
    rows, cols, rate_index = _PART_INDICES[part]
    matrix = numpy.zeros((N_STATES, N_STATES), dtype=numpy.float64)
    matrix[rows, cols] = rates[rate_index]
    matrix[_DIAGONAL, _DIAGONAL] = -matrix.sum(axis=0)
    return matrix


def assemble_split(r: RateSet) -> SplitGenerators:
    """
    Assemble the generator together with its three-way split.

    Args:
        r: Transition rates at one voltage.

    Returns:
        SplitGenerators: A, A0, A1, A2 with A = A0 + A1 + A2 exactly.
    """
    rates = r.to_array()
    a0, a1, a2 = (_assemble_part(rates, part) for part in range(3))
    full = a0 + a1 + a2
    for matrix in (a0, a1, a2, full):
        matrix.setflags(write=False)
    return SplitGenerators(A=full, A0=a0, A1=a1, A2=a2)


def assemble_full(r: RateSet) -> numpy.ndarray:
    """
    Assemble the full 9x9 generator of the master equation du/dt = A u.

    Args:
        r: Transition rates at one voltage.

    Returns:
        numpy.ndarray: Generator with zero column sums.
    """
    rates = r.to_array()
    return _assemble_part(rates, 0) + _assemble_part(rates, 1) + _assemble_part(rates, 2)


def generators_at(vm: float) -> SplitGenerators:
    """
    Convenience wrapper: evaluate rates at vm and assemble the split generators.

    Args:
        vm: Membrane potential, mV.

    Returns:
        SplitGenerators: Generators at vm.
    """
    return assemble_split(eval_rates(vm))


def generator_derivative(vm: float, h: float = DERIVATIVE_STEP) -> SplitGenerators:
    """
    Central finite-difference derivative of the generators with respect to Vm.

    Args:
        vm: Membrane potential, mV.
        h: Difference step, mV.

    Returns:
        SplitGenerators: dA/dV and dA_m/dV, in 1/(ms mV).
    """
    upper = generators_at(vm + h)
    lower = generators_at(vm - h)
    scale = 1.0 / (2.0 * h)
    return SplitGenerators(
        A=(upper.A - lower.A) * scale,
        A0=(upper.A0 - lower.A0) * scale,
        A1=(upper.A1 - lower.A1) * scale,
        A2=(upper.A2 - lower.A2) * scale,
    )
