"""
A priori local truncation error coefficients of the FE, MRL and HOS schemes.

Each coefficient multiplies dt^2 in the one-step error estimate, in 1/ms^2.
Matrix norms are spectral by default; Frobenius norms bound them from above
and are available for comparison.
"""

# future
from __future__ import annotations

# imports
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional

# packages
import numpy
import pandas

# project
from inamc_app.exceptions import InputError, TraceFormatError
from inamc_app.logger import create_logger
from inamc_app.model.generators import (
    SplitGenerators,
    generator_derivative,
    generators_at,
)
from inamc_app.tables.grid import VoltageGrid

# create logger
LOGGER = create_logger(__name__)

# ratios only over samples whose denominator exceeds this, 1/ms^2
RATIO_FLOOR = 1e-6

# matrix norms accepted by the norm arguments
SPECTRAL = "spectral"
FROBENIUS = "frobenius"
DEFAULT_NORM = SPECTRAL

# output columns
ERROR_COLUMNS = ("t_ms", "Vm", "dVdt", "errFE", "errMRL", "errHOS", "errOS")


@dataclass(frozen=True)
class ErrorCoefficients:
    """Local error coefficients at one (Vm, dVm/dt), 1/ms^2."""

    err_fe: float
    err_mrl: float
    err_hos: float
    err_os: float


def frobenius(m: numpy.ndarray) -> float:
    """
    Frobenius norm sqrt(sum m_ij^2).

    Args:
        m: Matrix.

    Returns:
        float: The norm.
    """
    return float(numpy.sqrt(numpy.sum(numpy.square(m))))


def matrix_norm(m: numpy.ndarray, kind: str = DEFAULT_NORM) -> float:
    """
    Spectral (largest singular value) or Frobenius norm of a matrix.

    Args:
        m: Matrix.
        kind: "spectral" or "frobenius".

    Returns:
        float: The norm.

    Raises:
        InputError: Unknown norm.
    """
    if kind == SPECTRAL:
        return float(numpy.linalg.norm(m, 2))
    if kind == FROBENIUS:
        return frobenius(m)
    raise InputError(f"Unknown matrix norm {kind!r}; choose {SPECTRAL} or {FROBENIUS}")


def commutator(x: numpy.ndarray, y: numpy.ndarray) -> numpy.ndarray:
    return x @ y - y @ x


def splitting_error(split: SplitGenerators, norm: str = DEFAULT_NORM) -> float:
    """
    Splitting error coefficient 1/2 ||[A1, A0] + [A2, A0] + [A2, A1]||.

    Args:
        split: Split generators.
        norm: Matrix norm.

    Returns:
        float: The coefficient.
    """
    a0, a1, a2 = split.parts
    return 0.5 * matrix_norm(
        commutator(a1, a0) + commutator(a2, a0) + commutator(a2, a1), norm
    )


def _without_slow(split: SplitGenerators) -> SplitGenerators:
    zero = numpy.zeros_like(split.A2)
    return SplitGenerators(A=split.A0 + split.A1, A0=split.A0, A1=split.A1, A2=zero)


def error_coeffs(
    vm: float, dvm_dt: float, zero_slow: bool = False, norm: str = DEFAULT_NORM
) -> ErrorCoefficients:
    """
    Local error coefficients of the three schemes.

    errFE  = 1/2 (||A||^2 + ||A'|| |V'|)
    errMRL = 1/2 ||A'|| |V'|
    errOS  = 1/2 ||[A1, A0] + [A2, A0] + [A2, A1]||
    errHOS = 1/2 |V'| (||A0'|| + ||A1'|| + ||A2'||) + 1/2 ||A2||^2 + errOS

    The V'-terms vanish exactly at V' = 0, where MRL is exact.

    Args:
        vm: Membrane potential, mV.
        dvm_dt: Rate of change of the membrane potential, mV/ms.
        zero_slow: Replace A2 and its derivative by zero.
        norm: Matrix norm, "spectral" or "frobenius".

    Returns:
        ErrorCoefficients: The coefficients.
    """
    split = generators_at(vm)
    derivative = generator_derivative(vm)
    if zero_slow:
        split = _without_slow(split)
        derivative = _without_slow(derivative)

    speed = abs(dvm_dt)
    err_os = splitting_error(split, norm)
    slow_drift = 0.5 * matrix_norm(split.A2, norm) ** 2
    if speed == 0.0:
        err_mrl = 0.0
        err_hos = slow_drift + err_os
    else:
        err_mrl = 0.5 * matrix_norm(derivative.A, norm) * speed
        err_hos = (
            0.5 * speed * sum(matrix_norm(part, norm) for part in derivative.parts)
            + slow_drift
            + err_os
        )
    return ErrorCoefficients(
        err_fe=0.5 * matrix_norm(split.A, norm) ** 2 + err_mrl,
        err_mrl=err_mrl,
        err_hos=err_hos,
        err_os=err_os,
    )


def membrane_speed(
    t: numpy.ndarray, vm: numpy.ndarray, jump_times: Iterable[float] = ()
) -> numpy.ndarray:
    """
    dVm/dt of a sampled trace by central differences.

    Interior samples use (V[k+1] - V[k-1]) / (t[k+1] - t[k-1]) and the two
    end samples one-sided differences, so a constant stretch of the trace
    has exactly zero speed. Instantaneous jumps (stimuli) are excluded: the
    samples on either side of a jump use one-sided differences pointing away
    from it.

    Args:
        t: Sample times, ms, increasing.
        vm: Membrane potentials, mV.
        jump_times: Times of instantaneous potential jumps, ms.

    Returns:
        numpy.ndarray: dVm/dt per sample, mV/ms.
    """
    t = numpy.asarray(t, dtype=numpy.float64)
    vm = numpy.asarray(vm, dtype=numpy.float64)
    if len(t) < 2:
        return numpy.zeros_like(vm)
    speed = numpy.empty_like(vm)
    speed[1:-1] = (vm[2:] - vm[:-2]) / (t[2:] - t[:-2])
    speed[0] = (vm[1] - vm[0]) / (t[1] - t[0])
    speed[-1] = (vm[-1] - vm[-2]) / (t[-1] - t[-2])
    last = len(t) - 1
    for jump in jump_times:
        k = int(numpy.searchsorted(t, jump - 1e-9))
        if k <= 0 or k > last:
            continue
        # sample before the jump looks backward, sample after looks forward
        before = k - 1
        speed[before] = (
            (vm[before] - vm[before - 1]) / (t[before] - t[before - 1]) if before > 0 else 0.0
        )
        speed[k] = (vm[k + 1] - vm[k]) / (t[k + 1] - t[k]) if k < last else 0.0
    return speed


@dataclass
class ErrorReport:
    """
    Error coefficients along a trace.

    Attributes:
        frame: One row per sample, columns ERROR_COLUMNS.
        maxima: Largest value of each coefficient column.
        argmax_t: Time of each maximum, ms.
        min_fe_over_mrl: Smallest errFE / errMRL where errMRL > RATIO_FLOOR.
        min_fe_over_hos: Smallest errFE / errHOS where errHOS > RATIO_FLOOR.
    """

    frame: pandas.DataFrame
    maxima: Dict[str, float] = field(default_factory=dict)
    argmax_t: Dict[str, float] = field(default_factory=dict)
    min_fe_over_mrl: float = float("nan")
    min_fe_over_hos: float = float("nan")


def _min_ratio(numerator: pandas.Series, denominator: pandas.Series) -> float:
    mask = denominator > RATIO_FLOOR
    if not mask.any():
        return float("nan")
    return float((numerator[mask] / denominator[mask]).min())


def error_trace(
    trace_frame: pandas.DataFrame,
    jump_times: Optional[Iterable[float]] = None,
    norm: str = DEFAULT_NORM,
) -> ErrorReport:
    """
    Evaluate the error coefficients at every sample of a trace.

    Args:
        trace_frame: Trace with at least the t_ms and Vm_mV columns.
        jump_times: Stimulus times to exclude from differencing, ms.
        norm: Matrix norm, "spectral" or "frobenius".

    Returns:
        ErrorReport: Per-sample coefficients with maxima and ratio minima.

    Raises:
        TraceFormatError: Required columns are missing.
    """
    missing = {"t_ms", "Vm_mV"} - set(trace_frame.columns)
    if missing:
        raise TraceFormatError(f"Trace lacks columns: {sorted(missing)}")

    t = trace_frame["t_ms"].to_numpy(dtype=numpy.float64)
    vm = trace_frame["Vm_mV"].to_numpy(dtype=numpy.float64)
    speed = membrane_speed(t, vm, jump_times or ())

    rows = []
    for t_k, vm_k, speed_k in zip(t.tolist(), vm.tolist(), speed.tolist()):
        coeffs = error_coeffs(vm_k, speed_k, norm=norm)
        rows.append(
            (t_k, vm_k, speed_k, coeffs.err_fe, coeffs.err_mrl, coeffs.err_hos, coeffs.err_os)
        )
    frame = pandas.DataFrame.from_records(rows, columns=list(ERROR_COLUMNS))

    report = ErrorReport(frame=frame)
    if frame.empty:
        return report
    for name in ERROR_COLUMNS[3:]:
        k = int(frame[name].to_numpy().argmax())
        report.maxima[name] = float(frame[name].iloc[k])
        report.argmax_t[name] = float(frame["t_ms"].iloc[k])
    report.min_fe_over_mrl = _min_ratio(frame["errFE"], frame["errMRL"])
    report.min_fe_over_hos = _min_ratio(frame["errFE"], frame["errHOS"])
    LOGGER.info(
        "Error maxima FE=%.4g MRL=%.4g HOS=%.4g OS=%.4g",
        report.maxima["errFE"],
        report.maxima["errMRL"],
        report.maxima["errHOS"],
        report.maxima["errOS"],
    )
    return report


def norm_profile(grid: VoltageGrid, norm: str = DEFAULT_NORM) -> pandas.DataFrame:
    """
    Norms of the generators, their voltage derivatives and the splitting error
    as functions of Vm.

    Args:
        grid: Voltage grid.
        norm: Matrix norm, "spectral" or "frobenius".

    Returns:
        pandas.DataFrame: Columns Vm, normA, normA0, normA1, normA2, normdA,
            normdA0, normdA1, normdA2, errOS.
    """
    rows = []
    for vm in grid.voltages.tolist():
        split = generators_at(vm)
        derivative = generator_derivative(vm)
        rows.append(
            (
                vm,
                matrix_norm(split.A, norm),
                *(matrix_norm(part, norm) for part in split.parts),
                matrix_norm(derivative.A, norm),
                *(matrix_norm(part, norm) for part in derivative.parts),
                splitting_error(split, norm),
            )
        )
    return pandas.DataFrame.from_records(
        rows,
        columns=[
            "Vm",
            "normA",
            "normA0",
            "normA1",
            "normA2",
            "normdA",
            "normdA0",
            "normdA1",
            "normdA2",
            "errOS",
        ],
    )
