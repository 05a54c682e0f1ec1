"""
Deviation of one trace from a reference trace.
"""

# future
from __future__ import annotations

# imports
from dataclasses import dataclass
from typing import Optional

# packages
import numpy
import pandas

# project
from inamc_app.exceptions import InputError, TraceFormatError
from inamc_app.logger import create_logger

# create logger
LOGGER = create_logger(__name__)


@dataclass
class ComparisonReport:
    """
    Per-column deviations of a test trace from a reference.

    Attributes:
        deviations: Indexed by column name with max_abs and rms columns.
        t_start: Start of the compared window, ms.
        t_end: End of the compared window, ms.
        samples: Number of compared test samples.
    """

    deviations: pandas.DataFrame
    t_start: float
    t_end: float
    samples: int

    def max_abs(self, column: str) -> float:
        return float(self.deviations.loc[column, "max_abs"])

    def rms(self, column: str) -> float:
        return float(self.deviations.loc[column, "rms"])


def nearest_indices(reference_t: numpy.ndarray, t: numpy.ndarray) -> numpy.ndarray:
    """
    Index of the nearest reference time for every time in t.

    Args:
        reference_t: Increasing reference times.
        t: Query times.

    Returns:
        numpy.ndarray: Indices into reference_t; ties go to the earlier sample.
    """
    right = numpy.clip(numpy.searchsorted(reference_t, t), 1, len(reference_t) - 1)
    left = right - 1
    take_right = numpy.abs(reference_t[right] - t) < numpy.abs(t - reference_t[left])
    return numpy.where(take_right, right, left)


def compare_traces(
    reference: pandas.DataFrame,
    test: pandas.DataFrame,
    t_start: Optional[float] = None,
    t_end: Optional[float] = None,
) -> ComparisonReport:
    """
    Compare two traces column by column after nearest-time alignment.

    Every test sample inside the common time range is paired with the
    reference sample nearest in time. NaN pairs are skipped.

    Args:
        reference: Reference trace frame.
        test: Test trace frame with the same columns.
        t_start: Optional start of the window, ms.
        t_end: Optional end of the window, ms.

    Returns:
        ComparisonReport: Max and rms absolute deviation per column.

    Raises:
        TraceFormatError: The headers differ.
        InputError: The traces share no time range or the window is empty.
    """
    if list(reference.columns) != list(test.columns):
        raise TraceFormatError(
            f"Trace headers differ: {list(reference.columns)} vs {list(test.columns)}"
        )
    if "t_ms" not in reference.columns:
        raise TraceFormatError("Traces lack a t_ms column")
    if reference.empty or test.empty:
        raise InputError("Cannot compare empty traces")

    reference = reference.sort_values("t_ms", kind="stable")
    test = test.sort_values("t_ms", kind="stable")
    reference_t = reference["t_ms"].to_numpy(dtype=numpy.float64)
    test_t = test["t_ms"].to_numpy(dtype=numpy.float64)

    lower = max(reference_t[0], test_t[0])
    upper = min(reference_t[-1], test_t[-1])
    if t_start is not None:
        lower = max(lower, t_start)
    if t_end is not None:
        upper = min(upper, t_end)
    if lower > upper:
        raise InputError(
            f"Traces do not overlap in time: [{reference_t[0]}, {reference_t[-1]}] "
            f"vs [{test_t[0]}, {test_t[-1]}]"
        )

    mask = (test_t >= lower) & (test_t <= upper)
    if not mask.any():
        raise InputError(f"No test samples in [{lower}, {upper}] ms")

    if len(reference_t) == 1:
        paired = numpy.zeros(int(mask.sum()), dtype=int)
    else:
        paired = nearest_indices(reference_t, test_t[mask])

    rows = {}
    for name in reference.columns:
        if name == "t_ms":
            continue
        diff = test[name].to_numpy(dtype=numpy.float64)[mask] - reference[
            name
        ].to_numpy(dtype=numpy.float64)[paired]
        if numpy.isnan(diff).all():
            rows[name] = (float("nan"), float("nan"))
            continue
        rows[name] = (
            float(numpy.nanmax(numpy.abs(diff))),
            float(numpy.sqrt(numpy.nanmean(numpy.square(diff)))),
        )
    deviations = pandas.DataFrame.from_dict(rows, orient="index", columns=["max_abs", "rms"])
    deviations.index.name = "column"

    LOGGER.info("Compared %d samples over [%g, %g] ms", int(mask.sum()), lower, upper)
    return ComparisonReport(
        deviations=deviations, t_start=float(lower), t_end=float(upper), samples=int(mask.sum())
    )
