"""
Trace and report CSV files.

Floats are written with 17 significant digits and parsed with round-trip
precision, so a written trace reads back bit-identical.
"""

# future
from __future__ import annotations

# imports
import os
import tempfile
from pathlib import Path
from typing import Sequence, Union

# packages
import pandas

# project
from inamc_app.cell.trace import TRACE_COLUMNS, Trace
from inamc_app.exceptions import TraceFormatError
from inamc_app.logger import create_logger

# create logger
LOGGER = create_logger(__name__)

FLOAT_FORMAT = "%.17g"


def write_csv(frame: pandas.DataFrame, path: Union[str, Path]) -> Path:
    """
    Write a frame as UTF-8 CSV with full float precision.

    The file is written next to its destination and renamed into place.

    Args:
        frame: Frame to write.
        path: Destination path.

    Returns:
        Path: The written path.
    """
    path = Path(path)
    handle, temp_name = tempfile.mkstemp(
        dir=path.parent, prefix=f".{path.name}.", suffix=".tmp"
    )
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="") as output_file:
            frame.to_csv(output_file, index=False, float_format=FLOAT_FORMAT)
        os.replace(temp_name, path)
    except Exception:
        Path(temp_name).unlink(missing_ok=True)
        raise
    LOGGER.info("Wrote %d rows to %s", len(frame), path)
    return path


def write_trace(trace: Union[Trace, pandas.DataFrame], path: Union[str, Path]) -> Path:
    """
    Write a trace CSV.

    Args:
        trace: Trace or trace frame.
        path: Destination path.

    Returns:
        Path: The written path.
    """
    frame = trace.frame if isinstance(trace, Trace) else trace
    validate_columns(frame, TRACE_COLUMNS)
    return write_csv(frame, path)


def validate_columns(frame: pandas.DataFrame, expected: Sequence[str]) -> None:
    """
    Check that a frame has exactly the expected columns, in order.

    Args:
        frame: Frame to check.
        expected: Expected column names.

    Raises:
        TraceFormatError: The columns differ.
    """
    if list(frame.columns) != list(expected):
        raise TraceFormatError(
            f"Unexpected columns {list(frame.columns)}; expected {list(expected)}"
        )


def read_csv(path: Union[str, Path]) -> pandas.DataFrame:
    """
    Read a CSV written by write_csv.

    Args:
        path: Source path.

    Returns:
        pandas.DataFrame: The frame.

    Raises:
        FileNotFoundError: The file does not exist.
        TraceFormatError: The file is not parseable CSV.
    """
    try:
        return pandas.read_csv(path, float_precision="round_trip", encoding="utf-8")
    except (pandas.errors.ParserError, pandas.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise TraceFormatError(f"Cannot parse {path}: {e}") from e


def read_trace(path: Union[str, Path]) -> pandas.DataFrame:
    """
    Read and validate a trace CSV.

    Args:
        path: Source path.

    Returns:
        pandas.DataFrame: Trace frame with TRACE_COLUMNS.

    Raises:
        FileNotFoundError: The file does not exist.
        TraceFormatError: The header or values are malformed.
    """
    frame = read_csv(path)
    validate_columns(frame, TRACE_COLUMNS)
    non_numeric = [
        name for name in frame.columns if not pandas.api.types.is_numeric_dtype(frame[name])
    ]
    if non_numeric:
        raise TraceFormatError(f"Non-numeric trace columns in {path}: {non_numeric}")
    return frame
