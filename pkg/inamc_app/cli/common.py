"""
Shared helpers of the CLI tasks: exit codes, unit conversion and method tokens.
"""

# future
from __future__ import annotations

# imports
import argparse
import os
from pathlib import Path
from typing import List, Optional

# project
from inamc_app.config import AppConfig
from inamc_app.exceptions import (
    DegenerateRatesError,
    ImagResidueExceededError,
    InputError,
    InstabilityDetectedError,
    NearDefectiveError,
    NonConvergenceError,
    TableFormatError,
    TabulationError,
    TraceFormatError,
)
from inamc_app.solvers.types import HosTableMode, Method, MethodConfig
from inamc_app.tables.eigen_table import EigenTable, load_table

# exit codes
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INSTABILITY = 4
EXIT_NUMERICAL = 5

# microseconds per millisecond
US_PER_MS = 1000.0

# method tokens accepted by --methods
METHOD_TOKENS = {
    "fe": (Method.FE, False, HosTableMode.COEFFICIENTS),
    "fe-tab": (Method.FE, True, HosTableMode.COEFFICIENTS),
    "mrl": (Method.MRL, True, HosTableMode.COEFFICIENTS),
    "hos": (Method.HOS, False, HosTableMode.COEFFICIENTS),
    "hos-tab": (Method.HOS, True, HosTableMode.COEFFICIENTS),
    "hos-tab-rates": (Method.HOS, True, HosTableMode.RATES),
}


def exit_code_for(error: BaseException) -> Optional[int]:
    """
    Map an exception to its CLI exit code.

    Args:
        error: The exception.

    Returns:
        Optional[int]: The exit code, or None for unexpected errors.
    """
    if isinstance(error, InstabilityDetectedError):
        return EXIT_INSTABILITY
    if isinstance(error, (TableFormatError, TraceFormatError, OSError)):
        return EXIT_IO
    if isinstance(
        error,
        (
            NonConvergenceError,
            NearDefectiveError,
            ImagResidueExceededError,
            DegenerateRatesError,
            TabulationError,
        ),
    ):
        return EXIT_NUMERICAL
    if isinstance(error, InputError):
        return EXIT_USAGE
    return None


def us_to_ms(value_us: float) -> float:
    return value_us / US_PER_MS


def parse_float_list(text: str) -> List[float]:
    """
    Parse a comma-separated list of numbers.

    Args:
        text: Text such as "10,40,100".

    Returns:
        List[float]: The numbers.

    Raises:
        InputError: The list is empty or holds a non-number.
    """
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise InputError("Empty number list")
    try:
        return [float(item) for item in items]
    except ValueError as e:
        raise InputError(f"Invalid number list {text!r}") from e


def parse_method_tokens(text: str, dt: float) -> List[MethodConfig]:
    """
    Parse a comma-separated list of method tokens into configurations.

    Args:
        text: Tokens such as "fe,fe-tab,mrl,hos,hos-tab".
        dt: Time step, ms.

    Returns:
        List[MethodConfig]: One configuration per token.

    Raises:
        InputError: Unknown token or empty list.
    """
    tokens = [token.strip().lower() for token in text.split(",") if token.strip()]
    if not tokens:
        raise InputError("Empty method list")
    configs = []
    for token in tokens:
        if token not in METHOD_TOKENS:
            raise InputError(
                f"Unknown method {token!r}; choose from {', '.join(METHOD_TOKENS)}"
            )
        method, tabulated, mode = METHOD_TOKENS[token]
        configs.append(
            MethodConfig(method=method, dt=dt, tabulated=tabulated, hos_table_mode=mode)
        )
    return configs


def ensure_writable(path: Path) -> Path:
    """
    Check that a file can be created at path.

    Args:
        path: Output file path.

    Returns:
        Path: The path.

    Raises:
        FileNotFoundError: The parent directory does not exist.
        PermissionError: The parent directory is not writable.
    """
    path = Path(path)
    parent = path.parent
    if not parent.is_dir():
        raise FileNotFoundError(f"Output directory does not exist: {parent}")
    if not os.access(parent, os.W_OK):
        raise PermissionError(f"Output directory is not writable: {parent}")
    return path


def load_eigen_table(
    args: argparse.Namespace, app_config: AppConfig, needed: bool
) -> Optional[EigenTable]:
    """
    Load the eigen table named by --table, or the configured one, when needed.

    Args:
        args: Parsed arguments with a ``table`` attribute.
        app_config: App configuration.
        needed: Whether any requested method uses the table.

    Returns:
        Optional[EigenTable]: The table, or None if not needed.
    """
    if not needed:
        return None
    path = Path(args.table) if args.table else app_config.resolved_table_path()
    return load_table(path)
