"""
CLI task to report the deviation of a trace from a reference trace.
"""

# imports
import argparse
from pathlib import Path

# project
from inamc_app.analysis.compare import compare_traces
from inamc_app.cli.common import EXIT_OK, ensure_writable
from inamc_app.config import AppConfig
from inamc_app.io.traces import read_trace, write_csv
from inamc_app.logger import create_logger

# get logger
LOGGER = create_logger(__name__)


def add_parser(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    """
    Register the compare subcommand.

    Args:
        subparsers: Subparser collection of the main parser.

    Returns:
        argparse.ArgumentParser: The subcommand parser.
    """
    parser = subparsers.add_parser("compare", help="Compare a trace with a reference.")
    parser.add_argument("--ref", type=str, required=True, help="Reference trace CSV")
    parser.add_argument("--test", type=str, required=True, help="Test trace CSV")
    parser.add_argument("--t-start", type=float, help="Window start in ms")
    parser.add_argument("--t-end", type=float, help="Window end in ms")
    parser.add_argument("--out", type=str, help="Deviation report CSV path")
    parser.set_defaults(handler=run)
    return parser


def run(args: argparse.Namespace, app_config: AppConfig) -> int:
    """
    Compare the traces and print the deviations.

    Args:
        args: Parsed command line arguments.
        app_config: App configuration.

    Returns:
        int: Exit code.
    """
    reference = read_trace(args.ref)
    test = read_trace(args.test)
    report = compare_traces(reference, test, t_start=args.t_start, t_end=args.t_end)

    if args.out:
        write_csv(report.deviations.reset_index(), ensure_writable(Path(args.out)))
    print(
        f"window=[{report.t_start:g}, {report.t_end:g}] ms samples={report.samples}"
    )
    print(report.deviations.to_string(float_format=lambda value: f"{value:.6e}"))
    return EXIT_OK
