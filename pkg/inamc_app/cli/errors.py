"""
CLI task to evaluate the local error coefficients along a trace.
"""

# imports
import argparse
import math
from pathlib import Path

# project
from inamc_app.analysis.errors import error_trace
from inamc_app.cli.common import EXIT_OK, ensure_writable
from inamc_app.config import ERROR_NORMS, AppConfig
from inamc_app.io.traces import read_trace, write_csv
from inamc_app.logger import create_logger

# get logger
LOGGER = create_logger(__name__)


def add_parser(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    """
    Register the errors subcommand.

    Args:
        subparsers: Subparser collection of the main parser.

    Returns:
        argparse.ArgumentParser: The subcommand parser.
    """
    parser = subparsers.add_parser("errors", help="Error coefficients along a trace.")
    parser.add_argument("--trace", type=str, required=True, help="Trace CSV")
    parser.add_argument("--out", type=str, help="Coefficient CSV path")
    parser.add_argument(
        "--cl", type=float, default=1000.0, help="Cycle length of the stimuli in ms"
    )
    parser.add_argument(
        "--pulses", type=int, help="Number of stimuli (default: one per cycle in the trace)"
    )
    parser.add_argument(
        "--norm",
        choices=ERROR_NORMS,
        help="Matrix norm (default: error_norm from the configuration)",
    )
    parser.set_defaults(handler=run)
    return parser


def run(args: argparse.Namespace, app_config: AppConfig) -> int:
    """
    Evaluate, write and summarize the coefficients.

    Args:
        args: Parsed command line arguments.
        app_config: App configuration.

    Returns:
        int: Exit code.
    """
    frame = read_trace(args.trace)
    out = ensure_writable(Path(args.out)) if args.out else None

    t_end = float(frame["t_ms"].max()) if len(frame) else 0.0
    pulses = args.pulses
    if pulses is None:
        pulses = int(math.floor(max(t_end - app_config.stim_time, 0.0) / args.cl)) + 1
    jump_times = [k * args.cl + app_config.stim_time for k in range(pulses)]

    norm = args.norm or app_config.error_norm
    report = error_trace(frame, jump_times=jump_times, norm=norm)
    if out is not None:
        write_csv(report.frame, out)

    for name, value in report.maxima.items():
        print(f"max {name}={value:.6g} at t={report.argmax_t[name]:g} ms")
    print(f"norm={norm}")
    print(f"min errFE/errMRL={report.min_fe_over_mrl:.6g}")
    print(f"min errFE/errHOS={report.min_fe_over_hos:.6g}")
    return EXIT_OK
