"""
CLI task to simulate the paced cell with one Markov chain method and write the
trace.
"""

# imports
import argparse
from pathlib import Path

# project
from inamc_app.cell.simulate import CellParameters, Protocol, simulate
from inamc_app.cell.trace import Trace
from inamc_app.cli.common import (
    EXIT_INSTABILITY,
    EXIT_OK,
    ensure_writable,
    load_eigen_table,
    us_to_ms,
)
from inamc_app.config import AppConfig
from inamc_app.exceptions import InstabilityDetectedError
from inamc_app.io.traces import write_trace
from inamc_app.logger import create_logger
from inamc_app.solvers.types import HosTableMode, Method, MethodConfig

# get logger
LOGGER = create_logger(__name__)


def add_parser(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    """
    Register the simulate subcommand.

    Args:
        subparsers: Subparser collection of the main parser.

    Returns:
        argparse.ArgumentParser: The subcommand parser.
    """
    parser = subparsers.add_parser("simulate", help="Run a pacing protocol.")
    parser.add_argument(
        "--method", type=str, choices=[m.value for m in Method], default="fe"
    )
    parser.add_argument("--dt", type=float, default=10.0, help="Time step in microseconds")
    parser.add_argument(
        "--tab", action="store_true", help="Use voltage tables for FE and HOS"
    )
    parser.add_argument(
        "--hos-table-mode",
        type=str,
        choices=[m.value for m in HosTableMode],
        default=HosTableMode.COEFFICIENTS.value,
    )
    parser.add_argument("--pulses", type=int, default=1, help="Number of stimuli")
    parser.add_argument("--cl", type=float, default=1000.0, help="Cycle length in ms")
    parser.add_argument("--duration", type=float, help="Run length in ms")
    parser.add_argument("--table", type=str, help="Eigen table path for MRL")
    parser.add_argument("--out", type=str, help="Trace CSV path")
    parser.add_argument("--stride", type=int, help="Record every n-th step")
    parser.add_argument("--gna", type=float, help="Override the sodium conductance")
    parser.set_defaults(handler=run)
    return parser


def summary_line(trace: Trace) -> str:
    """
    One-line run summary.

    Args:
        trace: A complete or partial trace.

    Returns:
        str: The summary.
    """
    status = "stable" if trace.stable else f"{trace.failure_kind} at t={trace.failed_at:g} ms"
    return (
        f"{trace.label} dt={trace.dt * 1000.0:g}us status={status} "
        f"max_cons_err={trace.max_conservation_error:.3e} "
        f"ina_seconds={trace.ina_seconds:.3f} total_seconds={trace.total_seconds:.3f}"
    )


def run(args: argparse.Namespace, app_config: AppConfig) -> int:
    """
    Simulate and write the trace.

    Args:
        args: Parsed command line arguments.
        app_config: App configuration.

    Returns:
        int: Exit code; EXIT_INSTABILITY when the run was cut short.
    """
    config = MethodConfig(
        method=args.method,
        dt=us_to_ms(args.dt),
        tabulated=args.tab,
        hos_table_mode=args.hos_table_mode,
    )
    protocol = Protocol(
        pulses=args.pulses,
        cycle_length=args.cl,
        record_stride=args.stride or app_config.record_stride,
        duration=args.duration,
    )
    overrides = {} if args.gna is None else {"gna": args.gna}
    params = CellParameters.from_config(app_config, **overrides)
    out = ensure_writable(Path(args.out)) if args.out else None
    eigen_table = load_eigen_table(args, app_config, config.method is Method.MRL)

    exit_code = EXIT_OK
    try:
        trace = simulate(
            protocol, config, params=params, eigen_table=eigen_table, app_config=app_config
        )
    except InstabilityDetectedError as e:
        trace = e.trace
        exit_code = EXIT_INSTABILITY
        if trace is None:
            raise

    if out is not None:
        write_trace(trace, out)
    line = summary_line(trace)
    LOGGER.info(line)
    print(line)
    return exit_code
