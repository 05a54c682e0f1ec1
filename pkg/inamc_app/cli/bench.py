"""
CLI task to time the Markov chain methods over a pacing protocol.
"""

# imports
import argparse
from pathlib import Path

# project
from inamc_app.analysis.bench import results_frame, run_benchmark
from inamc_app.cli.common import (
    EXIT_OK,
    ensure_writable,
    load_eigen_table,
    parse_float_list,
    parse_method_tokens,
    us_to_ms,
)
from inamc_app.config import AppConfig
from inamc_app.io.traces import write_csv
from inamc_app.logger import create_logger
from inamc_app.solvers.types import Method

# get logger
LOGGER = create_logger(__name__)


def add_parser(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    """
    Register the bench subcommand.

    Args:
        subparsers: Subparser collection of the main parser.

    Returns:
        argparse.ArgumentParser: The subcommand parser.
    """
    parser = subparsers.add_parser("bench", help="Median wall times per method and dt.")
    parser.add_argument(
        "--methods",
        type=str,
        default="fe,fe-tab,mrl,hos,hos-tab",
        help="Comma-separated methods: fe, fe-tab, mrl, hos, hos-tab, hos-tab-rates",
    )
    parser.add_argument(
        "--dt-list", type=str, default="10,100", help="Comma-separated time steps in us"
    )
    parser.add_argument("--pulses", type=int, default=10, help="Pulses per run")
    parser.add_argument("--cl", type=float, default=1000.0, help="Cycle length in ms")
    parser.add_argument("--repeats", type=int, help="Runs per cell (default from config)")
    parser.add_argument("--table", type=str, help="Eigen table path for MRL")
    parser.add_argument("--out", type=str, help="Timing table CSV path")
    parser.set_defaults(handler=run)
    return parser


def run(args: argparse.Namespace, app_config: AppConfig) -> int:
    """
    Run the benchmark and print the timing table.

    Args:
        args: Parsed command line arguments.
        app_config: App configuration.

    Returns:
        int: Exit code.
    """
    configs = [
        config
        for dt_us in parse_float_list(args.dt_list)
        for config in parse_method_tokens(args.methods, us_to_ms(dt_us))
    ]
    out = ensure_writable(Path(args.out)) if args.out else None
    eigen_table = load_eigen_table(
        args, app_config, any(config.method is Method.MRL for config in configs)
    )

    results = run_benchmark(
        configs,
        pulses=args.pulses,
        cycle_length=args.cl,
        repeats=args.repeats,
        eigen_table=eigen_table,
        app_config=app_config,
    )
    frame = results_frame(results)
    if out is not None:
        write_csv(frame, out)
    LOGGER.info("Benchmarked %d configurations", len(results))
    print(frame.to_string(index=False, float_format=lambda value: f"{value:.3f}"))
    return EXIT_OK
