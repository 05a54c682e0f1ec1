"""
CLI task to build the eigen table of the INa generator and save it to a file.
"""

# imports
import argparse
import time
from pathlib import Path

# project
from inamc_app.cli.common import EXIT_OK, ensure_writable
from inamc_app.config import AppConfig
from inamc_app.logger import create_logger
from inamc_app.tables.eigen_table import build_eigen_table, save_table
from inamc_app.tables.grid import VoltageGrid

# get logger
LOGGER = create_logger(__name__)


def add_parser(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    """
    Register the gentable subcommand.

    Args:
        subparsers: Subparser collection of the main parser.

    Returns:
        argparse.ArgumentParser: The subcommand parser.
    """
    parser = subparsers.add_parser(
        "gentable", help="Tabulate generator eigendecompositions on a voltage grid."
    )
    parser.add_argument("--dv", type=float, help="Grid step in mV (default from config)")
    parser.add_argument("--vmin", type=float, help="Lowest grid potential in mV")
    parser.add_argument("--vmax", type=float, help="Highest grid potential in mV")
    parser.add_argument("--out", type=str, help="Output table path (default from config)")
    parser.add_argument("--workers", type=int, help="Worker processes")
    parser.set_defaults(handler=run)
    return parser


def run(args: argparse.Namespace, app_config: AppConfig) -> int:
    """
    Build and save the table.

    Args:
        args: Parsed command line arguments.
        app_config: App configuration.

    Returns:
        int: Exit code.
    """
    grid = VoltageGrid(
        vmin=app_config.grid_vmin if args.vmin is None else args.vmin,
        vmax=app_config.grid_vmax if args.vmax is None else args.vmax,
        dv=app_config.grid_dv if args.dv is None else args.dv,
    )
    out = ensure_writable(Path(args.out) if args.out else app_config.resolved_table_path())

    start = time.perf_counter()
    table = build_eigen_table(grid, workers=args.workers, app_config=app_config)
    save_table(table, out)
    elapsed = time.perf_counter() - start

    LOGGER.info("Wrote %d-entry eigen table to %s", len(table), out)
    print(
        f"entries={len(table)} worst_residual={table.worst_residual:.3e} "
        f"build_seconds={elapsed:.2f} path={out}"
    )
    return EXIT_OK
