"""
Command line entry point: dispatches to the gentable, simulate, compare, bench,
errors, scan, norms and calibrate tasks.
"""

# imports
import argparse
import sys
from pathlib import Path
from typing import List, Optional

# project
from inamc_app.cli import bench, calibrate, compare, errors, gentable, norms, scan, simulate
from inamc_app.cli.common import exit_code_for
from inamc_app.config import DEFAULT_CONFIG_PATH, get_config
from inamc_app.logger import create_logger, enable_console_logging

# get logger
LOGGER = create_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser with all subcommands.

    Returns:
        argparse.ArgumentParser: The parser.
    """
    parser = argparse.ArgumentParser(
        prog="inamc",
        description="Exponential integrators for the INa Markov chain in a paced cell model.",
    )
    parser.add_argument(
        "--config",
        type=str,
        default=str(DEFAULT_CONFIG_PATH),
        help="Path to the JSON configuration file",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Also log to stderr at DEBUG level",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for task in (gentable, simulate, compare, bench, errors, scan, norms, calibrate):
        task.add_parser(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point.

    Args:
        argv: Arguments without the program name; sys.argv if None.

    Returns:
        int: Exit code.
    """
    args = build_parser().parse_args(argv)
    if args.verbose:
        enable_console_logging("DEBUG")

    try:
        app_config = get_config(Path(args.config))
        if app_config.log_console and not args.verbose:
            enable_console_logging(app_config.log_level)
        LOGGER.info("Starting %s", args.command)
        exit_code = args.handler(args, app_config)
        LOGGER.info("Finished %s with exit code %d", args.command, exit_code)
        return exit_code
    except Exception as e:
        exit_code = exit_code_for(e)
        if exit_code is None:
            LOGGER.error("Unexpected error in %s: %s", args.command, str(e))
            raise
        LOGGER.error("Error in %s: %s", args.command, str(e))
        print(f"error: {e}", file=sys.stderr)
        return exit_code


if __name__ == "__main__":
    sys.exit(main())
