"""
CLI task to calibrate the fast sodium conductance and optionally record it in
the configuration file.
"""

# imports
import argparse
import json
from pathlib import Path

# project
from inamc_app.cell.calibrate import calibrate_gna
from inamc_app.cli.common import EXIT_OK
from inamc_app.config import AppConfig
from inamc_app.logger import create_logger

# get logger
LOGGER = create_logger(__name__)


def add_parser(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    """
    Register the calibrate subcommand.

    Args:
        subparsers: Subparser collection of the main parser.

    Returns:
        argparse.ArgumentParser: The subcommand parser.
    """
    parser = subparsers.add_parser(
        "calibrate", help="Solve for GNa from the action potential peak."
    )
    parser.add_argument(
        "--peak",
        type=float,
        help="Target peak Vm in mV (default: calibration_peak_vm from the configuration)",
    )
    parser.add_argument(
        "--write", action="store_true", help="Store the result as gna in the configuration file"
    )
    parser.set_defaults(handler=run)
    return parser


def run(args: argparse.Namespace, app_config: AppConfig) -> int:
    """
    Calibrate, print and optionally store the conductance.

    Args:
        args: Parsed command line arguments.
        app_config: App configuration.

    Returns:
        int: Exit code.
    """
    target = args.peak if args.peak is not None else app_config.calibration_peak_vm
    gna = calibrate_gna(app_config, target=target)
    print(f"gna={gna:.8g} peak_vm={target:g}")

    if args.write:
        config_path = Path(args.config)
        with open(config_path, "rt", encoding="utf-8") as config_file:
            json_data = json.load(config_file)
        json_data["gna"] = round(gna, 8)
        json_data["calibration_peak_vm"] = target
        with open(config_path, "wt", encoding="utf-8") as config_file:
            json.dump(json_data, config_file, indent=4)
            config_file.write("\n")
        LOGGER.info("Wrote gna=%.8g to %s", gna, config_path)
        print(f"path={config_path}")
    return EXIT_OK
