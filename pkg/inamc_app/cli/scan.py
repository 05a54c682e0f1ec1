"""
CLI task to classify single-pulse runs at large time steps.
"""

# imports
import argparse

# project
from inamc_app.cell.scan import scan_extreme_dt
from inamc_app.cell.simulate import Protocol
from inamc_app.cli.common import EXIT_OK, load_eigen_table, parse_float_list, us_to_ms
from inamc_app.config import AppConfig
from inamc_app.solvers.types import Method


def add_parser(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("scan", help="Stability outcome per time step.")
    parser.add_argument(
        "--method", type=str, choices=[m.value for m in Method], default="hos"
    )
    parser.add_argument(
        "--dt-list", type=str, default="1000,2000,4000", help="Time steps in us"
    )
    parser.add_argument("--table", type=str, help="Eigen table path for MRL")
    parser.set_defaults(handler=run)
    return parser


def run(args: argparse.Namespace, app_config: AppConfig) -> int:
    method = Method(args.method)
    dts = [us_to_ms(dt_us) for dt_us in parse_float_list(args.dt_list)]
    eigen_table = load_eigen_table(args, app_config, method is Method.MRL)
    results = scan_extreme_dt(
        method,
        dts,
        protocol=Protocol(pulses=1, record_stride=1),
        eigen_table=eigen_table,
        app_config=app_config,
    )
    for result in results:
        where = "" if result.failed_at is None else f" at t={result.failed_at:g} ms"
        print(f"dt={result.dt * 1000.0:g}us {result.outcome}{where}")
    return EXIT_OK
