"""
CLI task to write generator norms and the splitting error as functions of Vm.
"""

# imports
import argparse
from pathlib import Path

# project
from inamc_app.analysis.errors import norm_profile
from inamc_app.cli.common import EXIT_OK, ensure_writable
from inamc_app.config import ERROR_NORMS, AppConfig
from inamc_app.io.traces import write_csv
from inamc_app.tables.grid import VoltageGrid


def add_parser(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("norms", help="Generator norms over a voltage grid.")
    parser.add_argument("--dv", type=float, default=0.1, help="Grid step in mV")
    parser.add_argument("--out", type=str, required=True, help="CSV path")
    parser.add_argument(
        "--norm",
        choices=ERROR_NORMS,
        help="Matrix norm (default: error_norm from the configuration)",
    )
    parser.set_defaults(handler=run)
    return parser


def run(args: argparse.Namespace, app_config: AppConfig) -> int:
    grid = VoltageGrid(vmin=app_config.grid_vmin, vmax=app_config.grid_vmax, dv=args.dv)
    out = ensure_writable(Path(args.out))
    frame = norm_profile(grid, args.norm or app_config.error_norm)
    write_csv(frame, out)
    print(f"voltages={len(frame)} max_errOS={frame['errOS'].max():.6g} path={out}")
    return EXIT_OK
