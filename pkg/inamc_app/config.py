"""
App configuration module
"""

# imports
import json
import math
import os
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Any, Dict, Optional

# project
from inamc_app.exceptions import InputError

# defaults
APP_PATH = Path(__file__).parent
PROJECT_PATH = APP_PATH.parent
DEFAULT_CONFIG_PATH = Path(os.getenv("INAMC_CONFIG", str(PROJECT_PATH / "config.json")))

# environment override for the eigen table location
TABLE_PATH_ENV = "INAMC_TABLE_PATH"

# accepted values of enumerated fields
GATE_METHODS = ("fe", "rl")
REST_STARTS = ("settled", "initial")
ERROR_NORMS = ("spectral", "frobenius")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class AppConfig:
    """
    App configuration class
    """

    # basic app config
    debug: bool = field(default=False)
    log_level: str = field(default="INFO")
    log_file: str = field(default="inamc.log")
    log_console: bool = field(default=False)
    app_name: str = field(default="inamc")
    app_version: str = field(default="0.2.0")

    # voltage grid and table config
    grid_vmin: float = field(default=-100.0)
    grid_vmax: float = field(default=70.0)
    grid_dv: float = field(default=0.01)
    table_path: str = field(default="tables/eigen_dv0.01.mcxt")
    workers: int = field(default=4)

    # eigensolver guards
    eig_cond_max: float = field(default=1e12)
    eig_gap_rel: float = field(default=1e-8)
    eig_residual_rel: float = field(default=1e-10)
    eig_extended_dps: int = field(default=32)
    imag_residue_max: float = field(default=1e-10)
    imag_residue_log: float = field(default=1e-12)

    # solver config
    hos_eps_deg: float = field(default=1e-7)
    hos_eps_deg_rel: float = field(default=2e-2)
    fe_stability_check: bool = field(default=True)

    # cell model config; gna is not given by the model description, so when
    # it is unset it is calibrated to reach calibration_peak_vm
    gna: Optional[float] = field(default=None)
    calibration_peak_vm: float = field(default=48.5)
    hh_gate_method: str = field(default="fe")

    # resting state: "settled" relaxes the published initial values first
    rest_start: str = field(default="settled")
    rest_settle_ms: float = field(default=5000.0)
    rest_settle_dt: float = field(default=0.25)

    # stimulus protocol
    stim_vm: float = field(default=-35.0)
    stim_time: float = field(default=1.0)

    # instability guards
    vm_min: float = field(default=-150.0)
    vm_max: float = field(default=100.0)
    mc_norm_max: float = field(default=10.0)

    # CICR timer
    cicr_threshold: float = field(default=1.0)
    cicr_refractory: float = field(default=10.0)

    # error analysis
    error_norm: str = field(default="spectral")

    # output and benchmarking
    record_stride: int = field(default=10)
    bench_repeats: int = field(default=6)

    def __post_init__(self):
        """
        Validate field ranges.

        Raises:
            InputError: A field is out of range.
        """
        positive = (
            "grid_dv",
            "eig_cond_max",
            "eig_gap_rel",
            "eig_residual_rel",
            "imag_residue_max",
            "imag_residue_log",
            "hos_eps_deg",
            "rest_settle_ms",
            "rest_settle_dt",
            "mc_norm_max",
            "cicr_refractory",
        )
        for name in positive:
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and value > 0.0 and math.isfinite(value)):
                raise InputError(f"Config field {name} must be positive, got {value!r}")
        if not self.grid_vmin < self.grid_vmax:
            raise InputError(f"Empty grid [{self.grid_vmin}, {self.grid_vmax}]")
        if not self.vm_min < self.vm_max:
            raise InputError(f"Empty potential envelope [{self.vm_min}, {self.vm_max}]")
        if not 0.0 <= self.hos_eps_deg_rel < 1.0:
            raise InputError(f"hos_eps_deg_rel must lie in [0, 1), got {self.hos_eps_deg_rel}")
        if self.gna is not None and not self.gna >= 0.0:
            raise InputError(f"gna must be non-negative, got {self.gna}")
        for name in ("workers", "eig_extended_dps", "record_stride", "bench_repeats"):
            if getattr(self, name) < 1:
                raise InputError(f"Config field {name} must be at least 1")
        choices = {
            "hh_gate_method": GATE_METHODS,
            "rest_start": REST_STARTS,
            "error_norm": ERROR_NORMS,
            "log_level": LOG_LEVELS,
        }
        for name, allowed in choices.items():
            if getattr(self, name) not in allowed:
                raise InputError(f"Config field {name} must be one of {allowed}")

    def resolved_table_path(self) -> Path:
        """
        Get the eigen table path, honoring the INAMC_TABLE_PATH environment variable.

        Returns:
            Path: The table path; relative paths resolve against the project root.
        """
        table_path = Path(os.getenv(TABLE_PATH_ENV, self.table_path))
        if not table_path.is_absolute():
            table_path = PROJECT_PATH / table_path
        return table_path

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert the AppConfig to a dictionary.

        Returns:
            Dict[str, Any]: The AppConfig as a dictionary.
        """
        return asdict(self)  # type: ignore

    def to_json(self) -> str:
        """
        Convert the AppConfig to a JSON string.

        Returns:
            str: The AppConfig as a JSON string.
        """
        return json.dumps(self.to_dict(), indent=4, default=str)


def get_config(config_path: Path = DEFAULT_CONFIG_PATH) -> AppConfig:
    """
    Get the app configuration.

    Args:
        config_path (Path): The path to the configuration file. Defaults to DEFAULT_CONFIG_PATH.

    Returns:
        AppConfig: The app configuration.
    """
    if not config_path.exists():
        raise FileNotFoundError(f"Configuration file not found: {config_path}")

    with open(config_path, "rt", encoding="utf-8") as config_file:
        json_data = json.load(config_file)

    # return the app config
    return AppConfig(**json_data)


if __name__ == "__main__":
    # print the app configuration
    app_config = get_config()
    print(app_config.to_json())
