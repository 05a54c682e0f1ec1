"""
Tests for the configuration layer.
"""

# imports
import json

# packages
import pytest

# project
from inamc_app.config import DEFAULT_CONFIG_PATH, AppConfig, get_config
from inamc_app.exceptions import InputError


def test_default_config_file_matches_defaults():
    app_config = get_config(DEFAULT_CONFIG_PATH)
    defaults = AppConfig()
    assert app_config.calibration_peak_vm == defaults.calibration_peak_vm == 48.5
    assert app_config.error_norm == "spectral"
    assert app_config.rest_start == "settled"


@pytest.mark.parametrize(
    "kwargs",
    [
        {"grid_dv": 0.0},
        {"rest_settle_dt": -0.25},
        {"eig_cond_max": float("inf")},
        {"grid_vmin": 70.0, "grid_vmax": -100.0},
        {"vm_min": 100.0, "vm_max": -150.0},
        {"hos_eps_deg_rel": 1.0},
        {"gna": -1.0},
        {"workers": 0},
        {"record_stride": 0},
        {"hh_gate_method": "rk4"},
        {"rest_start": "steady"},
        {"error_norm": "max"},
        {"log_level": "LOUD"},
    ],
)
def test_config_rejects_bad_fields(kwargs):
    with pytest.raises(InputError):
        AppConfig(**kwargs)


def test_get_config_validates_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"error_norm": "frobenius", "gna": 20.0}), encoding="utf-8")
    app_config = get_config(path)
    assert app_config.error_norm == "frobenius"
    assert app_config.gna == 20.0

    path.write_text(json.dumps({"rest_settle_ms": 0.0}), encoding="utf-8")
    with pytest.raises(InputError):
        get_config(path)


def test_get_config_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        get_config(tmp_path / "missing.json")
