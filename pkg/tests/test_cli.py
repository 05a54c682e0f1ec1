"""
Tests for the command line tasks.
"""

# imports
import json
import logging

# packages
import numpy
import pandas
import pytest

# project
from inamc_app.cli.common import (
    EXIT_INSTABILITY,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    parse_float_list,
    parse_method_tokens,
)
from inamc_app.cli.main import main
from inamc_app.config import DEFAULT_CONFIG_PATH, get_config
from inamc_app.exceptions import InputError
from inamc_app.io.traces import read_csv, read_trace
from inamc_app.logger import APP_LOGGER_NAME, CONSOLE_HANDLER_NAME
from inamc_app.solvers import HosTableMode, Method
from inamc_app.tables.eigen_table import load_table, save_table


@pytest.fixture
def table_path(coarse_table, tmp_path):
    path = tmp_path / "coarse.mcxt"
    save_table(coarse_table, path)
    return path


@pytest.fixture
def resting_trace(tmp_path):
    path = tmp_path / "rest.csv"
    assert (
        main(
            ["simulate", "--method", "fe", "--dt", "10", "--pulses", "0", "--duration", "2",
             "--out", str(path)]
        )
        == EXIT_OK
    )
    return path


def test_parse_helpers():
    assert parse_float_list("10, 40,100") == [10.0, 40.0, 100.0]
    with pytest.raises(InputError):
        parse_float_list(" , ")
    with pytest.raises(InputError):
        parse_float_list("10,abc")
    configs = parse_method_tokens("fe,hos-tab-rates,mrl", 0.01)
    assert [config.method for config in configs] == [Method.FE, Method.HOS, Method.MRL]
    assert configs[1].tabulated and configs[1].hos_table_mode is HosTableMode.RATES
    with pytest.raises(InputError):
        parse_method_tokens("fe,rk4", 0.01)


def test_gentable(tmp_path, capsys):
    out = tmp_path / "t.mcxt"
    assert main(["gentable", "--dv", "10", "--workers", "1", "--out", str(out)]) == EXIT_OK
    assert len(load_table(out)) == 18
    assert "entries=18" in capsys.readouterr().out


def test_gentable_unwritable_path(tmp_path):
    out = tmp_path / "missing" / "t.mcxt"
    assert main(["gentable", "--dv", "10", "--workers", "1", "--out", str(out)]) == EXIT_IO
    assert not out.exists()


def test_simulate_resting(resting_trace):
    frame = read_trace(resting_trace)
    assert frame["t_ms"].iloc[-1] == pytest.approx(2.0)
    assert numpy.isfinite(frame.to_numpy()).all()


def test_simulate_summary(tmp_path, capsys):
    assert main(["simulate", "--method", "hos", "--dt", "20", "--duration", "1"]) == EXIT_OK
    output = capsys.readouterr().out
    assert "HOS dt=20us status=stable" in output
    assert "ina_seconds=" in output


def test_simulate_mrl_with_table(table_path, tmp_path):
    out = tmp_path / "mrl.csv"
    argv = ["simulate", "--method", "mrl", "--dt", "100", "--duration", "3",
            "--table", str(table_path), "--out", str(out)]
    assert main(argv) == EXIT_OK
    assert len(read_trace(out)) > 0


def test_simulate_instability(tmp_path, capsys):
    out = tmp_path / "blowup.csv"
    argv = ["simulate", "--method", "fe", "--dt", "1000", "--pulses", "0", "--duration", "100",
            "--stride", "1", "--out", str(out)]
    assert main(argv) == EXIT_INSTABILITY
    assert "status=" in capsys.readouterr().out
    assert out.exists()


def test_simulate_missing_table(tmp_path):
    argv = ["simulate", "--method", "mrl", "--dt", "100", "--table", str(tmp_path / "no.mcxt")]
    assert main(argv) == EXIT_IO


def test_compare_identical(resting_trace, tmp_path, capsys):
    out = tmp_path / "deviation.csv"
    argv = ["compare", "--ref", str(resting_trace), "--test", str(resting_trace), "--out", str(out)]
    assert main(argv) == EXIT_OK
    report = read_csv(out)
    assert (report[["max_abs", "rms"]].to_numpy() == 0.0).all()


def test_compare_incompatible(resting_trace, tmp_path):
    bad = tmp_path / "bad.csv"
    pandas.read_csv(resting_trace).drop(columns="INa").to_csv(bad, index=False)
    assert main(["compare", "--ref", str(resting_trace), "--test", str(bad)]) == EXIT_IO


def test_compare_disjoint(resting_trace, tmp_path):
    shifted = tmp_path / "shifted.csv"
    frame = pandas.read_csv(resting_trace)
    frame["t_ms"] += 100.0
    frame.to_csv(shifted, index=False, float_format="%.17g")
    assert main(["compare", "--ref", str(resting_trace), "--test", str(shifted)]) == EXIT_USAGE


def test_errors_flat_trace(resting_trace, tmp_path, capsys):
    flat = tmp_path / "flat.csv"
    frame = pandas.read_csv(resting_trace)
    frame["Vm_mV"] = -95.0
    frame.to_csv(flat, index=False, float_format="%.17g")
    out = tmp_path / "errors.csv"
    assert main(["errors", "--trace", str(flat), "--out", str(out)]) == EXIT_OK
    frame = read_csv(out)
    assert list(frame.columns) == ["t_ms", "Vm", "dVdt", "errFE", "errMRL", "errHOS", "errOS"]
    assert not frame["errMRL"].any()
    assert "min errFE/errHOS" in capsys.readouterr().out


def test_errors_norm_choice(resting_trace, tmp_path, capsys):
    spectral = tmp_path / "spectral.csv"
    frobenius = tmp_path / "frobenius.csv"
    assert main(["errors", "--trace", str(resting_trace), "--out", str(spectral)]) == EXIT_OK
    assert "norm=spectral" in capsys.readouterr().out
    argv = ["errors", "--trace", str(resting_trace), "--norm", "frobenius", "--out", str(frobenius)]
    assert main(argv) == EXIT_OK
    assert "norm=frobenius" in capsys.readouterr().out
    # the spectral norm is the smaller one
    assert (read_csv(spectral)["errFE"] <= read_csv(frobenius)["errFE"]).all()
    with pytest.raises(SystemExit):
        main(["errors", "--trace", str(resting_trace), "--norm", "max"])


def test_errors_malformed_trace(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n", encoding="utf-8")
    assert main(["errors", "--trace", str(bad)]) == EXIT_IO


def test_bench_usage_errors():
    assert main(["bench", "--dt-list", ""]) == EXIT_USAGE
    assert main(["bench", "--methods", "rk4"]) == EXIT_USAGE


def test_bench(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    argv = ["bench", "--methods", "fe,hos-tab", "--dt-list", "20", "--pulses", "1", "--cl", "2",
            "--repeats", "2", "--out", str(out)]
    assert main(argv) == EXIT_OK
    frame = read_csv(out)
    assert frame["method"].tolist() == ["FE", "HOS (tab.)"]


def test_scan(capsys):
    assert main(["scan", "--method", "hos", "--dt-list", "5000"]) == EXIT_OK
    assert "dt=5000us" in capsys.readouterr().out


def test_norms(tmp_path):
    out = tmp_path / "norms.csv"
    assert main(["norms", "--dv", "10", "--out", str(out)]) == EXIT_OK
    assert len(read_csv(out)) == 18


def test_unknown_command():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


@pytest.fixture
def config_copy(tmp_path):
    path = tmp_path / "config.json"
    json_data = json.loads(DEFAULT_CONFIG_PATH.read_text(encoding="utf-8"))
    json_data["gna"] = None
    path.write_text(json.dumps(json_data, indent=4), encoding="utf-8")
    return path


def test_calibrate_writes_config(config_copy, capsys):
    assert main(["--config", str(config_copy), "calibrate", "--write"]) == EXIT_OK
    output = capsys.readouterr().out
    assert "gna=" in output
    gna = get_config(config_copy).gna
    assert gna is not None and gna > 0.0


def test_calibrate_unreachable_peak(config_copy):
    argv = ["--config", str(config_copy), "calibrate", "--peak", "95", "--write"]
    assert main(argv) == EXIT_USAGE
    assert get_config(config_copy).gna is None


def test_verbose_logs_to_stderr(tmp_path, capsys):
    out = tmp_path / "norms.csv"
    try:
        assert main(["-v", "norms", "--dv", "85", "--out", str(out)]) == EXIT_OK
    finally:
        app_logger = logging.getLogger(APP_LOGGER_NAME)
        for handler in list(app_logger.handlers):
            if handler.get_name() == CONSOLE_HANDLER_NAME:
                app_logger.removeHandler(handler)
    err = capsys.readouterr().err
    assert "Starting norms" in err
    assert "Finished norms with exit code 0" in err
