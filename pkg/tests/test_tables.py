"""
Tests for voltage grids, eigen tables, stepper tables and rate tables.
"""

# imports
import struct

# packages
import numpy
import pytest

# project
from inamc_app.exceptions import InputError, TableFormatError
from inamc_app.linalg.eig import exp_reference
from inamc_app.model.generators import assemble_full
from inamc_app.model.rates import eval_rates
from inamc_app.tables.eigen_table import HEADER_STRUCT, load_table, save_table
from inamc_app.tables.grid import VoltageGrid, lookup
from inamc_app.tables.rate_table import build_rate_table
from inamc_app.tables.stepper_table import build_stepper


def test_default_grid_count():
    assert VoltageGrid().count == 17001
    assert VoltageGrid(dv=0.1).count == 1701
    assert VoltageGrid(dv=0.1).voltages[-1] == pytest.approx(70.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"dv": 0.0},
        {"dv": -0.1},
        {"vmin": 10.0, "vmax": 0.0},
        {"vmin": float("nan")},
    ],
)
def test_grid_rejects_bad_parameters(kwargs):
    with pytest.raises(InputError):
        VoltageGrid(**kwargs)


def test_grid_from_count_roundtrip():
    grid = VoltageGrid(dv=0.1)
    assert VoltageGrid.from_count(grid.vmin, grid.dv, grid.count) == grid
    with pytest.raises(InputError):
        VoltageGrid.from_count(0.0, 1.0, 0)


def test_lookup():
    grid = VoltageGrid(vmin=0.0, vmax=10.0, dv=0.5)
    assert lookup(grid, 0.0) == 0
    assert lookup(grid, 0.75) == 2
    assert lookup(grid, 0.74) == 1
    # ties round away from the grid start
    assert lookup(grid, 0.25) == 1
    assert lookup(grid, 10.0) == 20


def test_lookup_clamps():
    grid = VoltageGrid(vmin=0.0, vmax=10.0, dv=0.5)
    assert lookup(grid, -100.0) == 0
    assert lookup(grid, 1e6) == 20
    with pytest.raises(InputError):
        lookup(grid, float("nan"))


def test_eigen_table_entries(coarse_table, coarse_grid):
    assert len(coarse_table) == coarse_grid.count == 171
    bounds = []
    for j in range(coarse_grid.count):
        a = assemble_full(eval_rates(coarse_grid.voltage(j)))
        entry = coarse_table.entry(j)
        bound = entry.residual_bound(1e-10)
        assert entry.residual(a) <= bound * max(1.0, numpy.linalg.norm(a, "fro"))
        bounds.append(bound)
    assert coarse_table.worst_residual <= max(bounds)


def test_table_roundtrip(coarse_table, tmp_path):
    path = tmp_path / "table.mcxt"
    save_table(coarse_table, path)
    loaded = load_table(path)
    assert loaded == coarse_table
    # a second save reproduces the file byte for byte
    second = tmp_path / "again.mcxt"
    save_table(loaded, second)
    assert second.read_bytes() == path.read_bytes()
    assert not list(tmp_path.glob("*.tmp"))


def test_table_rejects_bad_magic(coarse_table, tmp_path):
    path = tmp_path / "table.mcxt"
    save_table(coarse_table, path)
    raw = bytearray(path.read_bytes())
    raw[:4] = b"XXXX"
    path.write_bytes(bytes(raw))
    with pytest.raises(TableFormatError):
        load_table(path)


def test_table_rejects_truncation(coarse_table, tmp_path):
    path = tmp_path / "table.mcxt"
    save_table(coarse_table, path)
    path.write_bytes(path.read_bytes()[:-16])
    with pytest.raises(TableFormatError):
        load_table(path)
    path.write_bytes(b"MCXT")
    with pytest.raises(TableFormatError):
        load_table(path)


def test_table_rejects_version(coarse_table, tmp_path):
    path = tmp_path / "table.mcxt"
    save_table(coarse_table, path)
    raw = bytearray(path.read_bytes())
    raw[4:8] = struct.pack("<I", 99)
    path.write_bytes(bytes(raw))
    with pytest.raises(TableFormatError):
        load_table(path)


def test_table_header(coarse_table, tmp_path):
    path = tmp_path / "table.mcxt"
    save_table(coarse_table, path)
    magic, version, vmin, dv, count, n_states = HEADER_STRUCT.unpack_from(path.read_bytes())
    assert (magic, version, vmin, dv, count, n_states) == (b"MCXT", 1, -100.0, 1.0, 171, 9)


def test_load_missing_table(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_table(tmp_path / "missing.mcxt")


def test_stepper_tiny_step_is_identity(coarse_table, app_config):
    stepper = build_stepper(coarse_table, 1e-12, app_config)
    for matrix in stepper.T:
        numpy.testing.assert_allclose(matrix, numpy.eye(9), rtol=0.0, atol=1e-10)


def test_stepper_semigroup(coarse_table, app_config):
    single = build_stepper(coarse_table, 0.05, app_config).matrix(0.0)
    double = build_stepper(coarse_table, 0.1, app_config).matrix(0.0)
    numpy.testing.assert_allclose(double, single @ single, rtol=0.0, atol=1e-10)


def test_stepper_matches_reference(coarse_table, app_config):
    stepper = build_stepper(coarse_table, 0.1, app_config)
    for vm in (-100.0, -85.0, 0.0, 70.0):
        numpy.testing.assert_allclose(
            stepper.matrix(vm),
            exp_reference(assemble_full(eval_rates(vm)), 0.1),
            rtol=0.0,
            atol=1e-9,
        )


def test_stepper_columns_are_stochastic(coarse_table, app_config):
    stepper = build_stepper(coarse_table, 0.1, app_config)
    numpy.testing.assert_allclose(stepper.T.sum(axis=1), 1.0, rtol=0.0, atol=1e-10)
    with pytest.raises(ValueError):
        stepper.T[0, 0, 0] = 1.0


@pytest.mark.parametrize("dt", [0.0, -0.01])
def test_stepper_rejects_bad_step(coarse_table, app_config, dt):
    with pytest.raises(InputError):
        build_stepper(coarse_table, dt, app_config)


def test_rate_table(coarse_grid):
    table = build_rate_table(coarse_grid)
    assert table.rates.shape == (171, 14)
    assert table.rate_set(-0.2) == eval_rates(0.0)
    numpy.testing.assert_array_equal(table.generator(25.4), assemble_full(eval_rates(25.0)))
