"""
End-to-end reproduction checks on the paced cell. These run full action
potentials and are marked slow; run them with ``pytest -m slow``.
"""

# packages
import numpy
import pytest

# project
from inamc_app.analysis.bench import run_benchmark
from inamc_app.analysis.compare import compare_traces
from inamc_app.analysis.errors import error_trace
from inamc_app.cell.scan import STABLE, scan_extreme_dt
from inamc_app.cell.simulate import CellParameters, Protocol, rest_state, simulate
from inamc_app.exceptions import UNPHYSICAL, UNSTABLE, InstabilityDetectedError
from inamc_app.solvers import Method, MethodConfig
from inamc_app.tables.eigen_table import build_eigen_table
from inamc_app.tables.grid import VoltageGrid

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def table(app_config):
    return build_eigen_table(VoltageGrid(dv=0.1), workers=1, app_config=app_config)


def run(method, dt_us, table, app_config, **protocol):
    protocol.setdefault("record_stride", 1)
    return simulate(
        Protocol(**protocol),
        MethodConfig(method, dt_us / 1000.0),
        eigen_table=table,
        app_config=app_config,
    )


def test_quiescence(table, app_config):
    trace = run(Method.MRL, 10.0, table, app_config, pulses=0, record_stride=100)
    assert numpy.ptp(trace.vm) < 1.0


def test_forward_euler_stability_limit(table, app_config):
    assert run(Method.FE, 40.0, table, app_config, record_stride=100).stable
    with pytest.raises(InstabilityDetectedError):
        run(Method.FE, 44.0, table, app_config, record_stride=100)


@pytest.mark.parametrize("method", [Method.MRL, Method.HOS])
def test_exponential_methods_stable_at_large_step(method, table, app_config):
    trace = run(method, 100.0, table, app_config)
    assert trace.stable
    assert trace.vm.max() > 0.0
    assert trace.max_conservation_error <= 1e-9


def test_accuracy_ordering(table, app_config):
    reference = run(Method.FE, 1.0, table, app_config, duration=4.0).frame

    def deviation(method):
        test = run(method, 40.0, table, app_config, duration=4.0).frame
        return compare_traces(reference, test, t_end=3.0).max_abs("O")

    fe = deviation(Method.FE)
    assert deviation(Method.MRL) < fe
    assert deviation(Method.HOS) < fe


def test_error_coefficients_along_action_potential(table, app_config):
    trace = run(Method.FE, 10.0, table, app_config, duration=500.0)
    report = error_trace(trace.frame, jump_times=[1.0])
    # both are set by the calibrated peak potential
    assert report.maxima["errFE"] == pytest.approx(2700.0, rel=0.2)
    assert report.maxima["errOS"] == pytest.approx(19.0, rel=0.2)
    assert 1.0 < report.argmax_t["errFE"] < 10.0
    # the membrane-speed terms scale with the upstroke velocity
    assert 118.0 / 2 < report.maxima["errMRL"] < 118.0 * 2
    assert 125.0 / 2 < report.maxima["errHOS"] < 125.0 * 2
    assert report.maxima["errHOS"] >= report.maxima["errMRL"]
    assert 1.0 < report.min_fe_over_mrl < 3.2 * 2
    assert report.min_fe_over_hos <= report.min_fe_over_mrl
    assert 1.0 < report.argmax_t["errMRL"] < 10.0


def test_extreme_steps(table, app_config):
    hos = scan_extreme_dt(Method.HOS, [1.0, 2.0, 3.0, 4.0], app_config=app_config)
    assert any(result.outcome == UNPHYSICAL for result in hos)

    mrl = scan_extreme_dt(
        Method.MRL, [4.0, 6.0, 8.0, 10.0, 12.0], eigen_table=table, app_config=app_config
    )
    failed = [result for result in mrl if result.outcome != STABLE]
    assert failed
    assert failed[0].outcome in (UNSTABLE, UNPHYSICAL)
    assert failed[0].failed_at is not None
    assert 4.0 <= failed[0].dt <= 12.0


def test_long_run_conservation(table, app_config):
    rest_vm = rest_state(CellParameters.from_config(app_config), app_config).vm
    for method in (Method.MRL, Method.HOS):
        trace = run(method, 100.0, table, app_config, pulses=4, record_stride=10)
        assert trace.stable
        assert trace.max_conservation_error <= 1e-8
        for k in (1, 2, 3):
            before_stimulus = int(numpy.abs(trace.t - (k * 1000.0 + 0.5)).argmin())
            assert trace.vm[before_stimulus] == pytest.approx(rest_vm, abs=2.0)


def test_default_grid_table(app_config):
    grid = VoltageGrid.from_config(app_config)
    eigen_table = build_eigen_table(grid, workers=4, app_config=app_config)
    assert len(eigen_table) == grid.count == 17001
    assert eigen_table.worst_residual <= 1e-10


def test_benchmark_ordering(table, app_config):
    configs = [
        MethodConfig(Method.FE, 0.01),
        MethodConfig(Method.FE, 0.01, tabulated=True),
        MethodConfig(Method.MRL, 0.01),
        MethodConfig(Method.HOS, 0.01),
        MethodConfig(Method.HOS, 0.01, tabulated=True),
        MethodConfig(Method.HOS, 0.1, tabulated=True),
    ]
    fe, fe_tab, mrl, hos, hos_tab, hos_large = run_benchmark(
        configs, pulses=1, repeats=3, eigen_table=table, app_config=app_config
    )
    assert fe_tab.ina_seconds < fe.ina_seconds
    assert hos_tab.ina_seconds < hos.ina_seconds
    assert mrl.ina_seconds < fe.ina_seconds
    assert hos_large.total_seconds < hos_tab.total_seconds
    # per action potential at equal accuracy: HOS at ten times the step, then MRL, then FE
    assert hos_large.ina_seconds < mrl.ina_seconds < fe.ina_seconds
