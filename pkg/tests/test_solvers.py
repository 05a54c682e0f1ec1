"""
Tests for the FE, MRL and HOS Markov chain timesteppers.
"""

# packages
import numpy
import pytest
import scipy.linalg

# project
from conftest import random_occupancy
from inamc_app.analysis.errors import splitting_error
from inamc_app.exceptions import DegenerateRatesError, InputError
from inamc_app.linalg.eig import exp_reference
from inamc_app.model.generators import assemble_split, generators_at
from inamc_app.model.occupancy import initial_occupancy
from inamc_app.model.rates import eval_rates
from inamc_app.solvers import (
    HosTableMode,
    MarkovStepper,
    Method,
    MethodConfig,
    build_hos_table,
    fast_high_coefficients,
    fast_low_coefficients,
    hos_fast_high,
    hos_fast_low,
    hos_slow,
    fe_stable,
    spectral_radius,
    step_fe,
    step_gate_fe,
    step_gate_rl,
    step_hos,
    step_mrl,
)
from inamc_app.tables.rate_table import build_rate_table
from inamc_app.tables.stepper_table import build_stepper


def test_fe_zero_generator():
    u = initial_occupancy()
    numpy.testing.assert_array_equal(step_fe(u, numpy.zeros((9, 9)), 0.01), u)


def test_fe_conserves_total(rng):
    for vm in (-90.0, -10.0, 50.0):
        u = random_occupancy(rng)
        assert abs(step_fe(u, generators_at(vm).A, 0.01).sum() - u.sum()) < 1e-14


def test_gate_updates():
    assert step_gate_fe(0.2, 0.8, 5.0, 0.0) == 0.2
    assert step_gate_fe(0.2, 0.8, 5.0, 0.5) == pytest.approx(0.26)
    assert step_gate_rl(0.2, 0.8, 5.0, 0.0) == 0.2
    # tiny steps keep their increment instead of rounding it away
    assert step_gate_rl(0.2, 0.8, 5.0, 1e-12) - 0.2 == pytest.approx(1.2e-13, rel=1e-3)
    assert step_gate_rl(0.2, 0.8, 5.0, 1e6) == pytest.approx(0.8)
    assert step_gate_rl(0.2, 0.8, 5.0, 5.0) == pytest.approx(0.8 - 0.6 * numpy.exp(-1.0))
    with pytest.raises(InputError):
        step_gate_rl(0.2, 0.8, 0.0, 0.1)


def test_spectral_radius():
    assert spectral_radius(-95.0) == pytest.approx(39.21, rel=1e-3)
    assert spectral_radius(50.0) == pytest.approx(49.53, rel=1e-3)
    a = generators_at(0.0).A
    assert spectral_radius(0.0) == pytest.approx(numpy.abs(numpy.linalg.eigvals(a)).max())


def test_forward_euler_stability_region(rng):
    # 40 us is inside the region up to about 50 mV, 44 us only up to about 47 mV
    assert fe_stable(-90.0, 0.044)
    assert fe_stable(48.5, 0.040)
    assert not fe_stable(48.5, 0.044)
    assert not fe_stable(60.0, 0.040)
    # outside the region the fastest mode grows under repeated steps
    a = generators_at(60.0).A
    u = random_occupancy(rng)
    for _ in range(200):
        u = step_fe(u, a, 0.04)
    assert numpy.abs(u).max() > 10.0


def test_mrl_step_is_matrix_product(coarse_table, app_config):
    stepper = build_stepper(coarse_table, 0.1, app_config)
    u = initial_occupancy()
    numpy.testing.assert_array_equal(step_mrl(u, stepper, -85.0), stepper.matrix(-85.0) @ u)
    assert abs(step_mrl(u, stepper, -85.0).sum() - 1.0) < 1e-10


def test_mrl_relaxes_to_steady_state(coarse_table, app_config):
    vm = -100.0
    stepper = build_stepper(coarse_table, 0.1, app_config)
    # 2**22 steps of 0.1 ms by repeated squaring
    propagator = numpy.linalg.matrix_power(stepper.matrix(vm), 2**22)
    u = propagator @ initial_occupancy()

    null = scipy.linalg.null_space(generators_at(vm).A)[:, 0]
    steady = null / null.sum()
    numpy.testing.assert_allclose(u, steady, rtol=0.0, atol=1e-8)


def test_fast_substeps_identity_at_zero_step():
    r = eval_rates(-40.0)
    u = initial_occupancy()
    numpy.testing.assert_allclose(hos_fast_high(u, r, 0.0), u, rtol=0.0, atol=1e-15)
    numpy.testing.assert_allclose(hos_fast_low(u, r, 0.0), u, rtol=0.0, atol=1e-15)
    numpy.testing.assert_allclose(step_hos(u, r, 0.0), u, rtol=0.0, atol=1e-15)
    k = fast_high_coefficients(r, 0.0)
    assert k.m_ou == k.m_po == k.m_st == 1.0
    assert k.k_po == k.k_ro == k.k_su == 0.0


def _analytic_high(r, dt) -> bool:
    try:
        fast_high_coefficients(r, dt)
    except DegenerateRatesError:
        return False
    return True


def test_fast_high_matches_matrix_exponential(rng):
    for _ in range(100):
        vm = float(rng.uniform(-100.0, 70.0))
        dt = float(rng.uniform(0.0, 0.1))
        u = random_occupancy(rng)
        r = eval_rates(vm)
        if not _analytic_high(r, dt):
            continue
        expected = exp_reference(assemble_split(r).A0, dt) @ u
        result = hos_fast_high(u, r, dt)
        assert numpy.max(numpy.abs(result - expected)) <= 1e-9, (vm, dt)


def test_fast_high_near_rate_crossings(rng):
    # aOU meets aPO, aQP and aRQ between 13 and 22 mV
    u = random_occupancy(rng)
    dt = 0.01
    for vm in numpy.arange(10.0, 30.0, 0.01):
        r = eval_rates(float(vm))
        if not _analytic_high(r, dt):
            continue
        expected = exp_reference(assemble_split(r).A0, dt) @ u
        assert numpy.max(numpy.abs(hos_fast_high(u, r, dt) - expected)) <= 2e-11, vm


def test_relative_degeneracy_threshold():
    r = eval_rates(21.11)
    assert abs(r.a_ou - r.a_rq) < 0.01
    with pytest.raises(DegenerateRatesError):
        fast_high_coefficients(r, 0.01)
    # the absolute floor alone accepts the pair
    fast_high_coefficients(r, 0.01, eps_deg_rel=0.0)
    # the full step still matches its numeric counterpart
    split = assemble_split(r)
    u = initial_occupancy()
    expected = exp_reference(split.A1, 0.01) @ (exp_reference(split.A0, 0.01) @ u)
    expected = expected + 0.01 * (split.A2 @ expected)
    numpy.testing.assert_allclose(step_hos(u, r, 0.01), expected, rtol=0.0, atol=1e-14)


def test_fast_low_matches_matrix_exponential(rng):
    for _ in range(100):
        vm = float(rng.uniform(-100.0, 70.0))
        dt = float(rng.uniform(0.0, 0.1))
        u = random_occupancy(rng)
        r = eval_rates(vm)
        expected = exp_reference(assemble_split(r).A1, dt) @ u
        result = hos_fast_low(u, r, dt)
        assert numpy.max(numpy.abs(result - expected)) <= 1e-9, (vm, dt)


def test_fast_substeps_conserve_total(rng):
    r = eval_rates(5.0)
    u = random_occupancy(rng)
    assert abs(hos_fast_high(u, r, 0.05).sum() - 1.0) < 1e-13
    assert abs(hos_fast_low(u, r, 0.05).sum() - 1.0) < 1e-13


def test_slow_substep_is_euler(rng):
    r = eval_rates(-60.0)
    u = random_occupancy(rng)
    expected = u + 0.1 * (assemble_split(r).A2 @ u)
    result = hos_slow(u, r, 0.1)
    numpy.testing.assert_allclose(result, expected, rtol=0.0, atol=1e-15)
    assert abs(result.sum() - u.sum()) < 1e-14


def test_slow_part_is_small():
    # the slow rates stay far below the fast ones at every voltage
    for vm in numpy.linspace(-100.0, 70.0, 171):
        split = generators_at(float(vm))
        slow = numpy.linalg.norm(split.A2, "fro")
        fast = numpy.linalg.norm(split.A0 + split.A1, "fro")
        assert slow < 0.05 * fast, vm


def test_degenerate_rates_raise():
    r = eval_rates(0.0)
    with pytest.raises(DegenerateRatesError):
        fast_high_coefficients(r, 0.1, eps_deg=1e3)
    with pytest.raises(DegenerateRatesError):
        fast_low_coefficients(r, 0.1, eps_deg=1e3)
    with pytest.raises(InputError):
        fast_high_coefficients(r, -0.1)


def test_hos_fallback_matches_analytic(rng):
    r = eval_rates(-30.0)
    split = assemble_split(r)
    u = random_occupancy(rng)
    dt = 0.05
    expected = exp_reference(split.A1, dt) @ (exp_reference(split.A0, dt) @ u)
    expected = expected + dt * (split.A2 @ expected)
    numpy.testing.assert_allclose(step_hos(u, r, dt, eps_deg=1e3), expected, atol=1e-13)
    numpy.testing.assert_allclose(step_hos(u, r, dt), expected, rtol=0.0, atol=1e-9)


@pytest.mark.parametrize("vm", [-80.0, -20.0, 30.0])
def test_hos_splitting_defect_is_second_order(vm, rng):
    split = generators_at(vm)
    r = eval_rates(vm)
    u = random_occupancy(rng)

    def defect(dt: float) -> float:
        return float(numpy.max(numpy.abs(step_hos(u, r, dt) - exp_reference(split.A, dt) @ u)))

    dt = 1e-3
    norm_a = numpy.linalg.norm(split.A, "fro")
    bound = 0.5 * numpy.linalg.norm(split.A2, "fro") ** 2 + splitting_error(split, "frobenius")
    assert defect(dt) <= bound * dt**2 + 10.0 * (norm_a * dt) ** 3
    assert defect(dt / 2.0) < 0.3 * defect(dt)


def test_hos_conserves_total(rng):
    u = random_occupancy(rng)
    for vm in (-95.0, 0.0, 60.0):
        assert abs(step_hos(u, eval_rates(vm), 0.1).sum() - 1.0) < 1e-13


def test_hos_table_matches_direct(coarse_grid):
    table = build_hos_table(build_rate_table(coarse_grid), 0.04)
    u = initial_occupancy()
    numpy.testing.assert_array_equal(table.step(u, -20.3), step_hos(u, eval_rates(-20.0), 0.04))
    with pytest.raises(InputError):
        build_hos_table(build_rate_table(coarse_grid), 0.0)


def test_method_config():
    assert MethodConfig("fe", 0.01).method is Method.FE
    assert MethodConfig(Method.MRL, 0.1).label == "MRL"
    assert MethodConfig(Method.MRL, 0.1).uses_tables
    assert MethodConfig(Method.HOS, 0.1, tabulated=True).label == "HOS (tab.)"
    assert (
        MethodConfig(Method.HOS, 0.1, tabulated=True, hos_table_mode="rates").label
        == "HOS (tab. rates)"
    )
    assert MethodConfig(Method.FE, 0.1, tabulated=True).label == "FE (tab.)"
    assert not MethodConfig(Method.FE, 0.1).uses_tables
    for dt in (0.0, -1.0, float("nan")):
        with pytest.raises(InputError):
            MethodConfig(Method.FE, dt)
    with pytest.raises(ValueError):
        MethodConfig("rk4", 0.01)


def test_stepper_requires_tables():
    with pytest.raises(InputError):
        MarkovStepper(MethodConfig(Method.MRL, 0.1))
    with pytest.raises(InputError):
        MarkovStepper(MethodConfig(Method.FE, 0.1, tabulated=True))
    with pytest.raises(InputError):
        MarkovStepper(MethodConfig(Method.HOS, 0.1, tabulated=True))


def test_stepper_rejects_mismatched_dt(coarse_table, app_config):
    stepper_table = build_stepper(coarse_table, 0.1, app_config)
    with pytest.raises(InputError):
        MarkovStepper(MethodConfig(Method.MRL, 0.05), stepper_table=stepper_table)


def _fe_reference(u, vm, dt):
    return step_fe(u, generators_at(vm).A, dt)


def _mrl_reference(u, vm, dt):
    return exp_reference(generators_at(vm).A, dt) @ u


def _hos_reference(u, vm, dt):
    return step_hos(u, eval_rates(vm), dt)


@pytest.mark.parametrize(
    "config,reference,tolerance",
    [
        (MethodConfig(Method.FE, 0.01), _fe_reference, 1e-15),
        (MethodConfig(Method.FE, 0.01, tabulated=True), _fe_reference, 1e-15),
        (MethodConfig(Method.MRL, 0.01), _mrl_reference, 1e-9),
        (MethodConfig(Method.HOS, 0.01), _hos_reference, 1e-15),
        (MethodConfig(Method.HOS, 0.01, tabulated=True), _hos_reference, 1e-15),
        (
            MethodConfig(Method.HOS, 0.01, tabulated=True, hos_table_mode=HosTableMode.RATES),
            _hos_reference,
            1e-15,
        ),
    ],
    ids=lambda value: value.label if isinstance(value, MethodConfig) else None,
)
def test_stepper_dispatch(config, reference, tolerance, coarse_table, app_config):
    stepper = MarkovStepper.from_config(config, eigen_table=coarse_table, app_config=app_config)
    u = initial_occupancy()
    # -85 mV is a point of the 1 mV grid, so tabulated lookups are exact
    result = stepper.step(u, -85.0)
    numpy.testing.assert_allclose(result, reference(u, -85.0, 0.01), rtol=0.0, atol=tolerance)
    assert stepper.steps == 1
    assert stepper.elapsed > 0.0
    assert abs(result.sum() - 1.0) < 1e-10
    stepper.reset_timer()
    assert (stepper.steps, stepper.elapsed) == (0, 0.0)
