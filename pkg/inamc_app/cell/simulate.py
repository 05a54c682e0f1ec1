"""
Time stepping of the whole-cell model with a pluggable INa Markov chain method.
"""

# future
from __future__ import annotations

# imports
import math
import time
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Optional, Tuple

# project
from inamc_app.cell import constants as c
from inamc_app.cell.cicr import update_cicr_timer
from inamc_app.cell.currents import Currents, compute_currents, gate_kinetics
from inamc_app.cell.state import CONCENTRATION_FIELDS, CellState, init_state
from inamc_app.cell.stimulus import apply_stimulus
from inamc_app.cell.trace import Trace, TraceRecorder
from inamc_app.config import AppConfig, get_config
from inamc_app.exceptions import (
    UNPHYSICAL,
    UNSTABLE,
    InputError,
    InstabilityDetectedError,
)
from inamc_app.logger import create_logger
from inamc_app.solvers.euler import fe_stable, spectral_radius, step_gate_fe, step_gate_rl
from inamc_app.solvers.stepper import MarkovStepper
from inamc_app.solvers.types import Method, MethodConfig
from inamc_app.tables.eigen_table import EigenTable

# create logger
LOGGER = create_logger(__name__)

# accepted overshoot of the calcium cubic's cosine argument
ACOS_SLACK = 1e-12


@dataclass(frozen=True)
class CellParameters:
    """
    Cell model parameters that are not fixed constants.

    Attributes:
        gna: Maximal fast sodium conductance, mS/uF.
        hh_gate_method: "fe" or "rl" for the Hodgkin-Huxley style gates.
        stim_vm: Stimulus target potential, mV.
        stim_time: Stimulus time within each cycle, ms.
        vm_min: Lower bound of a healthy membrane potential, mV.
        vm_max: Upper bound of a healthy membrane potential, mV.
        mc_norm_max: Largest accepted |occupancy| component.
        cicr_threshold: Smallest significant dV/dt maximum, mV/ms.
        cicr_refractory: Minimum time between CICR timer resets, ms.
        fe_stability_check: Reject forward Euler Markov chain steps outside
            the stability region.
        ito: Optional transient outward current as a function of the state.
    """

    gna: float = c.DEFAULT_GNA
    hh_gate_method: str = "fe"
    stim_vm: float = -35.0
    stim_time: float = 1.0
    vm_min: float = -150.0
    vm_max: float = 100.0
    mc_norm_max: float = 10.0
    cicr_threshold: float = 1.0
    cicr_refractory: float = 10.0
    fe_stability_check: bool = True
    ito: Optional[Callable[[CellState], float]] = None

    def __post_init__(self):
        if self.hh_gate_method not in ("fe", "rl"):
            raise InputError(f"Unknown gate method {self.hh_gate_method!r}")

    @classmethod
    def from_config(cls, app_config: AppConfig, **overrides) -> CellParameters:
        """
        Build parameters from the app configuration.

        An unset gna in the configuration is replaced by the calibrated value.

        Args:
            app_config: App configuration.
            **overrides: Field values replacing the configured ones.

        Returns:
            CellParameters: The parameters.
        """
        values = dict(
            gna=app_config.gna,
            hh_gate_method=app_config.hh_gate_method,
            stim_vm=app_config.stim_vm,
            stim_time=app_config.stim_time,
            vm_min=app_config.vm_min,
            vm_max=app_config.vm_max,
            mc_norm_max=app_config.mc_norm_max,
            cicr_threshold=app_config.cicr_threshold,
            cicr_refractory=app_config.cicr_refractory,
            fe_stability_check=app_config.fe_stability_check,
        )
        values.update(overrides)
        if values["gna"] is None:
            # calibration runs the simulation driver itself
            from inamc_app.cell.calibrate import calibrate_gna

            values["gna"] = calibrate_gna(app_config)
        return cls(**values)


@dataclass(frozen=True)
class Protocol:
    """
    Pacing protocol.

    Attributes:
        pulses: Number of stimuli, one per cycle.
        cycle_length: Cycle length, ms.
        record_stride: Record every n-th step.
        duration: Run length, ms; defaults to max(pulses, 1) cycles.
    """

    pulses: int = 1
    cycle_length: float = 1000.0
    record_stride: int = 10
    duration: Optional[float] = None

    def __post_init__(self):
        if self.pulses < 0:
            raise InputError(f"Pulse count must be non-negative, got {self.pulses}")
        if not self.cycle_length > 0.0:
            raise InputError(f"Cycle length must be positive, got {self.cycle_length}")
        if self.record_stride < 1:
            raise InputError(f"Record stride must be positive, got {self.record_stride}")
        if self.duration is not None and not self.duration > 0.0:
            raise InputError(f"Duration must be positive, got {self.duration}")

    @property
    def total_duration(self) -> float:
        if self.duration is not None:
            return self.duration
        return max(self.pulses, 1) * self.cycle_length


def _unphysical(message: str, t: float) -> InstabilityDetectedError:
    return InstabilityDetectedError(message, t, kind=UNPHYSICAL)


def solve_myoplasmic_calcium(cai: float, dcai: float, t: float = 0.0) -> float:
    """
    Free myoplasmic calcium after adding dcai to the total (free plus buffered).

    The buffering constraint is a cubic in the free concentration, solved by
    the trigonometric formula for its largest root.

    Args:
        cai: Free calcium at the start of the step, mmol/L.
        dcai: Increment of total calcium, mmol/L.
        t: Time, ms, for error reports.

    Returns:
        float: New free calcium, mmol/L.

    Raises:
        InstabilityDetectedError: No physical root exists.
    """
    trpn_total, trpn_km = c.TRPN
    cmdn_total, cmdn_km = c.CMDN
    trpn = trpn_total * cai / (cai + trpn_km)
    cmdn = cmdn_total * cai / (cai + cmdn_km)
    catotal = trpn + cmdn + dcai + cai
    if not catotal > 0.0:
        raise _unphysical(f"Total myoplasmic calcium {catotal:.6g} not positive", t)

    b = cmdn_total + trpn_total - catotal + trpn_km + cmdn_km
    cc = (
        cmdn_km * trpn_km
        - catotal * (trpn_km + cmdn_km)
        + trpn_total * cmdn_km
        + cmdn_total * trpn_km
    )
    d = -trpn_km * cmdn_km * catotal
    disc = b * b - 3.0 * cc
    if not disc > 0.0:
        raise _unphysical("Calcium buffering cubic has no real root spread", t)
    fab = math.sqrt(disc)
    arg = (9.0 * b * cc - 2.0 * b**3 - 27.0 * d) / (2.0 * disc**1.5)
    if abs(arg) > 1.0 + ACOS_SLACK:
        raise _unphysical(f"Calcium buffering cubic argument {arg:.6g}", t)
    arg = min(1.0, max(-1.0, arg))
    return 2.0 * fab / 3.0 * math.cos(math.acos(arg) / 3.0) - b / 3.0


def solve_jsr_calcium(cajsr: float, dcajsr: float, t: float = 0.0) -> float:
    """
    Free JSR calcium after adding dcajsr to the total, buffered by calsequestrin.

    Args:
        cajsr: Free JSR calcium at the start of the step, mmol/L.
        dcajsr: Increment of total JSR calcium, mmol/L.
        t: Time, ms, for error reports.

    Returns:
        float: New free JSR calcium, mmol/L.

    Raises:
        InstabilityDetectedError: The quadratic has no real root.
    """
    csqn_total, csqn_km = c.CSQN
    csqn = csqn_total * cajsr / (cajsr + csqn_km)
    bjsr = csqn_total - csqn - dcajsr - cajsr + csqn_km
    cjsr = csqn_km * (csqn + dcajsr + cajsr)
    disc = bjsr * bjsr + 4.0 * cjsr
    if disc < 0.0:
        raise _unphysical("JSR calcium quadratic has no real root", t)
    return (math.sqrt(disc) - bjsr) / 2.0


def _check_state(s: CellState, params: CellParameters) -> None:
    """
    Raise if a freshly computed state left its physical envelope.
    """
    scalars = (
        s.vm,
        s.nai,
        s.ki,
        s.cai,
        s.cansr,
        s.cajsr,
        s.d,
        s.f,
        s.b,
        s.g,
        s.xr,
        s.xs1,
        s.xs2,
        s.tc,
    )
    mc = s.mc.tolist()
    if not all(math.isfinite(value) for value in (*scalars, *mc)):
        raise InstabilityDetectedError("Non-finite state", s.t, kind=UNSTABLE)
    for name in CONCENTRATION_FIELDS:
        value = getattr(s, name)
        if value <= 0.0:
            raise _unphysical(f"Negative concentration {name}={value:.6g}", s.t)
    if not params.vm_min <= s.vm <= params.vm_max:
        raise InstabilityDetectedError(
            f"Membrane potential {s.vm:.6g} mV outside [{params.vm_min}, {params.vm_max}]",
            s.t,
            kind=UNSTABLE,
        )
    mc_norm = max(abs(value) for value in mc)
    if mc_norm > params.mc_norm_max:
        raise InstabilityDetectedError(
            f"Markov chain occupancy norm {mc_norm:.6g}", s.t, kind=UNSTABLE
        )


def advance_cell(
    s: CellState, stepper: MarkovStepper, params: CellParameters
) -> Tuple[CellState, Currents]:
    """
    One time step of the whole cell, also returning the currents at s.

    Args:
        s: State at t_n.
        stepper: Markov chain stepper; its dt is the step size.
        params: Cell parameters.

    Returns:
        Tuple[CellState, Currents]: State at t_n + dt and the currents at t_n.

    Raises:
        InstabilityDetectedError: The new state is non-finite, unphysical or
            out of bounds, or a forward Euler Markov chain step would leave
            its stability region.
    """
    dt = stepper.config.dt

    # currents and fluxes at the frozen state
    try:
        ito = params.ito(s) if params.ito is not None else 0.0
        currents = compute_currents(s, dt, params.gna, ito)
        kinetics = gate_kinetics(s.vm)
    except (OverflowError, ValueError) as e:
        raise InstabilityDetectedError(f"Current evaluation failed: {e}", s.t) from e

    # INa Markov chain
    if (
        params.fe_stability_check
        and stepper.config.method is Method.FE
        and math.isfinite(s.vm)
        and not fe_stable(s.vm, dt)
    ):
        raise InstabilityDetectedError(
            f"Forward Euler step of {dt:g} ms outside the stability region at "
            f"Vm={s.vm:.4g} mV (spectral radius {spectral_radius(s.vm):.4g}/ms)",
            s.t,
            kind=UNSTABLE,
        )
    mc = stepper.step(s.mc, s.vm)

    # gates
    gate_step = step_gate_rl if params.hh_gate_method == "rl" else step_gate_fe
    d = gate_step(s.d, kinetics.dss, kinetics.taud, dt)
    f = gate_step(s.f, kinetics.fss, kinetics.tauf, dt)
    b = gate_step(s.b, kinetics.bss, kinetics.taub, dt)
    g = gate_step(s.g, kinetics.gss, kinetics.taug, dt)
    xr = gate_step(s.xr, kinetics.xrss, kinetics.tauxr, dt)
    xs1 = gate_step(s.xs1, kinetics.xs1ss, kinetics.tauxs1, dt)
    xs2 = gate_step(s.xs2, kinetics.xs2ss, kinetics.tauxs2, dt)

    # concentrations
    cai = solve_myoplasmic_calcium(s.cai, currents.dcai, s.t)
    cajsr = solve_jsr_calcium(s.cajsr, currents.dcajsr, s.t)
    cansr = s.cansr + dt * (currents.iup - currents.ileak - currents.itr * c.V_JSR / c.V_NSR)
    nai = s.nai - dt * currents.itna * c.FLUX_FACTOR
    ki = s.ki - dt * currents.itk * c.FLUX_FACTOR

    # membrane potential and CICR timer
    dvdt = -currents.itot / c.MEMBRANE_CAPACITANCE
    vm = s.vm + dt * dvdt
    timer = update_cicr_timer(s, dvdt, dt, params.cicr_threshold, params.cicr_refractory)

    new_state = CellState(
        t=s.t + dt,
        vm=vm,
        nai=nai,
        ki=ki,
        cai=cai,
        cansr=cansr,
        cajsr=cajsr,
        d=d,
        f=f,
        b=b,
        g=g,
        xr=xr,
        xs1=xs1,
        xs2=xs2,
        mc=mc,
        tc=timer.tc,
        dvdt=dvdt,
        dvdt_prev=s.dvdt,
    )
    _check_state(new_state, params)
    return new_state, currents


def step_cell(
    s: CellState, stepper: MarkovStepper, params: Optional[CellParameters] = None
) -> CellState:
    """
    One time step of the whole cell.

    Order: currents at frozen Vm, Markov chain, gates, concentrations with
    calcium buffering, membrane potential, CICR timer.

    Args:
        s: State at t_n.
        stepper: Markov chain stepper; its dt is the step size.
        params: Cell parameters; defaults if None.

    Returns:
        CellState: State at t_n + dt.
    """
    return advance_cell(s, stepper, params or CellParameters())[0]


@lru_cache(maxsize=16)
def _settled_state(params: CellParameters, duration: float, dt: float) -> CellState:
    settle_params = replace(params, hh_gate_method="rl")
    stepper = MarkovStepper(MethodConfig(Method.HOS, dt))
    s = init_state()
    for _ in range(int(round(duration / dt))):
        s, _ = advance_cell(s, stepper, settle_params)
    LOGGER.info("Settled rest state after %g ms: Vm=%.4f mV", duration, s.vm)
    return replace(s, t=0.0, tc=c.INITIAL_CICR_TIMER, dvdt=math.nan, dvdt_prev=math.nan)


def rest_state(params: CellParameters, app_config: AppConfig) -> CellState:
    """
    Resting state a simulation starts from.

    The published initial values carry a net inward current of about 2 uA/uF,
    so an unpaced cell started from them drifts by about 5 mV over the first
    second. With rest_start "settled" the cell is first relaxed without
    stimulus for rest_settle_ms (HOS for the Markov chain, Rush-Larsen gates,
    step rest_settle_dt) and the result is restarted at t = 0 with a fresh
    CICR timer. The relaxation is cached per parameter set.

    Args:
        params: Cell parameters.
        app_config: App configuration.

    Returns:
        CellState: A fresh copy of the resting state.
    """
    if app_config.rest_start == "initial":
        return init_state()
    settled = _settled_state(params, app_config.rest_settle_ms, app_config.rest_settle_dt)
    return replace(settled, mc=settled.mc.copy())


def simulate(
    protocol: Protocol,
    method_config: MethodConfig,
    stepper: Optional[MarkovStepper] = None,
    params: Optional[CellParameters] = None,
    state: Optional[CellState] = None,
    eigen_table: Optional[EigenTable] = None,
    app_config: Optional[AppConfig] = None,
) -> Trace:
    """
    Run a pacing protocol and record a trace.

    A stimulus is applied at stim_time within each of the first
    ``protocol.pulses`` cycles.

    Args:
        protocol: Pacing protocol.
        method_config: Markov chain method and time step.
        stepper: Prebuilt stepper; built from method_config if None.
        params: Cell parameters; taken from the app configuration if None.
        state: Initial state; rest_state() if None.
        eigen_table: Eigen table for building an MRL stepper.
        app_config: App configuration. If None, load from file.

    Returns:
        Trace: The recorded trace.

    Raises:
        InstabilityDetectedError: The run left its physical envelope; the
            partial trace is attached as ``trace``.
    """
    if app_config is None and None in (params, stepper, state):
        app_config = get_config()
    if params is None:
        params = CellParameters.from_config(app_config)
    if stepper is None:
        stepper = MarkovStepper.from_config(
            method_config, eigen_table=eigen_table, app_config=app_config
        )
    if stepper.config.dt != method_config.dt:
        raise InputError("Stepper time step differs from the method configuration")

    dt = method_config.dt
    n_steps = int(round(protocol.total_duration / dt))
    stim_steps = {
        int(round((k * protocol.cycle_length + params.stim_time) / dt))
        for k in range(protocol.pulses)
    }
    stride = protocol.record_stride

    s = state if state is not None else rest_state(params, app_config)
    recorder = TraceRecorder()
    stepper.reset_timer()

    LOGGER.info(
        "Simulating %d pulses, CL=%g ms, %s dt=%g ms (%d steps)",
        protocol.pulses,
        protocol.cycle_length,
        method_config.label,
        dt,
        n_steps,
    )
    start = time.perf_counter()
    try:
        for n in range(n_steps):
            if n in stim_steps:
                s = apply_stimulus(s, params.stim_vm)
            s_next, currents = advance_cell(s, stepper, params)
            if n % stride == 0:
                recorder.record(s, currents.ina)
            s = s_next
        ito = params.ito(s) if params.ito is not None else 0.0
        recorder.record(s, compute_currents(s, dt, params.gna, ito).ina)
    except InstabilityDetectedError as e:
        total = time.perf_counter() - start
        recorder.record(s, float("nan"))
        e.trace = Trace(
            frame=recorder.to_frame(),
            label=method_config.label,
            dt=dt,
            stable=False,
            failure=str(e),
            failure_kind=e.kind,
            failed_at=e.t,
            ina_seconds=stepper.elapsed,
            total_seconds=total,
        )
        LOGGER.warning("%s dt=%g ms: %s", method_config.label, dt, e)
        raise

    total = time.perf_counter() - start
    LOGGER.info(
        "Finished %s dt=%g ms in %.3f s (INa %.3f s)",
        method_config.label,
        dt,
        total,
        stepper.elapsed,
    )
    return Trace(
        frame=recorder.to_frame(),
        label=method_config.label,
        dt=dt,
        ina_seconds=stepper.elapsed,
        total_seconds=total,
    )
