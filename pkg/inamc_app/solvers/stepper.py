"""
Per-simulation Markov chain stepper binding a method to the tables it needs.
"""

# future
from __future__ import annotations

# imports
import time
from typing import Callable, Optional

# packages
import numpy

# project
from inamc_app.config import AppConfig, get_config
from inamc_app.exceptions import InputError
from inamc_app.logger import create_logger
from inamc_app.model.generators import assemble_full
from inamc_app.model.rates import eval_rates
from inamc_app.solvers.euler import step_fe
from inamc_app.solvers.hos import (
    DEFAULT_EPS_DEG,
    DEFAULT_EPS_DEG_REL,
    HosCoefficientTable,
    build_hos_table,
    step_hos,
)
from inamc_app.solvers.mrl import step_mrl
from inamc_app.solvers.types import HosTableMode, Method, MethodConfig
from inamc_app.tables.eigen_table import EigenTable, load_table
from inamc_app.tables.grid import VoltageGrid
from inamc_app.tables.rate_table import RateTable, build_rate_table
from inamc_app.tables.stepper_table import StepperTable, build_stepper

# create logger
LOGGER = create_logger(__name__)


class MarkovStepper:
    """
    Advances INa Markov chain occupancies with one configured method.

    The wall time spent inside step() is accumulated in ``elapsed`` (seconds)
    so callers can separate channel stepping cost from total run cost.
    """

    def __init__(
        self,
        config: MethodConfig,
        stepper_table: Optional[StepperTable] = None,
        rate_table: Optional[RateTable] = None,
        hos_table: Optional[HosCoefficientTable] = None,
        eps_deg: float = DEFAULT_EPS_DEG,
        eps_deg_rel: float = DEFAULT_EPS_DEG_REL,
    ):
        """
        Args:
            config: Method configuration.
            stepper_table: Transition matrices, required for MRL.
            rate_table: Tabulated rates, required for tabulated FE and for HOS
                with tabulated rates.
            hos_table: Tabulated coefficients, required for HOS with tabulated
                coefficients.
            eps_deg: HOS absolute degeneracy threshold, 1/ms.
            eps_deg_rel: HOS degeneracy threshold relative to the larger rate.

        Raises:
            InputError: A required table is missing or built for another dt.
        """
        self.config = config
        self.eps_deg = eps_deg
        self.eps_deg_rel = eps_deg_rel
        self.elapsed = 0.0
        self.steps = 0
        self._advance = self._select(stepper_table, rate_table, hos_table)

    def _select(
        self,
        stepper_table: Optional[StepperTable],
        rate_table: Optional[RateTable],
        hos_table: Optional[HosCoefficientTable],
    ) -> Callable[[numpy.ndarray, float], numpy.ndarray]:
        config = self.config
        dt = config.dt

        if config.method is Method.MRL:
            if stepper_table is None:
                raise InputError("MRL requires a stepper table")
            if stepper_table.dt != dt:
                raise InputError(
                    f"Stepper table built for dt={stepper_table.dt}, run uses dt={dt}"
                )
            return lambda u, vm: step_mrl(u, stepper_table, vm)

        if config.method is Method.FE:
            if not config.tabulated:
                return lambda u, vm: step_fe(u, assemble_full(eval_rates(vm)), dt)
            if rate_table is None:
                raise InputError("Tabulated FE requires a rate table")
            return lambda u, vm: step_fe(u, rate_table.generator(vm), dt)

        eps_deg = self.eps_deg
        eps_deg_rel = self.eps_deg_rel
        if not config.tabulated:
            return lambda u, vm: step_hos(
                u, eval_rates(vm), dt, eps_deg, eps_deg_rel
            )
        if config.hos_table_mode is HosTableMode.RATES:
            if rate_table is None:
                raise InputError("HOS with tabulated rates requires a rate table")
            return lambda u, vm: step_hos(
                u, rate_table.rate_set(vm), dt, eps_deg, eps_deg_rel
            )
        if hos_table is None:
            raise InputError("HOS with tabulated coefficients requires a coefficient table")
        if hos_table.dt != dt:
            raise InputError(
                f"Coefficient table built for dt={hos_table.dt}, run uses dt={dt}"
            )
        return hos_table.step

    def step(self, u: numpy.ndarray, vm: float) -> numpy.ndarray:
        """
        Advance occupancies by one time step at frozen voltage.

        Args:
            u: State occupancies.
            vm: Membrane potential at the start of the step, mV.

        Returns:
            numpy.ndarray: Updated occupancies.
        """
        start = time.perf_counter()
        result = self._advance(u, vm)
        self.elapsed += time.perf_counter() - start
        self.steps += 1
        return result

    def reset_timer(self) -> None:
        self.elapsed = 0.0
        self.steps = 0

    @classmethod
    def from_config(
        cls,
        config: MethodConfig,
        eigen_table: Optional[EigenTable] = None,
        rate_table: Optional[RateTable] = None,
        app_config: Optional[AppConfig] = None,
    ) -> MarkovStepper:
        """
        Build a stepper together with every table its method needs.

        Args:
            config: Method configuration.
            eigen_table: Eigen table for MRL; loaded from the configured path
                if None.
            rate_table: Prebuilt rate table for tabulated FE or HOS; built on
                the eigen table grid (or the configured grid) if None.
            app_config: App configuration. If None, load from file.

        Returns:
            MarkovStepper: The stepper.
        """
        if app_config is None:
            app_config = get_config()

        stepper_table = None
        hos_table = None

        if config.method is Method.MRL:
            if eigen_table is None:
                eigen_table = load_table(app_config.resolved_table_path())
            stepper_table = build_stepper(eigen_table, config.dt, app_config)
        elif config.tabulated:
            if rate_table is None:
                grid = (
                    eigen_table.grid
                    if eigen_table is not None
                    else VoltageGrid.from_config(app_config)
                )
                rate_table = build_rate_table(grid)
            if (
                config.method is Method.HOS
                and config.hos_table_mode is HosTableMode.COEFFICIENTS
            ):
                hos_table = build_hos_table(
                    rate_table,
                    config.dt,
                    app_config.hos_eps_deg,
                    app_config.hos_eps_deg_rel,
                )

        LOGGER.info("Prepared %s stepper with dt=%g ms", config.label, config.dt)
        return cls(
            config,
            stepper_table=stepper_table,
            rate_table=rate_table,
            hos_table=hos_table,
            eps_deg=app_config.hos_eps_deg,
            eps_deg_rel=app_config.hos_eps_deg_rel,
        )
