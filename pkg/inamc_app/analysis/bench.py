"""
Wall-time benchmark of the Markov chain methods on the pacing protocol.
"""

# future
from __future__ import annotations

# imports
from dataclasses import dataclass
from typing import List, Optional, Sequence

# packages
import numpy
import pandas

# project
from inamc_app.cell.simulate import Protocol, simulate
from inamc_app.config import AppConfig, get_config
from inamc_app.exceptions import InputError
from inamc_app.logger import create_logger
from inamc_app.solvers.stepper import MarkovStepper
from inamc_app.solvers.types import Method, MethodConfig
from inamc_app.tables.eigen_table import EigenTable

# create logger
LOGGER = create_logger(__name__)


@dataclass(frozen=True)
class BenchmarkResult:
    """
    Median timings of one (method, dt) cell.

    Attributes:
        label: Method label.
        dt: Time step, ms.
        ina_seconds: Median wall time spent stepping the Markov chain.
        total_seconds: Median wall time of the whole run.
        ina_runs: Per-repeat INa times.
        total_runs: Per-repeat total times.
    """

    label: str
    dt: float
    ina_seconds: float
    total_seconds: float
    ina_runs: tuple
    total_runs: tuple


def run_benchmark(
    configs: Sequence[MethodConfig],
    pulses: int = 10,
    cycle_length: float = 1000.0,
    repeats: Optional[int] = None,
    eigen_table: Optional[EigenTable] = None,
    app_config: Optional[AppConfig] = None,
) -> List[BenchmarkResult]:
    """
    Time every configuration over the pacing protocol and report medians.

    Tables are built once per configuration, outside the timed region.
    Repetitions run sequentially.

    Args:
        configs: Method configurations to time.
        pulses: Number of pulses per run.
        cycle_length: Cycle length, ms.
        repeats: Runs per configuration. Defaults to the configured bench_repeats.
        eigen_table: Eigen table for MRL configurations.
        app_config: App configuration. If None, load from file.

    Returns:
        List[BenchmarkResult]: One result per configuration, in input order.

    Raises:
        InputError: No configurations or a non-positive repeat count.
    """
    if app_config is None:
        app_config = get_config()
    if not configs:
        raise InputError("Nothing to benchmark: no method configurations given")
    repeats = app_config.bench_repeats if repeats is None else repeats
    if repeats < 1:
        raise InputError(f"Repeat count must be positive, got {repeats}")

    protocol = Protocol(
        pulses=pulses, cycle_length=cycle_length, record_stride=max(1, app_config.record_stride)
    )
    results = []
    for config in configs:
        if config.method is Method.MRL and eigen_table is None:
            raise InputError("MRL benchmark requires an eigen table")
        stepper = MarkovStepper.from_config(
            config, eigen_table=eigen_table, app_config=app_config
        )
        ina_runs = []
        total_runs = []
        for k in range(repeats):
            trace = simulate(protocol, config, stepper=stepper, app_config=app_config)
            ina_runs.append(trace.ina_seconds)
            total_runs.append(trace.total_seconds)
            LOGGER.info(
                "%s dt=%g ms run %d/%d: INa %.3f s, total %.3f s",
                config.label,
                config.dt,
                k + 1,
                repeats,
                trace.ina_seconds,
                trace.total_seconds,
            )
        results.append(
            BenchmarkResult(
                label=config.label,
                dt=config.dt,
                ina_seconds=float(numpy.median(ina_runs)),
                total_seconds=float(numpy.median(total_runs)),
                ina_runs=tuple(ina_runs),
                total_runs=tuple(total_runs),
            )
        )
    return results


def results_frame(results: Sequence[BenchmarkResult]) -> pandas.DataFrame:
    """
    Tabulate benchmark results.

    Args:
        results: Benchmark results.

    Returns:
        pandas.DataFrame: Columns method, dt_us, ina_s, total_s.
    """
    return pandas.DataFrame(
        {
            "method": [r.label for r in results],
            "dt_us": [r.dt * 1000.0 for r in results],
            "ina_s": [r.ina_seconds for r in results],
            "total_s": [r.total_seconds for r in results],
        }
    )
