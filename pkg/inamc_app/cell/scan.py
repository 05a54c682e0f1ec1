"""
Classify whole-cell runs over a range of large time steps.
"""

# future
from __future__ import annotations

# imports
from dataclasses import dataclass
from typing import Iterable, List, Optional

# project
from inamc_app.cell.simulate import CellParameters, Protocol, simulate
from inamc_app.config import AppConfig, get_config
from inamc_app.exceptions import InstabilityDetectedError
from inamc_app.logger import create_logger
from inamc_app.solvers.types import Method, MethodConfig
from inamc_app.tables.eigen_table import EigenTable

# create logger
LOGGER = create_logger(__name__)

# scan outcomes
STABLE = "stable"


@dataclass(frozen=True)
class ScanResult:
    """
    Outcome of one run.

    Attributes:
        dt: Time step, ms.
        outcome: "stable", "unphysical" or "unstable".
        failed_at: Time of the instability, ms, if any.
        detail: Instability message, if any.
    """

    dt: float
    outcome: str
    failed_at: Optional[float] = None
    detail: Optional[str] = None


def scan_extreme_dt(
    method: Method,
    dts: Iterable[float],
    protocol: Optional[Protocol] = None,
    eigen_table: Optional[EigenTable] = None,
    app_config: Optional[AppConfig] = None,
) -> List[ScanResult]:
    """
    Run the protocol at each time step and classify how it ends.

    Args:
        method: Markov chain method.
        dts: Time steps, ms.
        protocol: Pacing protocol; one pulse if None.
        eigen_table: Eigen table for MRL runs; loaded from config if None.
        app_config: App configuration. If None, load from file.

    Returns:
        List[ScanResult]: One result per time step, in input order.
    """
    if app_config is None:
        app_config = get_config()
    if protocol is None:
        protocol = Protocol(pulses=1, record_stride=1)
    params = CellParameters.from_config(app_config)

    results: List[ScanResult] = []
    for dt in dts:
        config = MethodConfig(method=method, dt=dt)
        try:
            simulate(
                protocol,
                config,
                params=params,
                eigen_table=eigen_table,
                app_config=app_config,
            )
            result = ScanResult(dt=dt, outcome=STABLE)
        except InstabilityDetectedError as e:
            result = ScanResult(dt=dt, outcome=e.kind, failed_at=e.t, detail=str(e))
        LOGGER.info("%s dt=%g ms: %s", config.label, dt, result.outcome)
        results.append(result)
    return results
