"""
Recorded time series of a cell simulation.
"""

# future
from __future__ import annotations

# imports
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

# packages
import numpy
import pandas

# project
from inamc_app.cell.state import CellState
from inamc_app.model.constants import STATE_NAMES

# column layout of traces and trace files
TRACE_COLUMNS: Tuple[str, ...] = (
    "t_ms",
    "Vm_mV",
    "INa",
    *STATE_NAMES,
    "cons_err",
    "Nai",
    "Ki",
    "Cai",
    "CaNSR",
    "CaJSR",
)


@dataclass
class Trace:
    """
    Simulation output: sampled state plus run metadata.

    Attributes:
        frame: One row per sample, columns TRACE_COLUMNS.
        label: Method label of the run.
        dt: Time step, ms.
        stable: False if the run stopped on an instability.
        failure: Description of the instability, if any.
        failure_kind: "unstable" or "unphysical", if any.
        failed_at: Time of the instability, ms.
        ina_seconds: Wall time spent stepping the Markov chain.
        total_seconds: Wall time of the whole run.
    """

    frame: pandas.DataFrame
    label: str = ""
    dt: float = float("nan")
    stable: bool = True
    failure: Optional[str] = None
    failure_kind: Optional[str] = None
    failed_at: Optional[float] = None
    ina_seconds: float = 0.0
    total_seconds: float = 0.0

    @property
    def t(self) -> numpy.ndarray:
        return self.frame["t_ms"].to_numpy()

    @property
    def vm(self) -> numpy.ndarray:
        return self.frame["Vm_mV"].to_numpy()

    def column(self, name: str) -> numpy.ndarray:
        return self.frame[name].to_numpy()

    @property
    def max_conservation_error(self) -> float:
        if self.frame.empty:
            return 0.0
        return float(self.frame["cons_err"].abs().max())

    def __len__(self) -> int:
        return len(self.frame)


@dataclass
class TraceRecorder:
    """Accumulates trace rows during a run."""

    rows: List[Tuple[float, ...]] = field(default_factory=list)

    def record(self, s: CellState, ina: float) -> None:
        mc = s.mc.tolist()
        self.rows.append(
            (
                s.t,
                s.vm,
                ina,
                *mc,
                sum(mc) - 1.0,
                s.nai,
                s.ki,
                s.cai,
                s.cansr,
                s.cajsr,
            )
        )

    def to_frame(self) -> pandas.DataFrame:
        return pandas.DataFrame.from_records(self.rows, columns=list(TRACE_COLUMNS))
