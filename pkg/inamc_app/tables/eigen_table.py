"""
Voltage-indexed tables of generator eigendecompositions: build, save, load.

File layout (little-endian):
    magic "MCXT" (4 bytes), version u32 = 1, vmin f64, dv f64, count u32,
    nstates u32 = 9, then per voltage: eigenvalues as (re, im) f64 pairs,
    S as (re, im) pairs in column-major order, then S^-1 likewise.
"""

# future
from __future__ import annotations

# imports
import os
import struct
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple

# packages
import numpy

# project
from inamc_app.config import AppConfig, get_config
from inamc_app.exceptions import NearDefectiveError, TableFormatError
from inamc_app.linalg.eig import EigenDecomposition, decompose
from inamc_app.logger import create_logger
from inamc_app.model.constants import N_STATES
from inamc_app.model.generators import assemble_full
from inamc_app.model.rates import eval_rates
from inamc_app.tables.grid import VoltageGrid

# create logger
LOGGER = create_logger(__name__)

# file format constants
TABLE_MAGIC = b"MCXT"
TABLE_VERSION = 1
HEADER_STRUCT = struct.Struct("<4sIddII")
ENTRY_WIDTH = N_STATES + 2 * N_STATES * N_STATES
COMPLEX_DTYPE = numpy.dtype("<c16")

# grid points handed to a worker at once
CHUNK_SIZE = 256


@dataclass(frozen=True, eq=False)
class EigenTable:
    """
    Eigendecompositions of A(V) at every point of a voltage grid.

    Attributes:
        grid: The voltage grid.
        D: Eigenvalues, shape (count, 9).
        S: Eigenvectors, shape (count, 9, 9).
        Sinv: Inverse eigenvector matrices, shape (count, 9, 9).
        worst_residual: Largest relative reconstruction residual seen at build
            time; NaN for loaded tables.
    """

    grid: VoltageGrid
    D: numpy.ndarray
    S: numpy.ndarray
    Sinv: numpy.ndarray
    worst_residual: float = field(default=float("nan"))

    def __len__(self) -> int:
        return int(self.D.shape[0])

    def entry(self, j: int) -> EigenDecomposition:
        """
        Get the decomposition at grid index j.

        Args:
            j: Grid index.

        Returns:
            EigenDecomposition: The stored decomposition.
        """
        return EigenDecomposition(D=self.D[j], S=self.S[j], Sinv=self.Sinv[j])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EigenTable):
            return NotImplemented
        return (
            self.grid == other.grid
            and numpy.array_equal(self.D, other.D)
            and numpy.array_equal(self.S, other.S)
            and numpy.array_equal(self.Sinv, other.Sinv)
        )

    __hash__ = None  # type: ignore[assignment]


def _decompose_chunk(
    voltages: List[float],
    cond_max: float,
    gap_rel: float,
    residual_rel: float,
    extended_dps: int,
) -> List[Tuple[EigenDecomposition, float]]:
    """
    Decompose the generators at a chunk of grid voltages.

    Args:
        voltages: Grid potentials, mV.
        cond_max: Eigenvector condition bound.
        gap_rel: Relative eigenvalue gap bound.
        residual_rel: Relative residual bound.
        extended_dps: Digits of the extended-precision refinement.

    Returns:
        List of (decomposition, relative residual) pairs in input order.
    """
    results = []
    for vm in voltages:
        a = assemble_full(eval_rates(vm))
        decomposition = decompose(
            a,
            voltage=vm,
            cond_max=cond_max,
            gap_rel=gap_rel,
            residual_rel=residual_rel,
            extended_dps=extended_dps,
        )
        scale = max(1.0, float(numpy.linalg.norm(a, "fro")))
        results.append((decomposition, decomposition.residual(a) / scale))
    return results


def build_eigen_table(
    grid: VoltageGrid,
    workers: Optional[int] = None,
    app_config: Optional[AppConfig] = None,
) -> EigenTable:
    """
    Decompose the generator at every grid voltage.

    Chunks of grid points are decomposed in parallel and gathered in index
    order.

    Args:
        grid: The voltage grid.
        workers: Worker processes; 1 runs in-process. Defaults to the config.
        app_config: App configuration. If None, load from file.

    Returns:
        EigenTable: The table.

    Raises:
        NearDefectiveError: With the offending voltage.
        NonConvergenceError: If the eigensolver fails.
    """
    if app_config is None:
        app_config = get_config()
    if workers is None:
        workers = app_config.workers

    voltages = grid.voltages.tolist()
    chunks = [voltages[i : i + CHUNK_SIZE] for i in range(0, len(voltages), CHUNK_SIZE)]
    thresholds = (
        app_config.eig_cond_max,
        app_config.eig_gap_rel,
        app_config.eig_residual_rel,
        app_config.eig_extended_dps,
    )

    LOGGER.info(
        "Building eigen table: %d voltages in %d chunks, %d workers",
        len(voltages),
        len(chunks),
        workers,
    )
    start = time.perf_counter()

    results: List[Tuple[EigenDecomposition, float]] = []
    try:
        if workers <= 1 or len(chunks) == 1:
            for chunk in chunks:
                results.extend(_decompose_chunk(chunk, *thresholds))
        else:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                futures = [
                    executor.submit(_decompose_chunk, chunk, *thresholds) for chunk in chunks
                ]
                for future in futures:
                    results.extend(future.result())
    except NearDefectiveError as e:
        LOGGER.error("Eigen table build failed: %s", e)
        raise

    d = numpy.stack([decomposition.D for decomposition, _ in results])
    s = numpy.stack([decomposition.S for decomposition, _ in results])
    s_inv = numpy.stack([decomposition.Sinv for decomposition, _ in results])
    worst_residual = max(residual for _, residual in results)

    LOGGER.info(
        "Built eigen table with %d entries in %.2fs, worst residual %.3e",
        len(results),
        time.perf_counter() - start,
        worst_residual,
    )
    return EigenTable(grid=grid, D=d, S=s, Sinv=s_inv, worst_residual=worst_residual)


def save_table(table: EigenTable, path: Path) -> None:
    """
    Write an eigen table to a binary file.

    The file is written to a temporary sibling and renamed into place, so a
    failed write leaves no partial file.

    Args:
        table: The table to save.
        path: Destination path; its directory must exist.
    """
    path = Path(path)
    header = HEADER_STRUCT.pack(
        TABLE_MAGIC,
        TABLE_VERSION,
        float(table.grid.vmin),
        float(table.grid.dv),
        len(table),
        N_STATES,
    )

    # column-major matrices: transpose the last two axes before flattening
    count = len(table)
    payload = numpy.concatenate(
        [
            table.D.reshape(count, N_STATES),
            numpy.swapaxes(table.S, 1, 2).reshape(count, N_STATES * N_STATES),
            numpy.swapaxes(table.Sinv, 1, 2).reshape(count, N_STATES * N_STATES),
        ],
        axis=1,
    ).astype(COMPLEX_DTYPE)

    file_descriptor, temp_name = tempfile.mkstemp(
        dir=path.parent, prefix=f".{path.name}.", suffix=".tmp"
    )
    try:
        with os.fdopen(file_descriptor, "wb") as table_file:
            table_file.write(header)
            table_file.write(payload.tobytes())
        os.replace(temp_name, path)
    except Exception:
        Path(temp_name).unlink(missing_ok=True)
        raise

    LOGGER.info("Saved eigen table with %d entries to %s", count, path)


def load_table(path: Path) -> EigenTable:
    """
    Read an eigen table from a binary file.

    Args:
        path: Table file path.

    Returns:
        EigenTable: The loaded table.

    Raises:
        FileNotFoundError: If the file does not exist.
        TableFormatError: Bad magic, version, state count or length.
    """
    path = Path(path)
    raw = path.read_bytes()

    if len(raw) < HEADER_STRUCT.size:
        raise TableFormatError(f"Table file truncated in header: {path}")
    magic, version, vmin, dv, count, n_states = HEADER_STRUCT.unpack_from(raw)
    if magic != TABLE_MAGIC:
        raise TableFormatError(f"Bad table magic {magic!r} in {path}")
    if version != TABLE_VERSION:
        raise TableFormatError(f"Unsupported table version {version} in {path}")
    if n_states != N_STATES:
        raise TableFormatError(f"Table has {n_states} states, expected {N_STATES}")

    expected = HEADER_STRUCT.size + count * ENTRY_WIDTH * COMPLEX_DTYPE.itemsize
    if len(raw) != expected:
        raise TableFormatError(
            f"Table file {path} has {len(raw)} bytes, expected {expected}"
        )

    payload = numpy.frombuffer(
        raw, dtype=COMPLEX_DTYPE, offset=HEADER_STRUCT.size
    ).reshape(count, ENTRY_WIDTH)
    payload = payload.astype(numpy.complex128)

    n_matrix = N_STATES * N_STATES
    d = numpy.ascontiguousarray(payload[:, :N_STATES])
    s = numpy.ascontiguousarray(
        numpy.swapaxes(
            payload[:, N_STATES : N_STATES + n_matrix].reshape(count, N_STATES, N_STATES),
            1,
            2,
        )
    )
    s_inv = numpy.ascontiguousarray(
        numpy.swapaxes(
            payload[:, N_STATES + n_matrix :].reshape(count, N_STATES, N_STATES), 1, 2
        )
    )

    LOGGER.info("Loaded eigen table with %d entries from %s", count, path)
    return EigenTable(grid=VoltageGrid.from_count(vmin, dv, count), D=d, S=s, Sinv=s_inv)
