"""
Eigendecomposition of small dense nonsymmetric matrices and matrix
exponentials built from it, plus an independent Pade oracle.
"""

# future
from __future__ import annotations

# imports
from dataclasses import dataclass
from typing import Optional

# packages
import mpmath
import numpy
import scipy.linalg

# project
from inamc_app.exceptions import (
    ImagResidueExceededError,
    InputError,
    NearDefectiveError,
    NonConvergenceError,
)
from inamc_app.logger import create_logger

# create logger
LOGGER = create_logger(__name__)

# default acceptance thresholds; callers pass AppConfig values through
DEFAULT_COND_MAX = 1e12
DEFAULT_GAP_REL = 1e-8
DEFAULT_RESIDUAL_REL = 1e-10
DEFAULT_IMAG_MAX = 1e-10
DEFAULT_IMAG_LOG = 1e-12
DEFAULT_EXTENDED_DPS = 32

# multiple of n eps cond(S) tolerated after extended-precision refinement
ROUNDOFF_FACTOR = 16.0

# largest ||A dt||_1 accepted by the oracle
REFERENCE_MAX_NORM = 1e6


@dataclass(frozen=True)
class EigenDecomposition:
    """
    Diagonalization A = S diag(D) S^-1 of a real square matrix.

    Attributes:
        D: Complex eigenvalues, sorted by descending real part, then descending
            imaginary part.
        S: Complex eigenvectors as columns.
        Sinv: Inverse of S.
    """

    D: numpy.ndarray
    S: numpy.ndarray
    Sinv: numpy.ndarray

    @property
    def size(self) -> int:
        return int(self.D.shape[0])

    def reconstruct(self) -> numpy.ndarray:
        """
        Rebuild S diag(D) S^-1.

        Returns:
            numpy.ndarray: Complex reconstruction.
        """
        return (self.S * self.D) @ self.Sinv

    def residual(self, a: numpy.ndarray) -> float:
        """
        Frobenius norm of A - S diag(D) S^-1.

        Args:
            a: The decomposed matrix.

        Returns:
            float: Reconstruction residual.
        """
        return float(numpy.linalg.norm(a - self.reconstruct(), "fro"))

    def residual_bound(self, residual_rel: float = DEFAULT_RESIDUAL_REL) -> float:
        """
        Relative residual a double-precision factorization can be held to.

        Args:
            residual_rel: Requested relative bound.

        Returns:
            float: max(residual_rel, ROUNDOFF_FACTOR n eps cond(S)).
        """
        cond = float(numpy.linalg.cond(self.S))
        floor = ROUNDOFF_FACTOR * self.size * numpy.finfo(numpy.float64).eps * cond
        return max(residual_rel, floor)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EigenDecomposition):
            return NotImplemented
        return (
            numpy.array_equal(self.D, other.D)
            and numpy.array_equal(self.S, other.S)
            and numpy.array_equal(self.Sinv, other.Sinv)
        )

    __hash__ = None  # type: ignore[assignment]


def _normalize_phases(s: numpy.ndarray) -> numpy.ndarray:
    """
    Scale each eigenvector so its largest-magnitude component is real positive.

    Args:
        s: Eigenvector matrix with unit columns.

    Returns:
        numpy.ndarray: Rescaled eigenvectors.
    """
    pivot = s[numpy.argmax(numpy.abs(s), axis=0), numpy.arange(s.shape[1])]
    return s * (numpy.abs(pivot) / pivot)


def min_eigenvalue_gap(d: numpy.ndarray) -> float:
    """
    Smallest pairwise distance between eigenvalues.

    Args:
        d: Eigenvalues.

    Returns:
        float: The minimum gap, or inf for fewer than two eigenvalues.
    """
    if d.shape[0] < 2:
        return float("inf")
    distances = numpy.abs(d[:, None] - d[None, :])
    distances[numpy.diag_indices_from(distances)] = numpy.inf
    return float(distances.min())


def _lapack_eigenpairs(a: numpy.ndarray) -> tuple[numpy.ndarray, numpy.ndarray]:
    """
    Sorted, phase-normalized eigenpairs from LAPACK.

    Args:
        a: Real square matrix.

    Returns:
        tuple[numpy.ndarray, numpy.ndarray]: Eigenvalues and unit eigenvectors.
    """
    try:
        d, s = numpy.linalg.eig(a)
    except numpy.linalg.LinAlgError as e:
        raise NonConvergenceError(f"Eigenvalue iteration failed: {e}") from e

    d = d.astype(numpy.complex128)
    s = s.astype(numpy.complex128)

    # descending real part, ties by descending imaginary part
    order = numpy.lexsort((-d.imag, -d.real))
    return d[order], _normalize_phases(s[:, order])


def _extended_eigenpairs(
    a: numpy.ndarray, dps: int
) -> tuple[numpy.ndarray, numpy.ndarray, numpy.ndarray]:
    """
    Eigenvalues with right and left eigenvectors computed in extended precision
    and rounded to complex128.

    Right vectors are scaled to unit norm with a real positive pivot; left
    vectors are scaled so each pairs to one with its right vector, which makes
    them the rows of S^-1 without a double-precision inversion.

    Args:
        a: Real square matrix.
        dps: Working precision in decimal digits.

    Returns:
        tuple: Eigenvalues, S and S^-1, sorted like the LAPACK path.
    """
    n = a.shape[0]
    with mpmath.mp.workdps(dps):
        try:
            e, el, er = mpmath.mp.eig(
                mpmath.mp.matrix(a.tolist()), left=True, right=True
            )
        except RuntimeError as ex:
            raise NonConvergenceError(f"Extended eigenvalue iteration failed: {ex}") from ex

        for k in range(n):
            column = [er[r, k] for r in range(n)]
            pivot = max(column, key=abs)
            norm = mpmath.sqrt(mpmath.fsum(abs(x) ** 2 for x in column))
            scale = abs(pivot) / (pivot * norm)
            overlap = mpmath.fsum(el[k, r] * er[r, k] for r in range(n)) * scale
            if overlap == 0:
                raise NearDefectiveError("Left and right eigenvectors are orthogonal")
            for r in range(n):
                er[r, k] *= scale
                el[k, r] /= overlap

        d = numpy.array([complex(x) for x in e], dtype=numpy.complex128)
        s = numpy.array(
            [[complex(er[r, k]) for k in range(n)] for r in range(n)],
            dtype=numpy.complex128,
        )
        s_inv = numpy.array(
            [[complex(el[k, r]) for r in range(n)] for k in range(n)],
            dtype=numpy.complex128,
        )

    order = numpy.lexsort((-d.imag, -d.real))
    return d[order], s[:, order], s_inv[order, :]


def _verify(
    a: numpy.ndarray,
    decomposition: EigenDecomposition,
    voltage: Optional[float],
    cond_max: float,
    residual_rel: float,
    attainable: bool,
) -> None:
    """
    Check conditioning and residuals of a decomposition.

    With attainable set, the residual bounds are widened to the roundoff floor
    of storing S and S^-1 in double precision.

    Raises:
        NearDefectiveError: A check failed.
    """
    n = a.shape[0]
    norm_a = max(1.0, float(numpy.linalg.norm(a, "fro")))

    cond = float(numpy.linalg.cond(decomposition.S))
    if not numpy.isfinite(cond) or cond > cond_max:
        raise NearDefectiveError(f"Eigenvector condition number {cond:.3e}", voltage)

    bound = decomposition.residual_bound(residual_rel) if attainable else residual_rel
    residual = decomposition.residual(a)
    if residual > bound * norm_a:
        raise NearDefectiveError(f"Reconstruction residual {residual:.3e}", voltage)
    identity_residual = float(
        numpy.linalg.norm(decomposition.S @ decomposition.Sinv - numpy.eye(n), "fro")
    )
    if identity_residual > bound:
        raise NearDefectiveError(f"Inverse residual {identity_residual:.3e}", voltage)


def decompose(
    a: numpy.ndarray,
    voltage: Optional[float] = None,
    cond_max: float = DEFAULT_COND_MAX,
    gap_rel: float = DEFAULT_GAP_REL,
    residual_rel: float = DEFAULT_RESIDUAL_REL,
    extended_dps: int = DEFAULT_EXTENDED_DPS,
) -> EigenDecomposition:
    """
    Diagonalize a real square matrix and verify the decomposition.

    Eigenpairs come from LAPACK (Hessenberg reduction and shifted QR). When
    that result misses the residual bounds, which happens for the strongly
    graded generators at depolarized voltages, the eigenpairs are recomputed
    in extended precision with mpmath and S^-1 is taken from the left
    eigenvectors. The recomputed factors are accepted up to the roundoff
    floor of storing them in double precision.

    Args:
        a: Real square matrix.
        voltage: Voltage the matrix belongs to, reported in errors.
        cond_max: Largest accepted condition number of S.
        gap_rel: Smallest accepted eigenvalue gap, relative to ||A||_F.
        residual_rel: Largest accepted residuals, relative to max(1, ||A||_F).
        extended_dps: Decimal digits of the extended-precision fallback.

    Returns:
        EigenDecomposition: Sorted, phase-normalized decomposition.

    Raises:
        InputError: Non-square or non-finite input.
        NonConvergenceError: The QR iteration did not converge.
        NearDefectiveError: The matrix is too close to defective.
    """
    a = numpy.asarray(a, dtype=numpy.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"Expected a square matrix, got shape {a.shape}")
    if not numpy.all(numpy.isfinite(a)):
        raise InputError("Matrix has non-finite entries")

    d, s = _lapack_eigenpairs(a)

    norm_a = float(numpy.linalg.norm(a, "fro"))
    gap = min_eigenvalue_gap(d)
    if gap < gap_rel * norm_a:
        raise NearDefectiveError(
            f"Eigenvalue gap {gap:.3e} below {gap_rel:.1e} * ||A||_F", voltage
        )

    try:
        decomposition = EigenDecomposition(D=d, S=s, Sinv=numpy.linalg.inv(s))
        _verify(a, decomposition, voltage, cond_max, residual_rel, attainable=False)
    except (NearDefectiveError, numpy.linalg.LinAlgError) as e:
        LOGGER.debug("Refining decomposition at Vm=%s: %s", voltage, e)
        d, s, s_inv = _extended_eigenpairs(a, extended_dps)
        decomposition = EigenDecomposition(D=d, S=s, Sinv=s_inv)
        _verify(a, decomposition, voltage, cond_max, residual_rel, attainable=True)

    for array in (decomposition.D, decomposition.S, decomposition.Sinv):
        array.setflags(write=False)
    return decomposition


def exp_via_eig(
    e: EigenDecomposition,
    dt: float,
    imag_max: float = DEFAULT_IMAG_MAX,
    imag_log: float = DEFAULT_IMAG_LOG,
) -> numpy.ndarray:
    """
    Matrix exponential exp(A dt) from a stored eigendecomposition.

    Args:
        e: Decomposition of A.
        dt: Time step, ms.
        imag_max: Largest accepted imaginary residue before the real cast.
        imag_log: Imaginary residues above this are logged.

    Returns:
        numpy.ndarray: Real matrix Re(S exp(D dt) S^-1).

    Raises:
        InputError: Negative dt.
        ImagResidueExceededError: Conjugate pairing is inconsistent.
    """
    if not dt >= 0.0:
        raise InputError(f"Time step must be non-negative, got {dt!r}")

    t = (e.S * numpy.exp(e.D * dt)) @ e.Sinv
    imag_residue = float(numpy.max(numpy.abs(t.imag)))
    if imag_residue > imag_max:
        raise ImagResidueExceededError(
            f"Imaginary residue {imag_residue:.3e} exceeds {imag_max:.1e}"
        )
    if imag_residue > imag_log:
        LOGGER.debug("Imaginary residue %.3e discarded at dt=%g", imag_residue, dt)

    return numpy.ascontiguousarray(t.real)


def exp_reference(a: numpy.ndarray, dt: float) -> numpy.ndarray:
    """
    Independent matrix exponential exp(A dt) by scaling and squaring with a
    Pade core.

    Args:
        a: Real square matrix.
        dt: Time step, ms.

    Returns:
        numpy.ndarray: exp(A dt).

    Raises:
        InputError: Negative dt, or ||A dt|| too large to exponentiate.
    """
    if not dt >= 0.0:
        raise InputError(f"Time step must be non-negative, got {dt!r}")

    scaled = numpy.asarray(a, dtype=numpy.float64) * dt
    norm = float(numpy.linalg.norm(scaled, 1))
    if not numpy.isfinite(norm) or norm > REFERENCE_MAX_NORM:
        raise InputError(f"||A dt||_1 = {norm:.3e} is out of range for expm")

    result = scipy.linalg.expm(scaled)
    if not numpy.all(numpy.isfinite(result)):
        raise InputError("Matrix exponential overflowed")
    return result
