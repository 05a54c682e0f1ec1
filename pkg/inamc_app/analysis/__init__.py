"""
Error coefficients, trace comparison and benchmarking.
"""

# relative imports
from .bench import BenchmarkResult, results_frame, run_benchmark
from .compare import ComparisonReport, compare_traces, nearest_indices
from .errors import (
    ERROR_COLUMNS,
    ErrorCoefficients,
    ErrorReport,
    commutator,
    error_coeffs,
    error_trace,
    frobenius,
    matrix_norm,
    membrane_speed,
    norm_profile,
    splitting_error,
)

__all__ = [
    "BenchmarkResult",
    "results_frame",
    "run_benchmark",
    "ComparisonReport",
    "compare_traces",
    "nearest_indices",
    "ERROR_COLUMNS",
    "ErrorCoefficients",
    "ErrorReport",
    "commutator",
    "error_coeffs",
    "error_trace",
    "frobenius",
    "matrix_norm",
    "membrane_speed",
    "norm_profile",
    "splitting_error",
]
