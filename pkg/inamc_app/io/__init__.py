"""
CSV input and output of traces and reports.
"""

# relative imports
from .traces import read_csv, read_trace, validate_columns, write_csv, write_trace

__all__ = ["read_csv", "read_trace", "validate_columns", "write_csv", "write_trace"]
