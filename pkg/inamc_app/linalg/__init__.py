"""
Dense eigendecomposition and matrix exponentials.
"""

# relative imports
from .eig import (
    EigenDecomposition,
    decompose,
    exp_reference,
    exp_via_eig,
    min_eigenvalue_gap,
)

__all__ = [
    "EigenDecomposition",
    "decompose",
    "exp_reference",
    "exp_via_eig",
    "min_eigenvalue_gap",
]
