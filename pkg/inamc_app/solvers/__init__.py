"""
Markov chain timesteppers: forward Euler, matrix Rush-Larsen and hybrid
operator splitting.
"""

# relative imports
from .euler import fe_stable, spectral_radius, step_fe, step_gate_fe, step_gate_rl
from .hos import (
    FastHighCoefficients,
    FastLowCoefficients,
    HosCoefficientTable,
    build_hos_table,
    fast_high_coefficients,
    fast_low_coefficients,
    hos_fast_high,
    hos_fast_low,
    hos_slow,
    step_hos,
)
from .mrl import step_mrl
from .stepper import MarkovStepper
from .types import HosTableMode, Method, MethodConfig

__all__ = [
    "fe_stable",
    "spectral_radius",
    "step_fe",
    "step_gate_fe",
    "step_gate_rl",
    "FastHighCoefficients",
    "FastLowCoefficients",
    "HosCoefficientTable",
    "build_hos_table",
    "fast_high_coefficients",
    "fast_low_coefficients",
    "hos_fast_high",
    "hos_fast_low",
    "hos_slow",
    "step_hos",
    "step_mrl",
    "MarkovStepper",
    "HosTableMode",
    "Method",
    "MethodConfig",
]
