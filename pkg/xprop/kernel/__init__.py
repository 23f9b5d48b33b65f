from .action import KernelSample, kernel_sample, step_action
from .config import BACKENDS, DEFAULT_MAX_POINTS, QUADRATURE, SPECTRAL, StepConfig
from .normalization import axis_normalization, normalization_M, signature_normalization
from .propagator import (
    DIAGNOSTIC_HEADER,
    StepDiagnostics,
    critical_grid,
    eigenphase,
    propagate,
    quadrature_step,
    sampling_ratio,
    single_step,
    spectral_multiplier,
    spectral_step,
)

__all__ = [
    "BACKENDS",
    "DEFAULT_MAX_POINTS",
    "DIAGNOSTIC_HEADER",
    "KernelSample",
    "QUADRATURE",
    "SPECTRAL",
    "StepConfig",
    "StepDiagnostics",
    "axis_normalization",
    "critical_grid",
    "eigenphase",
    "kernel_sample",
    "normalization_M",
    "propagate",
    "quadrature_step",
    "sampling_ratio",
    "signature_normalization",
    "single_step",
    "spectral_multiplier",
    "spectral_step",
    "step_action",
]
