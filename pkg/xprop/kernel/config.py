"""
Step configuration

One proper-time step of length epsilon with its backend, constants and
potential, validated at construction.
"""

from dataclasses import dataclass

import numpy as np

from xprop.core.errors import ContractViolationError, UnsupportedBackendError
from xprop.core.spacetime import PhysicalConstants

SPECTRAL = "spectral"
QUADRATURE = "quadrature"
BACKENDS = (SPECTRAL, QUADRATURE)

DEFAULT_MAX_POINTS = 2**16


@dataclass(frozen=True)
class StepConfig:
    epsilon: float
    backend: str
    constants: PhysicalConstants
    potential: object
    max_points: int = DEFAULT_MAX_POINTS

    def __post_init__(self):
        epsilon = float(self.epsilon)
        if not np.isfinite(epsilon) or epsilon <= 0:
            raise ContractViolationError(f"epsilon must be finite and > 0, got {self.epsilon}")
        object.__setattr__(self, "epsilon", epsilon)
        if self.backend not in BACKENDS:
            raise UnsupportedBackendError(
                f"unknown backend {self.backend!r}; expected one of {BACKENDS}"
            )
        if self.backend == SPECTRAL and not self.potential.is_uniform:
            raise UnsupportedBackendError(
                f"the spectral backend needs a zero or constant potential, got {self.potential.kind}"
            )
        if int(self.max_points) != self.max_points or self.max_points < 1:
            raise ContractViolationError(f"max_points must be a positive integer: {self.max_points}")

    @property
    def dimension(self):
        return self.potential.dimension

    def describe(self):
        return {
            "epsilon": self.epsilon,
            "backend": self.backend,
            "constants": self.constants.as_dict(),
            "potential": self.potential.describe(),
        }
