"""
xprop

Extended-Lagrangian relativistic point dynamics, the proper-time
path-integral step built on it and its Klein-Gordon verification.
"""

__version__ = "0.1.0"

from .classical import ExtendedState, FieldTensor, integrate_classical
from .core import PhysicalConstants, SpacetimeGrid, WaveField
from .kernel import StepConfig, propagate
from .utils import OutputManager, ProgressReporter

__all__ = [
    "ExtendedState",
    "FieldTensor",
    "OutputManager",
    "PhysicalConstants",
    "ProgressReporter",
    "SpacetimeGrid",
    "StepConfig",
    "WaveField",
    "__version__",
    "integrate_classical",
    "propagate",
]
