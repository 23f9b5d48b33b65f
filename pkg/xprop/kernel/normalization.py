"""
Kernel normalization

The zeroth-order matching constant of the proper-time kernel, as the closed
formula (2 pi hbar eps/(i m))^{d/2} and as the product of per-axis Fresnel
integrals over the Minkowski signature.
"""

import numpy as np

from xprop.core.errors import ContractViolationError
from xprop.core.spacetime import MetricSignature


def _scale(epsilon, constants):
    if epsilon <= 0:
        raise ContractViolationError(f"epsilon must be > 0, got {epsilon}")
    return 2 * np.pi * constants.hbar * epsilon / constants.mass


def normalization_M(dimension, epsilon, constants):
    """(2 pi hbar eps/(i m))^{d/2}, principal branch"""
    if int(dimension) != dimension or dimension < 1:
        raise ContractViolationError(f"dimension must be an integer >= 1, got {dimension}")
    scale = _scale(epsilon, constants)
    # arg(1/i) = -pi/2 so the principal power has phase -pi d/4
    return complex(scale ** (dimension / 2) * np.exp(-1j * np.pi * dimension / 4))


def axis_normalization(sign, epsilon, constants):
    """Integral of exp[(i/hbar)(m/2eps) sign xi^2] over one axis"""
    if sign not in (-1, 1):
        raise ContractViolationError(f"axis sign must be +1 or -1, got {sign}")
    return complex(np.sqrt(_scale(epsilon, constants)) * np.exp(1j * sign * np.pi / 4))


def signature_normalization(metric, epsilon, constants):
    """Product of axis_normalization over the metric's diagonal"""
    if not isinstance(metric, MetricSignature):
        metric = MetricSignature(metric)
    result = 1.0 + 0j
    for sign in metric.diagonal:
        result *= axis_normalization(int(sign), epsilon, constants)
    return result
