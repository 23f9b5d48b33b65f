"""
Step action

S = (m/2eps) xi.xi + (zeta/c) A_alpha(q_mid) xi^alpha - 1/2 m c^2 eps, the
action of one proper-time step with the potential taken at the midpoint.
"""

from dataclasses import dataclass

import numpy as np

from xprop.core.errors import ContractViolationError
from xprop.core.spacetime import minkowski_contract


def step_action(xi, q_mid, cfg):
    """Action for displacement xi about midpoint q_mid; both broadcast over trailing axes"""
    xi = np.asarray(xi, dtype=float)
    q_mid = np.asarray(q_mid, dtype=float)
    if xi.shape[:1] != (cfg.dimension,):
        raise ContractViolationError(f"xi must have leading length {cfg.dimension}, got {xi.shape}")
    k = cfg.constants
    a = cfg.potential.evaluate(q_mid)
    coupling = np.sum(a * xi, axis=0) if a.ndim == xi.ndim else np.tensordot(a, xi, axes=(0, 0))
    return (
        (k.mass / (2 * cfg.epsilon)) * minkowski_contract(xi, xi)
        + (k.charge / k.light_speed) * coupling
        - 0.5 * k.mass * k.light_speed**2 * cfg.epsilon
    )


@dataclass(frozen=True)
class KernelSample:
    displacement: np.ndarray
    amplitude: complex


def kernel_sample(xi, q_mid, cfg):
    """Unnormalized kernel value exp[(i/hbar) S] at one displacement"""
    xi = np.asarray(xi, dtype=float)
    phase = float(step_action(xi, q_mid, cfg)) / cfg.constants.hbar
    return KernelSample(displacement=xi, amplitude=complex(np.exp(1j * phase)))
