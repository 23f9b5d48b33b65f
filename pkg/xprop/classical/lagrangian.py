"""
Extended Lagrangian

L_e = 1/2 m u.u + (zeta/c) A_alpha u^alpha - 1/2 m c^2 with u^mu = dq^mu/ds,
its velocity derivatives, the homogeneity defect and the projection onto the
conventional relativistic Lagrangian.
"""

from dataclasses import dataclass

import numpy as np

from xprop.core.errors import (
    ContractViolationError,
    NonFutureDirectedError,
    SuperluminalError,
)
from xprop.core.spacetime import MetricSignature, minkowski_contract

DEFAULT_ONSHELL_TOL = 1e-9


@dataclass(frozen=True)
class ExtendedState:
    """Classical phase point (s; q^mu; u^mu = dq^mu/ds)"""

    s: float
    q: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        q = np.array(self.q, dtype=float)
        u = np.array(self.u, dtype=float)
        if q.ndim != 1 or q.shape != u.shape:
            raise ContractViolationError(f"q and u must be vectors of equal length: {q.shape}, {u.shape}")
        MetricSignature(q.shape[0])
        if not (np.isfinite(self.s) and np.all(np.isfinite(q)) and np.all(np.isfinite(u))):
            raise ContractViolationError("extended state has non-finite components")
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "u", u)

    @property
    def dimension(self):
        return self.q.shape[0]

    def constraint_defect(self, constants):
        """(u.u + c^2)/c^2; zero on the mass shell"""
        c2 = constants.light_speed**2
        return (minkowski_contract(self.u, self.u) + c2) / c2

    def is_on_shell(self, constants, tol=DEFAULT_ONSHELL_TOL):
        return abs(self.constraint_defect(constants)) <= tol


def on_shell_state(q, spatial_velocity, constants, s=0.0):
    """Future-directed state with u^0 = sqrt(c^2 + |u_spatial|^2)"""
    spatial = np.asarray(spatial_velocity, dtype=float)
    u0 = np.sqrt(constants.light_speed**2 + np.dot(spatial, spatial))
    return ExtendedState(s, q, np.concatenate(([u0], spatial)))


def extended_lagrangian(state, potential, constants):
    m, c, zeta = constants.mass, constants.light_speed, constants.charge
    a = potential.evaluate(state.q)
    return (
        0.5 * m * minkowski_contract(state.u, state.u)
        + (zeta / c) * float(np.dot(a, state.u))
        - 0.5 * m * c**2
    )


def canonical_momentum(state, potential, constants):
    """dL_e/du^mu = m u_mu + (zeta/c) A_mu"""
    metric = MetricSignature(state.dimension)
    a = potential.evaluate(state.q)
    return constants.mass * metric.lower(state.u) + (constants.charge / constants.light_speed) * a


def homogeneity_defect(state, potential, constants):
    """L_e - sum_mu (dL_e/du^mu) u^mu.

    The terms linear in u cancel, leaving -1/2 m (u.u + c^2); the value is
    zero exactly on the mass shell.
    """
    momentum = canonical_momentum(state, potential, constants)
    return extended_lagrangian(state, potential, constants) - float(np.dot(momentum, state.u))


def lab_velocity(state, constants):
    """dq^i/dt = c u^i / u^0"""
    if state.u[0] <= 0:
        raise NonFutureDirectedError(f"u^0 = {state.u[0]} is not future-directed")
    return constants.light_speed * state.u[1:] / state.u[0]


def proper_time_rate(state, constants):
    """ds/dt = c / u^0"""
    if state.u[0] <= 0:
        raise NonFutureDirectedError(f"u^0 = {state.u[0]} is not future-directed")
    return constants.light_speed / state.u[0]


def time_reparametrization_residual(state, constants):
    """ds/dt - sqrt(1 - |dq/dt|^2/c^2); vanishes on the mass shell"""
    v = lab_velocity(state, constants)
    beta2 = float(np.dot(v, v)) / constants.light_speed**2
    if beta2 >= 1:
        raise SuperluminalError(f"lab speed {np.sqrt(beta2)} c is not below c")
    return proper_time_rate(state, constants) - np.sqrt(1 - beta2)


def conventional_lagrangian(q, v, potential, constants):
    """L(q, v) = -mc^2 sqrt(1 - v^2/c^2) + (zeta/c) A.v - zeta phi"""
    m, c, zeta = constants.mass, constants.light_speed, constants.charge
    v = np.asarray(v, dtype=float)
    beta2 = float(np.dot(v, v)) / c**2
    if beta2 >= 1:
        raise SuperluminalError(f"lab speed {np.sqrt(beta2)} c is not below c")
    a = potential.evaluate(q)
    # A_0 = -phi
    return -m * c**2 * np.sqrt(1 - beta2) + (zeta / c) * float(np.dot(a[1:], v)) + zeta * a[0]


def conventional_momentum(q, v, potential, constants):
    """dL/dv^i = m gamma v^i + (zeta/c) A_i"""
    m, c = constants.mass, constants.light_speed
    v = np.asarray(v, dtype=float)
    beta2 = float(np.dot(v, v)) / c**2
    if beta2 >= 1:
        raise SuperluminalError(f"lab speed {np.sqrt(beta2)} c is not below c")
    a = potential.evaluate(q)
    return m * v / np.sqrt(1 - beta2) + (constants.charge / c) * a[1:]


def projected_lagrangian(state, potential, constants):
    """Conventional Lagrangian at the lab velocity v = c u/u^0"""
    return conventional_lagrangian(state.q, lab_velocity(state, constants), potential, constants)


def trivial_extended_lagrangian(state, potential, constants):
    """L dt/ds = L(q, c u/u^0) u^0/c.

    Homogeneous of degree one in u, so its homogeneity defect vanishes on
    every future-directed subluminal state, on the mass shell or off it.
    """
    return projected_lagrangian(state, potential, constants) * state.u[0] / constants.light_speed


def velocity_gradient(lagrangian, state, potential, constants, h=1e-5):
    """Central-difference dL/du^mu of any Lagrangian taking (state, potential, constants)"""
    d = state.dimension
    grad = np.empty(d)
    for mu in range(d):
        step = np.zeros(d)
        step[mu] = h
        forward = ExtendedState(state.s, state.q, state.u + step)
        backward = ExtendedState(state.s, state.q, state.u - step)
        grad[mu] = (
            lagrangian(forward, potential, constants) - lagrangian(backward, potential, constants)
        ) / (2 * h)
    return grad


def numerical_homogeneity_defect(lagrangian, state, potential, constants, h=1e-5):
    """L - sum_mu (dL/du^mu) u^mu with the derivatives taken by central differences"""
    grad = velocity_gradient(lagrangian, state, potential, constants, h)
    return lagrangian(state, potential, constants) - float(np.dot(grad, state.u))


def el_rhs_finite_difference(state, potential, constants, h=1e-5):
    """du^mu/ds from central differences of L_e.

    m u_mu' = dL_e/dq^mu - (zeta/c) dA_mu/ds, with dA_mu/ds = A_mu(q + h u) - A_mu(q - h u) over 2h.
    """
    d = state.dimension
    metric = MetricSignature(d)
    grad = np.empty(d)
    for mu in range(d):
        step = np.zeros(d)
        step[mu] = h
        forward = ExtendedState(state.s, state.q + step, state.u)
        backward = ExtendedState(state.s, state.q - step, state.u)
        grad[mu] = (
            extended_lagrangian(forward, potential, constants)
            - extended_lagrangian(backward, potential, constants)
        ) / (2 * h)
    along = (
        potential.evaluate(state.q + h * state.u) - potential.evaluate(state.q - h * state.u)
    ) / (2 * h)
    lowered = (grad - (constants.charge / constants.light_speed) * along) / constants.mass
    return state.u.copy(), metric.raise_index(lowered)
