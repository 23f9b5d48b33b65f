"""
Classical integrator

Proper-time Lorentz-force flow m du^mu/ds = (zeta/c) eta^{mu nu} F_{nu alpha} u^alpha
integrated with classic rk4, the defect monitor along trajectories, closed-form
references for the electric and magnetic presets and CSV export.
"""

import logging
from dataclasses import dataclass

import numpy as np

from xprop.classical.lagrangian import ExtendedState, homogeneity_defect
from xprop.core.errors import ContractViolationError, DivergenceError
from xprop.core.spacetime import MetricSignature
from xprop.utils.progress import progress_or_null
from xprop.utils.reports import read_csv, write_csv

logger = logging.getLogger(__name__)

RK4 = "rk4"
METHODS = (RK4,)


def el_rhs(state, field_tensor, constants):
    """(dq/ds, du/ds) of the extended Euler-Lagrange equations"""
    return state.u.copy(), _acceleration(state.q, state.u, field_tensor, constants)


def _acceleration(q, u, field_tensor, constants):
    diag = MetricSignature(q.shape[0]).diagonal
    f = field_tensor.at(q)
    scale = constants.charge / (constants.mass * constants.light_speed)
    return scale * diag * (f @ u)


def _rk4_step(q, u, h, field_tensor, constants):
    def rhs(q_, u_):
        return u_, _acceleration(q_, u_, field_tensor, constants)

    k1q, k1u = rhs(q, u)
    k2q, k2u = rhs(q + 0.5 * h * k1q, u + 0.5 * h * k1u)
    k3q, k3u = rhs(q + 0.5 * h * k2q, u + 0.5 * h * k2u)
    k4q, k4u = rhs(q + h * k3q, u + h * k3u)
    q_next = q + (h / 6) * (k1q + 2 * k2q + 2 * k3q + k4q)
    u_next = u + (h / 6) * (k1u + 2 * k2u + 2 * k3u + k4u)
    return q_next, u_next


_STEPPERS = {RK4: _rk4_step}


@dataclass
class Trajectory:
    """States at s_0, s_0 + ds, ... stored column-wise"""

    s: np.ndarray
    q: np.ndarray
    u: np.ndarray
    method: str
    step: float

    def __post_init__(self):
        self.s = np.asarray(self.s, dtype=float)
        self.q = np.asarray(self.q, dtype=float)
        self.u = np.asarray(self.u, dtype=float)
        if self.s.ndim != 1 or self.s.size == 0:
            raise ContractViolationError("trajectory needs at least one state")
        if self.q.ndim != 2 or self.q.shape[0] != self.s.size or self.u.shape != self.q.shape:
            raise ContractViolationError(
                f"trajectory arrays disagree: s {self.s.shape}, q {self.q.shape}, u {self.u.shape}"
            )
        if self.s.size > 1:
            ds = np.diff(self.s)
            if np.any(ds <= 0):
                raise ContractViolationError("trajectory s must be strictly increasing")
            # allows for the rounding of s_0 + i ds
            slack = 1e-12 * max(1.0, float(np.max(np.abs(self.s))))
            if np.any(np.abs(ds - self.step) > 1e-9 * abs(self.step) + slack):
                raise ContractViolationError(
                    f"trajectory s must advance in uniform steps of {self.step}, "
                    f"got increments in [{ds.min()}, {ds.max()}]"
                )

    def __len__(self):
        return self.s.size

    @property
    def dimension(self):
        return self.q.shape[1]

    def state(self, index):
        return ExtendedState(self.s[index], self.q[index], self.u[index])

    @property
    def states(self):
        return [self.state(i) for i in range(len(self))]

    @property
    def final(self):
        return self.state(-1)


def integrate_classical(initial, field_tensor, constants, s_span, steps, method=RK4, progress=None):
    """Integrate the flow from `initial` over s_span in `steps` equal steps"""
    if int(steps) != steps or steps < 1:
        raise ContractViolationError(f"steps must be an integer >= 1, got {steps}")
    if not np.isfinite(s_span) or s_span <= 0:
        raise ContractViolationError(f"s_span must be finite and > 0, got {s_span}")
    if method not in _STEPPERS:
        raise ContractViolationError(f"unknown integration method {method!r}; known: {METHODS}")
    if field_tensor.dimension != initial.dimension:
        raise ContractViolationError(
            f"field has dimension {field_tensor.dimension}, state has {initial.dimension}"
        )

    steps = int(steps)
    h = float(s_span) / steps
    stepper = _STEPPERS[method]
    progress = progress_or_null(progress)

    d = initial.dimension
    q = np.empty((steps + 1, d))
    u = np.empty((steps + 1, d))
    q[0], u[0] = initial.q, initial.u
    logger.info(f"Integrating {steps} {method} steps of ds={h} from s={initial.s}")

    for i in range(steps):
        q[i + 1], u[i + 1] = stepper(q[i], u[i], h, field_tensor, constants)
        if not (np.all(np.isfinite(q[i + 1])) and np.all(np.isfinite(u[i + 1]))):
            logger.error(f"Non-finite state at step {i + 1}")
            raise DivergenceError(f"integration diverged at step {i + 1}", step=i + 1)
        progress.update()

    s = initial.s + h * np.arange(steps + 1)
    return Trajectory(s=s, q=q, u=u, method=method, step=h)


def defect_conservation_report(trajectory, potential, constants):
    """homogeneity_defect at every state of the trajectory"""
    return np.array(
        [homogeneity_defect(state, potential, constants) for state in trajectory.states]
    )


def hyperbolic_reference(s, constants, field_strength, q0=None, rapidity=0.0, axis=1, dimension=2):
    """Closed-form motion in the electric preset.

    u = c (cosh(alpha s + r), sinh(alpha s + r)) in the (0, axis) plane with
    alpha = zeta E/(m c); q follows by integration.
    """
    alpha = constants.charge * field_strength / (constants.mass * constants.light_speed)
    c = constants.light_speed
    q0 = np.zeros(dimension) if q0 is None else np.asarray(q0, dtype=float)
    theta = alpha * s + rapidity
    u = np.zeros(dimension)
    u[0] = c * np.cosh(theta)
    u[axis] = c * np.sinh(theta)
    q = q0.copy()
    if alpha == 0:
        q[0] += u[0] * s
        q[axis] += u[axis] * s
    else:
        q[0] += (c / alpha) * (np.sinh(theta) - np.sinh(rapidity))
        q[axis] += (c / alpha) * (np.cosh(theta) - np.cosh(rapidity))
    return ExtendedState(s, q, u)


def cyclotron_reference(s, constants, field_strength, u0, q0=None):
    """Closed-form motion in the magnetic preset (d = 4).

    The transverse velocity (u^1, u^2) rotates clockwise with proper-time
    frequency omega = zeta B/(m c); u^0 and u^3 are constant.
    """
    u0 = np.asarray(u0, dtype=float)
    q0 = np.zeros(4) if q0 is None else np.asarray(q0, dtype=float)
    omega = constants.charge * field_strength / (constants.mass * constants.light_speed)
    cos, sin = np.cos(omega * s), np.sin(omega * s)
    u = u0.copy()
    u[1] = u0[1] * cos + u0[2] * sin
    u[2] = -u0[1] * sin + u0[2] * cos
    q = q0 + u0 * s
    if omega != 0:
        q[1] = q0[1] + (u0[1] * sin + u0[2] * (1 - cos)) / omega
        q[2] = q0[2] + (u0[1] * (cos - 1) + u0[2] * sin) / omega
    return ExtendedState(s, q, u)


def trajectory_header(dimension):
    return (
        ["s"]
        + [f"q{mu}" for mu in range(dimension)]
        + [f"u{mu}" for mu in range(dimension)]
        + ["defect"]
    )


def write_trajectory_csv(path, trajectory, defects):
    """One row per state: s, q0..q{d-1}, u0..u{d-1}, defect"""
    rows = (
        [trajectory.s[i], *trajectory.q[i], *trajectory.u[i], defects[i]]
        for i in range(len(trajectory))
    )
    return write_csv(path, trajectory_header(trajectory.dimension), rows)


def read_trajectory_csv(path, method=RK4):
    """Trajectory and defect series from a CSV written by write_trajectory_csv"""
    header, rows = read_csv(path)
    d = (len(header) - 2) // 2
    if header != trajectory_header(d):
        raise ContractViolationError(f"{path}: unexpected trajectory header {header}")
    table = np.array(rows, dtype=float)
    s = table[:, 0]
    step = float(s[1] - s[0]) if s.size > 1 else 0.0
    trajectory = Trajectory(
        s=s, q=table[:, 1 : 1 + d], u=table[:, 1 + d : 1 + 2 * d], method=method, step=step
    )
    return trajectory, table[:, -1]
