"""
Damped Fresnel oracle

Brute-force values of the Gaussian moments of the proper-time kernel,

    I = int xi^{indices} exp[(i/hbar)(m xi.xi/(2 eps) + b.xi)] exp(-delta |xi|^2) d^d xi,

by a separable trapezoid sum for a decreasing sequence of dampings
delta_j = delta_0 / 2^j followed by Richardson extrapolation to delta = 0.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from xprop.core.errors import ContractViolationError, ConvergenceError

logger = logging.getLogger(__name__)

MIN_SAMPLES = 64
# exp(-TAIL) bounds both the damped tail and the trapezoid aliasing
TAIL = 36.0


def axis_signs(dimension):
    """Metric sign per axis: one axis is spacelike, more start with time"""
    if dimension == 1:
        return (1,)
    return (-1,) + (1,) * (dimension - 1)


@dataclass(frozen=True)
class MomentSpec:
    dimension: int
    order: int = 0
    indices: tuple = ()
    source: tuple = None
    damping: float = 0.1
    levels: int = 8
    cutoff: float = None
    samples: int = MIN_SAMPLES
    signs: tuple = None
    tolerance: float = 1e-7
    powers: tuple = field(init=False, default=())

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise ContractViolationError(f"the oracle supports d = 1 or 2, got {self.dimension}")
        if self.order not in (0, 1, 2) or len(self.indices) != self.order:
            raise ContractViolationError(
                f"order {self.order} needs {self.order} indices, got {self.indices}"
            )
        if any(not 0 <= i < self.dimension for i in self.indices):
            raise ContractViolationError(f"moment indices {self.indices} out of range")
        if self.damping <= 0:
            raise ContractViolationError(f"damping must be > 0, got {self.damping}")
        if self.cutoff is not None and self.cutoff <= 0:
            raise ContractViolationError(f"cutoff must be > 0, got {self.cutoff}")
        if self.samples < MIN_SAMPLES:
            raise ContractViolationError(f"at least {MIN_SAMPLES} samples per axis, got {self.samples}")
        if self.levels < 2:
            raise ContractViolationError(f"extrapolation needs at least 2 levels, got {self.levels}")
        source = (0.0,) * self.dimension if self.source is None else tuple(map(float, self.source))
        if len(source) != self.dimension:
            raise ContractViolationError(f"source needs {self.dimension} components, got {source}")
        signs = axis_signs(self.dimension) if self.signs is None else tuple(self.signs)
        if len(signs) != self.dimension or any(s not in (-1, 1) for s in signs):
            raise ContractViolationError(f"invalid axis signs {signs}")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "signs", signs)
        object.__setattr__(
            self, "powers", tuple(self.indices.count(mu) for mu in range(self.dimension))
        )

    @property
    def dampings(self):
        return [self.damping / 2**j for j in range(self.levels)]


def _axis_sum(power, sign, beta, curvature, delta, cutoff, samples):
    """Trapezoid sum of xi^power exp(i sign curvature xi^2 + i beta xi - delta xi^2)"""
    radius = np.sqrt(TAIL / delta) if cutoff is None else cutoff
    bandwidth = abs(beta) + 2 * np.sqrt(TAIL) * np.sqrt((delta**2 + curvature**2) / delta)
    spacing = 2 * np.pi / bandwidth
    half = max(int(np.ceil(radius / spacing)), (samples - 1) // 2 + 1)
    spacing = radius / half
    xi = spacing * np.arange(-half, half + 1)
    integrand = xi**power * np.exp((1j * sign * curvature - delta) * xi**2 + 1j * beta * xi)
    return spacing * np.sum(integrand)


def damped_moment(spec, epsilon, constants, delta):
    """Moment at a single damping delta"""
    curvature = constants.mass / (2 * constants.hbar * epsilon)
    value = 1.0 + 0j
    for mu in range(spec.dimension):
        beta = spec.source[mu] / constants.hbar
        value *= _axis_sum(
            spec.powers[mu], spec.signs[mu], beta, curvature, delta, spec.cutoff, spec.samples
        )
    return value


def richardson_extrapolate(deltas, values, tolerance=1e-7, scale=None):
    """Extrapolate values(delta) to delta = 0 for deltas halving at each level.

    Builds the Neville table T[j, k] = T[j, k-1] + (T[j, k-1] - T[j-1, k-1])/(2^k - 1)
    and accepts the last diagonal entry when it moved by less than
    tolerance * scale from the previous one. Returns (value, diagonal).
    """
    deltas = np.asarray(deltas, dtype=float)
    values = np.asarray(values, dtype=complex)
    if deltas.size < 2 or deltas.size != values.size:
        raise ContractViolationError("richardson_extrapolate needs matching sequences of length >= 2")
    if not np.allclose(deltas[:-1] / deltas[1:], 2.0):
        raise ContractViolationError(f"dampings must halve at every level: {deltas.tolist()}")

    n = values.size
    table = np.zeros((n, n), dtype=complex)
    table[:, 0] = values
    for j in range(1, n):
        for k in range(1, j + 1):
            table[j, k] = table[j, k - 1] + (table[j, k - 1] - table[j - 1, k - 1]) / (2**k - 1)
    diagonal = [complex(table[j, j]) for j in range(n)]

    if scale is None:
        scale = abs(diagonal[-1])
    change = abs(diagonal[-1] - diagonal[-2])
    if change > tolerance * max(scale, np.finfo(float).tiny):
        raise ConvergenceError(
            f"extrapolation did not settle: last change {change:.3e} exceeds {tolerance:.1e} x {scale:.3e}",
            estimates=diagonal,
        )
    return diagonal[-1], diagonal


def damped_fresnel_moment(spec, epsilon, constants, scale=None):
    """Damping-extrapolated moment; scale sets the convergence yardstick for zero moments"""
    if epsilon <= 0:
        raise ContractViolationError(f"epsilon must be > 0, got {epsilon}")
    deltas = spec.dampings
    values = [damped_moment(spec, epsilon, constants, delta) for delta in deltas]
    if scale is None and spec.order > 0:
        zeroth = MomentSpec(
            spec.dimension,
            source=spec.source,
            damping=spec.damping,
            levels=spec.levels,
            cutoff=spec.cutoff,
            samples=spec.samples,
            signs=spec.signs,
        )
        scale = abs(damped_moment(zeroth, epsilon, constants, deltas[-1]))
    value, diagonal = richardson_extrapolate(deltas, values, spec.tolerance, scale)
    logger.debug(f"moment {spec.indices} d={spec.dimension}: {value} from {len(diagonal)} levels")
    return value
