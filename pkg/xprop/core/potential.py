"""
Four-potentials

A_alpha(q) with lower index and A_0 = -phi. Analytic presets carry exact
derivatives; grid-sampled potentials are interpolated periodically and
differentiated by second-order central differences.
"""

from itertools import product

import numpy as np

from xprop.core.errors import ContractViolationError
from xprop.core.spacetime import MetricSignature

ZERO = "zero"
CONSTANT = "constant"
ANALYTIC = "analytic"
GRID = "grid"

KINDS = (ZERO, CONSTANT, ANALYTIC, GRID)


def _points(q, dimension):
    q = np.asarray(q, dtype=float)
    if q.ndim == 0 or q.shape[0] != dimension:
        raise ContractViolationError(
            f"points must have leading length {dimension}, got shape {q.shape}"
        )
    return q


class PotentialField:
    """Base four-potential; subclasses implement _components and _jacobian"""

    kind = None
    preset = None

    def __init__(self, dimension):
        self.metric = MetricSignature(dimension)
        self.dimension = self.metric.dimension

    @property
    def is_uniform(self):
        """True when A does not depend on q (zero or constant)"""
        return self.kind in (ZERO, CONSTANT)

    def evaluate(self, q):
        """A_alpha at q; q has shape (d, ...) and so does the result"""
        q = _points(q, self.dimension)
        return self._components(q)

    def jacobian(self, q):
        """J[alpha, beta] = dA_alpha/dq^beta, shape (d, d, ...)"""
        q = _points(q, self.dimension)
        return self._jacobian(q)

    def divergence(self, q):
        """d_alpha A^alpha = sum_alpha eta^{alpha alpha} dA_alpha/dq^alpha"""
        jac = self.jacobian(q)
        diag = self.metric.diagonal
        return sum(diag[alpha] * jac[alpha, alpha] for alpha in range(self.dimension))

    def sample(self, grid):
        """A_alpha at every grid point, shape (d, N_0, ..., N_{d-1})"""
        self._check_grid(grid)
        return self.evaluate(grid.coordinate_mesh())

    def _check_grid(self, grid):
        if grid.dimension != self.dimension:
            raise ContractViolationError(
                f"potential has dimension {self.dimension}, grid has {grid.dimension}"
            )

    def _zeros(self, q, leading=1):
        return np.zeros((self.dimension,) * leading + q.shape[1:])

    def describe(self):
        return {"kind": self.kind, "preset": self.preset, "dimension": self.dimension}


class ZeroPotential(PotentialField):
    kind = ZERO

    def _components(self, q):
        return self._zeros(q)

    def _jacobian(self, q):
        return self._zeros(q, leading=2)


class ConstantPotential(PotentialField):
    kind = CONSTANT

    def __init__(self, components):
        components = np.asarray(components, dtype=float)
        if components.ndim != 1 or not np.all(np.isfinite(components)):
            raise ContractViolationError(f"constant potential needs a finite vector: {components}")
        super().__init__(components.shape[0])
        self.components = components

    def _components(self, q):
        shape = (self.dimension,) + (1,) * (q.ndim - 1)
        return np.broadcast_to(self.components.reshape(shape), q.shape).copy()

    def _jacobian(self, q):
        return self._zeros(q, leading=2)

    def describe(self):
        return {**super().describe(), "components": self.components.tolist()}


class ElectricPreset(PotentialField):
    """Constant electric field E along `axis`: phi = -E q^axis, so A_0 = E q^axis"""

    kind = ANALYTIC
    preset = "electric"

    def __init__(self, dimension, field_strength, axis=1):
        super().__init__(dimension)
        if not 1 <= axis < self.dimension:
            raise ContractViolationError(f"electric field axis must be spatial, got {axis}")
        self.field_strength = float(field_strength)
        self.axis = axis

    def _components(self, q):
        values = self._zeros(q)
        values[0] = self.field_strength * q[self.axis]
        return values

    def _jacobian(self, q):
        jac = self._zeros(q, leading=2)
        jac[0, self.axis] = self.field_strength
        return jac

    def describe(self):
        return {**super().describe(), "field": self.field_strength, "axis": self.axis}


class MagneticPreset(PotentialField):
    """Constant magnetic field B along axis 3 in 3+1 dimensions, A = B x r / 2"""

    kind = ANALYTIC
    preset = "magnetic"

    def __init__(self, field_strength, dimension=4):
        if dimension != 4:
            raise ContractViolationError("the magnetic preset needs d = 4")
        super().__init__(dimension)
        self.field_strength = float(field_strength)

    def _components(self, q):
        values = self._zeros(q)
        values[1] = -0.5 * self.field_strength * q[2]
        values[2] = 0.5 * self.field_strength * q[1]
        return values

    def _jacobian(self, q):
        jac = self._zeros(q, leading=2)
        jac[1, 2] = -0.5 * self.field_strength
        jac[2, 1] = 0.5 * self.field_strength
        return jac

    def describe(self):
        return {**super().describe(), "field": self.field_strength}


class WavePreset(PotentialField):
    """A_alpha = a_alpha cos(K_mu q^mu + theta)"""

    kind = ANALYTIC
    preset = "wave"

    def __init__(self, amplitude, wavevector, phase=0.0):
        amplitude = np.asarray(amplitude, dtype=float)
        wavevector = np.asarray(wavevector, dtype=float)
        if amplitude.ndim != 1 or amplitude.shape != wavevector.shape:
            raise ContractViolationError(
                f"amplitude and wavevector must be vectors of equal length: "
                f"{amplitude.shape} vs {wavevector.shape}"
            )
        super().__init__(amplitude.shape[0])
        self.amplitude = amplitude
        self.wavevector = wavevector
        self.phase = float(phase)

    def _argument(self, q):
        return np.tensordot(self.wavevector, q, axes=(0, 0)) + self.phase

    def _components(self, q):
        return np.multiply.outer(self.amplitude, np.cos(self._argument(q)))

    def _jacobian(self, q):
        sin = np.sin(self._argument(q))
        return -np.multiply.outer(np.outer(self.amplitude, self.wavevector), sin)

    def describe(self):
        return {
            **super().describe(),
            "amplitude": self.amplitude.tolist(),
            "wavevector": self.wavevector.tolist(),
            "phase": self.phase,
        }


class SampledPotential(PotentialField):
    """Grid samples of A_alpha, interpolated multilinearly with periodic wrap"""

    kind = GRID

    def __init__(self, grid, values):
        values = np.asarray(values, dtype=float)
        if values.shape != (grid.dimension,) + grid.shape:
            raise ContractViolationError(
                f"sampled potential needs shape {(grid.dimension,) + grid.shape}, got {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ContractViolationError("sampled potential contains non-finite values")
        super().__init__(grid.dimension)
        self.grid = grid
        self.values = values
        self._grid_jacobian = self._central_differences()

    def _central_differences(self):
        jac = np.empty((self.dimension,) + self.values.shape)
        for beta, delta in enumerate(self.grid.spacing):
            forward = np.roll(self.values, -1, axis=beta + 1)
            backward = np.roll(self.values, 1, axis=beta + 1)
            jac[:, beta] = (forward - backward) / (2 * delta)
        return jac

    def _interpolate(self, table, q):
        """Periodic multilinear interpolation of table[..., N_0, ..., N_{d-1}] at q"""
        d = self.dimension
        lower = []
        weights = []
        for mu in range(d):
            position = (q[mu] + self.grid.extents[mu] / 2) / self.grid.spacing[mu]
            base = np.floor(position)
            lower.append(base.astype(int))
            weights.append(position - base)
        lead = table.shape[: table.ndim - d]
        result = np.zeros(lead + q.shape[1:])
        for corner in product((0, 1), repeat=d):
            index = tuple(
                np.mod(lower[mu] + corner[mu], self.grid.points[mu]) for mu in range(d)
            )
            weight = np.ones(q.shape[1:])
            for mu in range(d):
                weight = weight * (weights[mu] if corner[mu] else 1 - weights[mu])
            result = result + table[(Ellipsis,) + index] * weight
        return result

    def _components(self, q):
        return self._interpolate(self.values, q)

    def _jacobian(self, q):
        return self._interpolate(self._grid_jacobian, q)

    def sample(self, grid):
        if grid == self.grid:
            return self.values.copy()
        return super().sample(grid)


def zero_potential(dimension):
    return ZeroPotential(dimension)


def constant_potential(components):
    return ConstantPotential(components)


def electric_preset(dimension, field_strength, axis=1):
    return ElectricPreset(dimension, field_strength, axis)


def magnetic_preset(field_strength):
    return MagneticPreset(field_strength)


def wave_preset(amplitude, wavevector, phase=0.0):
    return WavePreset(amplitude, wavevector, phase)


def sampled_potential(grid, values):
    return SampledPotential(grid, values)
