"""
Space-time conventions

Physical constants, the Minkowski metric (-,+,...,+), periodic space-time
grids and the complex wave fields evolved on them. Axis 0 is q^0 = c*t,
stored as a length like every other axis.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from xprop.core.errors import ContractViolationError, GridIndexError

MIN_DIMENSION = 2
MAX_DIMENSION = 4


def _positive(name, value):
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise ContractViolationError(f"{name} must be finite and > 0, got {value}")
    return value


@dataclass(frozen=True)
class PhysicalConstants:
    """Mass m, light speed c, charge zeta and hbar of the particle"""

    mass: float = 1.0
    light_speed: float = 1.0
    charge: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "mass", _positive("mass", self.mass))
        object.__setattr__(self, "light_speed", _positive("light_speed", self.light_speed))
        object.__setattr__(self, "hbar", _positive("hbar", self.hbar))
        charge = float(self.charge)
        if not np.isfinite(charge):
            raise ContractViolationError(f"charge must be finite, got {charge}")
        object.__setattr__(self, "charge", charge)

    @classmethod
    def natural(cls, charge=1.0):
        """m = c = hbar = 1"""
        return cls(mass=1.0, light_speed=1.0, charge=charge, hbar=1.0)

    @property
    def coupling(self):
        """zeta/(hbar*c), the minimal-coupling constant in D_a = d_a - i*coupling*A_a"""
        return self.charge / (self.hbar * self.light_speed)

    @property
    def compton_wavenumber(self):
        """m*c/hbar"""
        return self.mass * self.light_speed / self.hbar

    def as_dict(self):
        return {
            "mass": self.mass,
            "light_speed": self.light_speed,
            "charge": self.charge,
            "hbar": self.hbar,
        }


@dataclass(frozen=True)
class MetricSignature:
    """Diagonal metric diag(-1, +1, ..., +1) in d space-time dimensions"""

    dimension: int

    def __post_init__(self):
        if int(self.dimension) != self.dimension or self.dimension < MIN_DIMENSION:
            raise ContractViolationError(
                f"metric dimension must be an integer >= {MIN_DIMENSION}, got {self.dimension}"
            )
        object.__setattr__(self, "dimension", int(self.dimension))

    @property
    def diagonal(self):
        diag = np.ones(self.dimension)
        diag[0] = -1.0
        return diag

    def contract(self, a, b):
        return minkowski_contract(a, b, self)

    def lower(self, vector):
        """eta_{mu nu} v^nu; the metric is its own inverse so this also raises"""
        vector = np.asarray(vector, dtype=float)
        _check_leading(vector, self.dimension, "vector")
        shape = (self.dimension,) + (1,) * (vector.ndim - 1)
        return vector * self.diagonal.reshape(shape)

    raise_index = lower


def _check_leading(array, dimension, name):
    if array.ndim == 0 or array.shape[0] != dimension:
        raise ContractViolationError(
            f"{name} must have leading length {dimension}, got shape {array.shape}"
        )


def minkowski_contract(a, b, metric=None):
    """Return -a0*b0 + sum_i a_i*b_i.

    a and b carry the space-time index on axis 0; trailing axes broadcast,
    so whole grids of vectors contract at once.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim == 0 or b.ndim == 0:
        raise ContractViolationError("minkowski_contract requires vectors")
    if metric is None:
        metric = MetricSignature(a.shape[0])
    _check_leading(a, metric.dimension, "a")
    _check_leading(b, metric.dimension, "b")
    result = -a[0] * b[0]
    for mu in range(1, metric.dimension):
        result = result + a[mu] * b[mu]
    return result


@dataclass(frozen=True)
class SpacetimeGrid:
    """Uniform periodic grid over d space-time dimensions"""

    points: tuple
    extents: tuple
    periodic: bool = True

    def __post_init__(self):
        points = tuple(int(n) for n in self.points)
        extents = tuple(float(length) for length in self.extents)
        if len(points) != len(extents):
            raise ContractViolationError(
                f"points and extents differ in length: {len(points)} vs {len(extents)}"
            )
        if not MIN_DIMENSION <= len(points) <= MAX_DIMENSION:
            raise ContractViolationError(
                f"grid dimension must be in [{MIN_DIMENSION}, {MAX_DIMENSION}], got {len(points)}"
            )
        if any(n < 2 for n in points):
            raise ContractViolationError(f"every axis needs at least 2 points: {points}")
        if any(not np.isfinite(length) or length <= 0 for length in extents):
            raise ContractViolationError(f"extents must be finite and > 0: {extents}")
        if not self.periodic:
            raise ContractViolationError("only periodic grids are supported")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "extents", extents)

    @property
    def dimension(self):
        return len(self.points)

    @property
    def shape(self):
        return self.points

    @property
    def size(self):
        return int(np.prod(self.points))

    @property
    def spacing(self):
        return tuple(length / n for length, n in zip(self.extents, self.points))

    @property
    def cell_volume(self):
        return float(np.prod(self.spacing))

    @property
    def metric(self):
        return MetricSignature(self.dimension)

    def axis_coordinates(self, axis):
        return -self.extents[axis] / 2 + np.arange(self.points[axis]) * self.spacing[axis]

    def coordinates(self, index):
        return grid_coordinates(self, index)

    def coordinate_mesh(self):
        """Array of shape (d, N_0, ..., N_{d-1}) holding q^mu at every point"""
        axes = [self.axis_coordinates(mu) for mu in range(self.dimension)]
        return np.stack(np.meshgrid(*axes, indexing="ij"))

    def wavenumbers(self):
        """Per-axis angular wavenumbers 2*pi*n/L in FFT order"""
        return [
            2 * np.pi * np.fft.fftfreq(n, d=self.spacing[mu])
            for mu, n in enumerate(self.points)
        ]

    def wavenumber_mesh(self):
        return np.stack(np.meshgrid(*self.wavenumbers(), indexing="ij"))

    def lattice_wavevector(self, modes):
        """k_mu = 2*pi*n_mu/L_mu for integer mode indices n"""
        modes = np.asarray(modes, dtype=float)
        _check_leading(modes, self.dimension, "modes")
        return 2 * np.pi * modes / np.asarray(self.extents)

    def as_dict(self):
        return {"points": list(self.points), "extents": list(self.extents)}


def grid_coordinates(grid, index):
    """q_mu = -L_mu/2 + index_mu * Delta_mu"""
    index = tuple(index)
    if len(index) != grid.dimension:
        raise ContractViolationError(
            f"index has {len(index)} entries, grid has dimension {grid.dimension}"
        )
    for mu, (i, n) in enumerate(zip(index, grid.points)):
        if int(i) != i or not 0 <= i < n:
            raise GridIndexError(f"index {index} out of bounds on axis {mu} (N={n})")
    return np.array(
        [-length / 2 + i * delta for i, length, delta in zip(index, grid.extents, grid.spacing)]
    )


class WaveField:
    """Complex amplitude over a SpacetimeGrid at evolution parameter s"""

    def __init__(self, grid, values, s_current=0.0):
        values = np.array(values, dtype=complex)
        if values.size != grid.size:
            raise ContractViolationError(
                f"field has {values.size} values, grid has {grid.size} points"
            )
        self.grid = grid
        self.values = values.reshape(grid.shape)
        self.s_current = float(s_current)
        self.check_finite()

    def check_finite(self):
        if not np.all(np.isfinite(self.values)):
            raise ContractViolationError("wave field contains non-finite amplitudes")

    def copy(self):
        return WaveField(self.grid, self.values.copy(), self.s_current)

    def evolved(self, values, ds):
        """New field on the same grid with s advanced by ds"""
        return WaveField(self.grid, values, self.s_current + ds)

    def norm(self):
        return grid_norm(self.values, self.grid)

    def __repr__(self):
        return f"WaveField(points={self.grid.points}, s={self.s_current})"


def grid_norm(values, grid):
    """Unweighted grid L2 norm times the cell volume"""
    return float(np.sqrt(np.sum(np.abs(values) ** 2) * grid.cell_volume))


def relative_distance(values, reference, grid):
    ref = grid_norm(reference, grid)
    if ref == 0:
        return grid_norm(values - reference, grid)
    return grid_norm(values - reference, grid) / ref


def constant_field(grid, value=1.0, s_current=0.0):
    return WaveField(grid, np.full(grid.shape, value, dtype=complex), s_current)


def plane_wave(grid, modes, amplitude=1.0, s_current=0.0):
    """exp(i k.q) on the lattice mode with integer indices `modes`"""
    k = grid.lattice_wavevector(modes)
    q = grid.coordinate_mesh()
    phase = np.tensordot(k, q, axes=(0, 0))
    return WaveField(grid, amplitude * np.exp(1j * phase), s_current)


def gaussian_packet(grid, center=None, width=1.0, wavevector=None, s_current=0.0):
    """Separable Gaussian envelope times exp(i k.q)"""
    d = grid.dimension
    center = np.zeros(d) if center is None else np.asarray(center, dtype=float)
    wavevector = np.zeros(d) if wavevector is None else np.asarray(wavevector, dtype=float)
    width = np.broadcast_to(np.asarray(width, dtype=float), (d,))
    _check_leading(center, d, "center")
    _check_leading(wavevector, d, "wavevector")
    if np.any(width <= 0):
        raise ContractViolationError(f"packet widths must be > 0: {width}")
    q = grid.coordinate_mesh()
    shape = (d,) + (1,) * d
    envelope = np.exp(
        -np.sum(((q - center.reshape(shape)) / width.reshape(shape)) ** 2, axis=0) / 2
    )
    phase = np.tensordot(wavevector, q - center.reshape(shape), axes=(0, 0))
    return WaveField(grid, envelope * np.exp(1j * phase), s_current)


def random_smooth_field(grid, rng, max_mode=2, s_current=0.0):
    """Random superposition of the lattice modes |n_mu| <= max_mode.

    Coefficients depend only on the rng stream, d and max_mode, so one seed
    describes the same periodic function on every grid with the same extents.
    """
    d = grid.dimension
    if max_mode < 0 or 2 * max_mode >= min(grid.points):
        raise ContractViolationError(
            f"max_mode {max_mode} is not resolved by grid points {grid.points}"
        )
    modes = list(product(range(-max_mode, max_mode + 1), repeat=d))
    coeffs = rng.normal(size=len(modes)) + 1j * rng.normal(size=len(modes))
    q = grid.coordinate_mesh()
    values = np.zeros(grid.shape, dtype=complex)
    for coeff, n in zip(coeffs, modes):
        damping = np.exp(-0.5 * float(np.dot(n, n)))
        phase = np.tensordot(grid.lattice_wavevector(n), q, axes=(0, 0))
        values += coeff * damping * np.exp(1j * phase)
    return WaveField(grid, values, s_current)


def on_shell_mass(wavevector, constants):
    """Mass for which hbar^2 k.k = -m^2 c^2 (requires k timelike)"""
    kk = minkowski_contract(wavevector, wavevector)
    if kk >= 0:
        raise ContractViolationError(f"wavevector {wavevector} is not timelike")
    return constants.hbar * np.sqrt(-kk) / constants.light_speed


def is_on_shell(wavevector, constants, rtol=1e-12):
    kk = constants.hbar**2 * minkowski_contract(wavevector, wavevector)
    target = -((constants.mass * constants.light_speed) ** 2)
    return abs(kk - target) <= rtol * abs(target)

