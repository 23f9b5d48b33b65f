"""
Proper-time propagator

Single steps psi(s) -> psi(s + eps) of the path-integral kernel on the
periodic grid:

  spectral    exact Gaussian integration for zero/constant potentials, one
              FFT multiplier per step
  quadrature  the literal discrete sum over every displacement xi with the
              potential at the midpoint q - xi/2, for any potential

plus composition, eigenphases and the sampling diagnostics of the quadrature.
"""

import logging
from itertools import product

import numpy as np

from xprop.core.errors import ContractViolationError, GridGuardError
from xprop.core.spacetime import (
    SpacetimeGrid,
    grid_norm,
    minkowski_contract,
    relative_distance,
)
from xprop.kernel.action import step_action
from xprop.kernel.config import QUADRATURE, SPECTRAL
from xprop.kernel.normalization import signature_normalization
from xprop.utils.progress import progress_or_null

logger = logging.getLogger(__name__)


def _check_grid(psi, cfg):
    if psi.grid.dimension != cfg.dimension:
        raise ContractViolationError(
            f"field has dimension {psi.grid.dimension}, potential has {cfg.dimension}"
        )


def _uniform_potential(cfg):
    """A_alpha of a zero/constant potential as a d-vector"""
    return cfg.potential.evaluate(np.zeros(cfg.dimension))


def eigenphase(wavevector, cfg):
    """Spectral-step eigenvalue exp(-i eps [hbar kappa.kappa/(2m) + m c^2/(2 hbar)])

    kappa = k - zeta A/(hbar c); wavevector may carry trailing grid axes.
    """
    k = cfg.constants
    wavevector = np.asarray(wavevector, dtype=float)
    a = _uniform_potential(cfg)
    shape = (cfg.dimension,) + (1,) * (wavevector.ndim - 1)
    kappa = wavevector - k.coupling * a.reshape(shape)
    kinetic = k.hbar * minkowski_contract(kappa, kappa) / (2 * k.mass)
    rest = k.mass * k.light_speed**2 / (2 * k.hbar)
    return np.exp(-1j * cfg.epsilon * (kinetic + rest))


def spectral_multiplier(grid, cfg):
    return eigenphase(grid.wavenumber_mesh(), cfg)


def spectral_step(psi, cfg):
    """One exact step for a zero or constant potential"""
    if cfg.backend != SPECTRAL:
        raise ContractViolationError(f"spectral_step called with backend {cfg.backend!r}")
    _check_grid(psi, cfg)
    values = np.fft.ifftn(spectral_multiplier(psi.grid, cfg) * np.fft.fftn(psi.values))
    return psi.evolved(values, cfg.epsilon)


def sampling_ratio(grid, cfg):
    """max over axes of m L Delta/(2 pi hbar eps); above 1 the kernel phase aliases at the edge"""
    k = cfg.constants
    return max(
        k.mass * length * delta / (2 * np.pi * k.hbar * cfg.epsilon)
        for length, delta in zip(grid.extents, grid.spacing)
    )


def critical_grid(points, epsilon, constants):
    """Grid whose every axis sits at unit sampling ratio: L^2 = 2 pi hbar eps N/m"""
    points = tuple(int(n) for n in points)
    extents = tuple(
        float(np.sqrt(2 * np.pi * constants.hbar * epsilon * n / constants.mass)) for n in points
    )
    return SpacetimeGrid(points, extents)


def _displacement_indices(grid):
    """Displacement multi-indices n_mu in [-N_mu/2, N_mu/2), fixed order"""
    ranges = [range(-(n // 2), n - n // 2) for n in grid.points]
    return product(*ranges)


def quadrature_step(psi, cfg, progress=None):
    """One step by direct summation over every grid displacement"""
    if cfg.backend != QUADRATURE:
        raise ContractViolationError(f"quadrature_step called with backend {cfg.backend!r}")
    _check_grid(psi, cfg)
    grid = psi.grid
    if grid.size > cfg.max_points:
        raise GridGuardError(
            f"quadrature needs {grid.size}^2 kernel evaluations; grid exceeds {cfg.max_points} points"
        )

    ratio = sampling_ratio(grid, cfg)
    if ratio > 1 + 1e-12:
        logger.warning(
            f"Kernel phase is under-sampled at the domain edge (sampling ratio {ratio:.3g} > 1)"
        )

    hbar = cfg.constants.hbar
    spacing = np.asarray(grid.spacing)
    axes = tuple(range(grid.dimension))
    uniform = cfg.potential.is_uniform
    mesh = None if uniform else grid.coordinate_mesh()
    origin = np.zeros(grid.dimension)
    bcast = (grid.dimension,) + (1,) * grid.dimension
    progress = progress_or_null(progress)

    result = np.zeros(grid.shape, dtype=complex)
    for index in _displacement_indices(grid):
        xi = np.asarray(index, dtype=float) * spacing
        shifted = np.roll(psi.values, index, axis=axes)
        if uniform:
            phase = step_action(xi, origin, cfg) / hbar
        else:
            phase = step_action(xi, mesh - xi.reshape(bcast) / 2, cfg) / hbar
        result += np.exp(1j * phase) * shifted
        progress.update()

    weight = grid.cell_volume / signature_normalization(grid.metric, cfg.epsilon, cfg.constants)
    return psi.evolved(result * weight, cfg.epsilon)


_STEPS = {SPECTRAL: spectral_step, QUADRATURE: quadrature_step}


def single_step(psi, cfg):
    return _STEPS[cfg.backend](psi, cfg)


def propagate(psi, cfg, n_steps, progress=None, observer=None):
    """Apply the configured step n_steps times.

    observer(step, field) is called after every step when given.
    """
    if int(n_steps) != n_steps or n_steps < 0:
        raise ContractViolationError(f"n_steps must be an integer >= 0, got {n_steps}")
    progress = progress_or_null(progress)
    step = _STEPS[cfg.backend]
    field = psi.copy()
    logger.info(f"Propagating {n_steps} {cfg.backend} steps of eps={cfg.epsilon}")
    for i in range(int(n_steps)):
        field = step(field, cfg)
        logger.debug(f"step {i + 1}: s={field.s_current} norm={field.norm()}")
        if observer is not None:
            observer(i + 1, field)
        progress.update()
    return field


DIAGNOSTIC_HEADER = ["step", "s", "norm", "norm_drift", "spectral_deviation"]


class StepDiagnostics:
    """Collects per-step rows for the diagnostics CSV.

    spectral_deviation compares the field with the exact spectral evolution
    of the initial field; it is only defined for uniform potentials and is
    NaN otherwise.
    """

    def __init__(self, initial, cfg):
        self.initial = initial
        self.cfg = cfg
        self.initial_norm = initial.norm()
        self.rows = [self._row(0, initial)]
        self._spectrum = np.fft.fftn(initial.values) if cfg.potential.is_uniform else None
        self._multiplier = (
            spectral_multiplier(initial.grid, cfg) if cfg.potential.is_uniform else None
        )

    def _row(self, step, field):
        norm = grid_norm(field.values, field.grid)
        drift = (norm - self.initial_norm) / self.initial_norm if self.initial_norm else 0.0
        return [step, field.s_current, norm, drift, self._deviation(step, field)]

    def _deviation(self, step, field):
        if step == 0:
            return 0.0
        if not self.cfg.potential.is_uniform:
            return float("nan")
        predicted = np.fft.ifftn(self._multiplier**step * self._spectrum)
        return relative_distance(field.values, predicted, field.grid)

    def __call__(self, step, field):
        self.rows.append(self._row(step, field))
