"""
Derivative operators

Periodic derivatives of complex grid fields along one axis: spectral
(multiplication by i k in Fourier space, Nyquist mode kept) and second-order
central differences.
"""

import numpy as np

from xprop.kg_verify.config import CENTRAL, SPECTRAL


class SpectralDerivative:
    def __init__(self, grid):
        self.grid = grid
        self._wavenumbers = grid.wavenumbers()

    def _multiply(self, values, axis, factor):
        shape = [1] * values.ndim
        shape[axis] = self.grid.points[axis]
        spectrum = np.fft.fft(values, axis=axis)
        return np.fft.ifft(factor.reshape(shape) * spectrum, axis=axis)

    def derivative(self, values, axis):
        return self._multiply(values, axis, 1j * self._wavenumbers[axis])

    def second_derivative(self, values, axis):
        return self._multiply(values, axis, -self._wavenumbers[axis] ** 2)


class CentralDifference:
    def __init__(self, grid):
        self.grid = grid

    def derivative(self, values, axis):
        delta = self.grid.spacing[axis]
        return (np.roll(values, -1, axis=axis) - np.roll(values, 1, axis=axis)) / (2 * delta)

    def second_derivative(self, values, axis):
        delta = self.grid.spacing[axis]
        forward = np.roll(values, -1, axis=axis)
        backward = np.roll(values, 1, axis=axis)
        return (forward - 2 * values + backward) / delta**2


_OPERATORS = {SPECTRAL: SpectralDerivative, CENTRAL: CentralDifference}


def derivative_operator(scheme, grid):
    return _OPERATORS[scheme](grid)
