"""
Field tensor

F_{mu nu} = d_mu A_nu - d_nu A_mu built from a potential's Jacobian. Presets
give it exactly; sampled potentials give it by periodic central differences.
"""

import numpy as np

from xprop.core.potential import GRID


class FieldTensor:
    def __init__(self, potential):
        self.potential = potential
        self.dimension = potential.dimension

    @property
    def is_exact(self):
        return self.potential.kind != GRID

    def at(self, q):
        """F[mu, nu] at q, shape (d, d, ...)"""
        jac = self.potential.jacobian(q)
        # jac[alpha, beta] = d_beta A_alpha
        return np.swapaxes(jac, 0, 1) - jac

    def antisymmetry_error(self, q):
        f = self.at(q)
        return float(np.max(np.abs(f + np.swapaxes(f, 0, 1))))

    def describe(self):
        return {"potential": self.potential.describe(), "exact": self.is_exact}
