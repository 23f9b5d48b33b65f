"""
Klein-Gordon operator configuration
"""

from dataclasses import dataclass

from xprop.core.errors import ContractViolationError
from xprop.core.spacetime import PhysicalConstants, SpacetimeGrid

SPECTRAL = "spectral"
CENTRAL = "central"
SCHEMES = (SPECTRAL, CENTRAL)


@dataclass(frozen=True)
class KGOperatorConfig:
    constants: PhysicalConstants
    potential: object
    grid: SpacetimeGrid
    scheme: str = SPECTRAL

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ContractViolationError(f"unknown derivative scheme {self.scheme!r}; known: {SCHEMES}")
        if self.potential.dimension != self.grid.dimension:
            raise ContractViolationError(
                f"potential has dimension {self.potential.dimension}, grid has {self.grid.dimension}"
            )
        if self.scheme == SPECTRAL and not self.grid.periodic:
            raise ContractViolationError("spectral derivatives need a periodic grid")

    def on(self, grid):
        """Same operator on another grid"""
        return KGOperatorConfig(self.constants, self.potential, grid, self.scheme)

    def describe(self):
        return {
            "constants": self.constants.as_dict(),
            "potential": self.potential.describe(),
            "grid": self.grid.as_dict(),
            "scheme": self.scheme,
        }
