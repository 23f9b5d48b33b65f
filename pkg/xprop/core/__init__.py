from .errors import (
    ConfigError,
    ContractViolationError,
    ConvergenceError,
    DivergenceError,
    GridGuardError,
    GridIndexError,
    InconclusiveOrderError,
    NonFutureDirectedError,
    SnapshotFormatError,
    SuperluminalError,
    UnsupportedBackendError,
    XPropError,
)
from .potential import (
    PotentialField,
    constant_potential,
    electric_preset,
    magnetic_preset,
    sampled_potential,
    wave_preset,
    zero_potential,
)
from .snapshot import read_snapshot, read_snapshot_npz, write_snapshot, write_snapshot_npz
from .spacetime import (
    MetricSignature,
    PhysicalConstants,
    SpacetimeGrid,
    WaveField,
    constant_field,
    gaussian_packet,
    grid_coordinates,
    grid_norm,
    is_on_shell,
    minkowski_contract,
    on_shell_mass,
    plane_wave,
    random_smooth_field,
    relative_distance,
)

__all__ = [
    "ConfigError",
    "ContractViolationError",
    "ConvergenceError",
    "DivergenceError",
    "GridGuardError",
    "GridIndexError",
    "InconclusiveOrderError",
    "NonFutureDirectedError",
    "SnapshotFormatError",
    "SuperluminalError",
    "UnsupportedBackendError",
    "XPropError",
    "PotentialField",
    "constant_potential",
    "electric_preset",
    "magnetic_preset",
    "sampled_potential",
    "wave_preset",
    "zero_potential",
    "read_snapshot",
    "read_snapshot_npz",
    "write_snapshot",
    "write_snapshot_npz",
    "MetricSignature",
    "PhysicalConstants",
    "SpacetimeGrid",
    "WaveField",
    "constant_field",
    "gaussian_packet",
    "grid_coordinates",
    "grid_norm",
    "is_on_shell",
    "minkowski_contract",
    "on_shell_mass",
    "plane_wave",
    "random_smooth_field",
    "relative_distance",
]
