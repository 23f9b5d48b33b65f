from .field_tensor import FieldTensor
from .integrator import (
    METHODS,
    RK4,
    Trajectory,
    cyclotron_reference,
    defect_conservation_report,
    el_rhs,
    hyperbolic_reference,
    integrate_classical,
    read_trajectory_csv,
    write_trajectory_csv,
)
from .lagrangian import (
    DEFAULT_ONSHELL_TOL,
    ExtendedState,
    canonical_momentum,
    conventional_lagrangian,
    conventional_momentum,
    el_rhs_finite_difference,
    extended_lagrangian,
    homogeneity_defect,
    lab_velocity,
    numerical_homogeneity_defect,
    on_shell_state,
    projected_lagrangian,
    proper_time_rate,
    time_reparametrization_residual,
    trivial_extended_lagrangian,
    velocity_gradient,
)

__all__ = [
    "DEFAULT_ONSHELL_TOL",
    "ExtendedState",
    "FieldTensor",
    "METHODS",
    "RK4",
    "Trajectory",
    "canonical_momentum",
    "conventional_lagrangian",
    "conventional_momentum",
    "cyclotron_reference",
    "defect_conservation_report",
    "el_rhs",
    "el_rhs_finite_difference",
    "extended_lagrangian",
    "homogeneity_defect",
    "hyperbolic_reference",
    "integrate_classical",
    "lab_velocity",
    "numerical_homogeneity_defect",
    "on_shell_state",
    "projected_lagrangian",
    "proper_time_rate",
    "read_trajectory_csv",
    "time_reparametrization_residual",
    "trivial_extended_lagrangian",
    "velocity_gradient",
    "write_trajectory_csv",
]
