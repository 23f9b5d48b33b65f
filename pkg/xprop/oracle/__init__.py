from .fresnel import (
    MIN_SAMPLES,
    MomentSpec,
    axis_signs,
    damped_fresnel_moment,
    damped_moment,
    richardson_extrapolate,
)
from .moments import (
    MomentEntry,
    MomentTable,
    analytic_first_moment,
    analytic_second_moment,
    analytic_zeroth_moment,
    moment_table,
    normalization_check,
)

__all__ = [
    "MIN_SAMPLES",
    "MomentEntry",
    "MomentSpec",
    "MomentTable",
    "analytic_first_moment",
    "analytic_second_moment",
    "analytic_zeroth_moment",
    "axis_signs",
    "damped_fresnel_moment",
    "damped_moment",
    "moment_table",
    "normalization_check",
    "richardson_extrapolate",
]
