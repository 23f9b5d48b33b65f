from .config import CENTRAL, SCHEMES, SPECTRAL, KGOperatorConfig
from .derivatives import CentralDifference, SpectralDerivative, derivative_operator
from .operators import (
    first_order_generator,
    generator_identity_error,
    kg_forms_agreement,
    kg_residual,
    kg_residual_expanded,
)
from .order import (
    DEFAULT_SAMPLING_MARGIN,
    OrderEstimate,
    StationarityReport,
    consistency_residual,
    critical_grid_order_study,
    fit_order,
    stationarity_check,
    step_consistency_order,
)

__all__ = [
    "CENTRAL",
    "CentralDifference",
    "DEFAULT_SAMPLING_MARGIN",
    "KGOperatorConfig",
    "OrderEstimate",
    "SCHEMES",
    "SPECTRAL",
    "SpectralDerivative",
    "StationarityReport",
    "consistency_residual",
    "critical_grid_order_study",
    "derivative_operator",
    "first_order_generator",
    "fit_order",
    "generator_identity_error",
    "kg_forms_agreement",
    "kg_residual",
    "kg_residual_expanded",
    "stationarity_check",
    "step_consistency_order",
]
