"""
Order studies

First-order consistency of the proper-time step with the Klein-Gordon
generator, measured as the log-log slope of

    r(eps) = ||step(psi) - psi - eps G[psi]|| / ||psi||

over a decreasing eps sequence, and the stationarity check of repeated steps.
"""

import logging
from dataclasses import dataclass, field, replace

import numpy as np

from xprop.core.errors import ContractViolationError, InconclusiveOrderError
from xprop.core.spacetime import grid_norm
from xprop.kernel.config import QUADRATURE
from xprop.kernel.propagator import critical_grid, sampling_ratio, single_step
from xprop.kg_verify.operators import first_order_generator, kg_residual

logger = logging.getLogger(__name__)

DEFAULT_SAMPLING_MARGIN = 4.0


@dataclass
class OrderEstimate:
    slope: float
    intercept: float
    eps_list: list
    residuals: list
    grids: list = field(default_factory=list)

    def as_report(self, test, grid=None, constants=None):
        return {
            "test": test,
            "grid": grid,
            "constants": constants,
            "eps_list": list(self.eps_list),
            "residuals": list(self.residuals),
            "slope": self.slope,
            "grids": list(self.grids),
        }


def consistency_residual(psi, cfg, step_cfg):
    """||step(psi) - psi - eps G[psi]|| / ||psi|| for eps = step_cfg.epsilon"""
    stepped = single_step(psi, step_cfg)
    generator = first_order_generator(psi, cfg)
    remainder = stepped.values - psi.values - step_cfg.epsilon * generator.values
    return grid_norm(remainder, psi.grid) / grid_norm(psi.values, psi.grid)


def fit_order(eps_list, residuals):
    """Least-squares slope and intercept of log r against log eps"""
    eps = np.asarray(eps_list, dtype=float)
    res = np.asarray(residuals, dtype=float)
    if np.any(res <= 0) or not np.all(np.isfinite(res)):
        raise InconclusiveOrderError(
            "residuals must be finite and > 0 for a log-log fit",
            eps_list=list(eps_list),
            residuals=list(residuals),
        )
    slope, intercept = np.polyfit(np.log(eps), np.log(res), 1)
    return float(slope), float(intercept)


def _check_eps_list(eps_list):
    eps = [float(e) for e in eps_list]
    if len(eps) < 3:
        raise ContractViolationError(f"an order study needs at least 3 eps values, got {len(eps)}")
    if any(e <= 0 for e in eps) or any(b >= a for a, b in zip(eps, eps[1:])):
        raise ContractViolationError(f"eps values must be positive and decreasing: {eps}")
    return eps


def _estimate(eps, residuals, grids=None):
    if any(b >= a for a, b in zip(residuals, residuals[1:])):
        raise InconclusiveOrderError(
            f"residuals do not decrease with eps: {residuals}",
            eps_list=eps,
            residuals=residuals,
        )
    slope, intercept = fit_order(eps, residuals)
    logger.info(f"Order study slope {slope:.3f} over eps {eps}")
    return OrderEstimate(slope, intercept, eps, residuals, grids or [])


def step_consistency_order(
    psi, cfg, step_cfg, eps_list, sampling_margin=DEFAULT_SAMPLING_MARGIN
):
    """Slope of the consistency residual over eps_list on a fixed grid"""
    eps = _check_eps_list(eps_list)
    residuals = []
    for epsilon in eps:
        current = replace(step_cfg, epsilon=epsilon)
        if current.backend == QUADRATURE:
            ratio = sampling_ratio(psi.grid, current)
            if ratio * sampling_margin > 1 + 1e-12:
                logger.warning(
                    f"eps={epsilon}: sampling ratio {ratio:.3g} misses the margin {sampling_margin}"
                )
        residuals.append(consistency_residual(psi, cfg, current))
        logger.debug(f"eps={epsilon} residual={residuals[-1]:.3e}")
    return _estimate(eps, residuals)


def critical_grid_order_study(field_factory, cfg, step_cfg, eps_list, base_points):
    """Quadrature order study with every grid at unit sampling ratio.

    The point count scales as eps_list[0]/eps from base_points so the extents
    stay fixed; field_factory(grid) supplies the same continuum field on
    every grid.
    """
    eps = _check_eps_list(eps_list)
    residuals = []
    grids = []
    for epsilon in eps:
        scale = eps[0] / epsilon
        points = tuple(int(round(n * scale)) for n in base_points)
        grid = critical_grid(points, epsilon, cfg.constants)
        psi = field_factory(grid)
        current = replace(step_cfg, epsilon=epsilon)
        residuals.append(consistency_residual(psi, cfg.on(grid), current))
        grids.append(grid.as_dict())
        logger.debug(f"eps={epsilon} points={points} residual={residuals[-1]:.3e}")
    return _estimate(eps, residuals, grids)


@dataclass
class StationarityReport:
    deviations: list
    kg_residual_norm: float
    first_order_prediction: float

    @property
    def max_deviation(self):
        return max(self.deviations) if self.deviations else 0.0

    @property
    def deviation_growth(self):
        return self.deviations[-1] - self.deviations[0] if self.deviations else 0.0

    def as_dict(self):
        return {
            "deviations": list(self.deviations),
            "max_deviation": self.max_deviation,
            "deviation_growth": self.deviation_growth,
            "kg_residual_norm": self.kg_residual_norm,
            "first_order_prediction": self.first_order_prediction,
        }


def stationarity_check(psi, cfg, step_cfg, n_steps):
    """Per-step deviation ||step(psi_n) - psi_n|| / ||psi_n|| over n_steps steps.

    The relative KG residual norm and the first-order prediction eps ||G psi||/||psi||
    are reported alongside; stationary fields have both at zero.
    """
    if int(n_steps) != n_steps or n_steps < 0:
        raise ContractViolationError(f"n_steps must be an integer >= 0, got {n_steps}")
    norm = grid_norm(psi.values, psi.grid)
    residual = grid_norm(kg_residual(psi, cfg).values, psi.grid) / norm
    prediction = step_cfg.epsilon * grid_norm(first_order_generator(psi, cfg).values, psi.grid) / norm

    deviations = []
    current = psi
    for _ in range(int(n_steps)):
        stepped = single_step(current, step_cfg)
        deviations.append(
            grid_norm(stepped.values - current.values, psi.grid)
            / grid_norm(current.values, psi.grid)
        )
        current = stepped
    return StationarityReport(deviations, residual, prediction)
