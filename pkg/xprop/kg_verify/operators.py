"""
Klein-Gordon operators

The minimally coupled Klein-Gordon residual D^a D_a psi - (mc/hbar)^2 psi,
D_a = d_a - i g A_a with g = zeta/(hbar c), in product and expanded form, and
the first-order generator G of the proper-time step assembled from its five
linear-in-eps terms. G = (i hbar/2m) times the residual is an operator
identity; generator_identity_error measures it on a given field.
"""

import logging

import numpy as np

from xprop.core.errors import ContractViolationError
from xprop.core.spacetime import WaveField, minkowski_contract
from xprop.kg_verify.derivatives import derivative_operator

logger = logging.getLogger(__name__)


def _check_field(psi, cfg):
    if psi.grid != cfg.grid:
        raise ContractViolationError(
            f"field lives on {psi.grid.as_dict()}, operator on {cfg.grid.as_dict()}"
        )


def _potential_on_grid(cfg):
    mesh = cfg.grid.coordinate_mesh()
    return cfg.potential.evaluate(mesh), cfg.potential.divergence(mesh)


def kg_residual(psi, cfg):
    """Product form sum_a eta^{aa} D_a(D_a psi) - (mc/hbar)^2 psi"""
    _check_field(psi, cfg)
    ops = derivative_operator(cfg.scheme, cfg.grid)
    g = cfg.constants.coupling
    a, _ = _potential_on_grid(cfg)
    diag = cfg.grid.metric.diagonal
    values = psi.values
    total = np.zeros_like(values)
    for alpha in range(cfg.grid.dimension):
        inner = ops.derivative(values, alpha) - 1j * g * a[alpha] * values
        outer = ops.derivative(inner, alpha) - 1j * g * a[alpha] * inner
        total += diag[alpha] * outer
    total -= cfg.constants.compton_wavenumber**2 * values
    return WaveField(cfg.grid, total, psi.s_current)


def _expanded_terms(psi, cfg):
    """Box psi, A.A, A^a d_a psi and d_a A^a on the grid"""
    ops = derivative_operator(cfg.scheme, cfg.grid)
    a, divergence = _potential_on_grid(cfg)
    diag = cfg.grid.metric.diagonal
    values = psi.values
    box = np.zeros_like(values)
    transport = np.zeros_like(values)
    for alpha in range(cfg.grid.dimension):
        box += diag[alpha] * ops.second_derivative(values, alpha)
        transport += diag[alpha] * a[alpha] * ops.derivative(values, alpha)
    return box, minkowski_contract(a, a), transport, divergence


def kg_residual_expanded(psi, cfg):
    """Box psi - g^2 A.A psi - 2 i g A^a d_a psi - i g (d_a A^a) psi - (mc/hbar)^2 psi"""
    _check_field(psi, cfg)
    g = cfg.constants.coupling
    box, a_squared, transport, divergence = _expanded_terms(psi, cfg)
    values = psi.values
    total = (
        box
        - g**2 * a_squared * values
        - 2j * g * transport
        - 1j * g * divergence * values
        - cfg.constants.compton_wavenumber**2 * values
    )
    return WaveField(cfg.grid, total, psi.s_current)


def first_order_generator(psi, cfg):
    """G[psi] such that step(psi) = psi + eps G[psi] + O(eps^2)"""
    _check_field(psi, cfg)
    k = cfg.constants
    m, c, hbar, zeta = k.mass, k.light_speed, k.hbar, k.charge
    box, a_squared, transport, divergence = _expanded_terms(psi, cfg)
    values = psi.values
    rest = -1j * m * c**2 / (2 * hbar) * values
    potential_energy = -1j * zeta**2 / (2 * hbar * m * c**2) * a_squared * values
    drift = zeta / (m * c) * transport
    kinetic = 1j * hbar / (2 * m) * box
    gauge = 1j * hbar / (2 * m) * (-1j * zeta / (hbar * c)) * divergence * values
    return WaveField(cfg.grid, rest + potential_energy + drift + kinetic + gauge, psi.s_current)


def _relative_max(values, reference):
    scale = float(np.max(np.abs(reference)))
    error = float(np.max(np.abs(values - reference)))
    return error / scale if scale > 0 else error


def kg_forms_agreement(psi, cfg):
    """max |product - expanded| relative to max |product|"""
    product_form = kg_residual(psi, cfg).values
    expanded_form = kg_residual_expanded(psi, cfg).values
    return _relative_max(expanded_form, product_form)


def generator_identity_error(psi, cfg):
    """max |G - (i hbar/2m) residual| relative to max |G|"""
    k = cfg.constants
    generator = first_order_generator(psi, cfg).values
    scaled = 1j * k.hbar / (2 * k.mass) * kg_residual(psi, cfg).values
    error = _relative_max(scaled, generator)
    logger.debug(f"generator identity error {error:.3e}")
    return error
