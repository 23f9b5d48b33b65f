"""
Moment table

Analytic zeroth, first and second Gaussian moments of the proper-time kernel
for a constant potential, each checked against the damped Fresnel oracle.
Moments of order 1 and 2 are normalized by the zeroth moment:

    <xi^a>      = -eps zeta A^a/(m c)
    <xi^a xi^b> = <xi^a><xi^b> + (i hbar eps/m) eta^{ab}

and the zeroth moment is the signature normalization times
exp(-i eps zeta^2 A^a A_a/(2 hbar m c^2)).
"""

import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from xprop.core.errors import ContractViolationError
from xprop.kernel.normalization import axis_normalization, normalization_M
from xprop.oracle.fresnel import MomentSpec, axis_signs, damped_fresnel_moment

logger = logging.getLogger(__name__)


@dataclass
class MomentEntry:
    order: int
    indices: tuple
    analytic: complex
    oracle: complex

    @property
    def error(self):
        difference = abs(self.oracle - self.analytic)
        scale = abs(self.analytic)
        return difference / scale if scale > 0 else difference

    def as_dict(self):
        return {
            "order": self.order,
            "indices": list(self.indices),
            "analytic": self.analytic,
            "oracle": self.oracle,
            "relative_error": self.error,
        }


@dataclass
class MomentTable:
    dimension: int
    epsilon: float
    potential: list
    entries: list

    def entry(self, order, indices=()):
        for entry in self.entries:
            if entry.order == order and tuple(entry.indices) == tuple(indices):
                return entry
        raise KeyError((order, tuple(indices)))

    @property
    def max_error(self):
        return max(entry.error for entry in self.entries)

    def as_dict(self):
        return {
            "dimension": self.dimension,
            "epsilon": self.epsilon,
            "potential": list(self.potential),
            "max_error": self.max_error,
            "entries": [entry.as_dict() for entry in self.entries],
        }


def _raised(a_const, signs):
    return np.asarray(signs, dtype=float) * a_const


def analytic_zeroth_moment(epsilon, constants, a_const, signs):
    """Product of axis normalizations times the potential prefactor"""
    value = 1.0 + 0j
    for sign in signs:
        value *= axis_normalization(sign, epsilon, constants)
    a_squared = float(np.dot(_raised(a_const, signs), a_const))
    zeta, hbar, m, c = constants.charge, constants.hbar, constants.mass, constants.light_speed
    return value * np.exp(-1j * epsilon * zeta**2 * a_squared / (2 * hbar * m * c**2))


def analytic_first_moment(epsilon, constants, a_const, signs):
    """<xi^a> for every axis"""
    scale = epsilon * constants.charge / (constants.mass * constants.light_speed)
    return -scale * _raised(a_const, signs)


def analytic_second_moment(epsilon, constants, a_const, signs, alpha, beta):
    first = analytic_first_moment(epsilon, constants, a_const, signs)
    value = complex(first[alpha] * first[beta])
    if alpha == beta:
        value += 1j * constants.hbar * epsilon * signs[alpha] / constants.mass
    return value


def moment_table(epsilon, constants, a_const, tolerance=1e-7):
    """Zeroth, first and second moments for d = len(a_const) in {1, 2}"""
    a_const = np.asarray(a_const, dtype=float)
    if a_const.ndim != 1 or a_const.size not in (1, 2):
        raise ContractViolationError(f"moment tables support d = 1 or 2, got A = {a_const}")
    d = a_const.size
    signs = axis_signs(d)
    source = tuple((constants.charge / constants.light_speed) * a_const)
    logger.info(f"Moment table d={d} eps={epsilon} A={a_const.tolist()}")

    zeroth_spec = MomentSpec(d, source=source, tolerance=tolerance)
    zeroth_oracle = damped_fresnel_moment(zeroth_spec, epsilon, constants)
    entries = [
        MomentEntry(0, (), analytic_zeroth_moment(epsilon, constants, a_const, signs), zeroth_oracle)
    ]

    first = analytic_first_moment(epsilon, constants, a_const, signs)
    for alpha in range(d):
        spec = MomentSpec(d, order=1, indices=(alpha,), source=source, tolerance=tolerance)
        raw = damped_fresnel_moment(spec, epsilon, constants, scale=abs(zeroth_oracle))
        entries.append(MomentEntry(1, (alpha,), complex(first[alpha]), raw / zeroth_oracle))

    for alpha, beta in combinations_with_replacement(range(d), 2):
        spec = MomentSpec(d, order=2, indices=(alpha, beta), source=source, tolerance=tolerance)
        raw = damped_fresnel_moment(spec, epsilon, constants, scale=abs(zeroth_oracle))
        analytic = analytic_second_moment(epsilon, constants, a_const, signs, alpha, beta)
        entries.append(MomentEntry(2, (alpha, beta), analytic, raw / zeroth_oracle))

    return MomentTable(d, float(epsilon), a_const.tolist(), entries)


def normalization_check(dimension, epsilon, constants, tolerance=1e-7):
    """Oracle zeroth moment against the per-axis factors and |normalization_M|"""
    spec = MomentSpec(dimension, tolerance=tolerance)
    oracle = damped_fresnel_moment(spec, epsilon, constants)
    analytic = analytic_zeroth_moment(epsilon, constants, np.zeros(dimension), axis_signs(dimension))
    closed_form = normalization_M(dimension, epsilon, constants)
    return {
        "dimension": dimension,
        "epsilon": epsilon,
        "oracle": oracle,
        "signature_normalization": analytic,
        "normalization_M": closed_form,
        "relative_error": abs(oracle - analytic) / abs(analytic),
        "magnitude_error": abs(abs(oracle) - abs(closed_form)) / abs(closed_form),
    }
