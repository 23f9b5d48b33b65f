#!/usr/bin/env python3
"""
Integration tests for xprop
Classical flows against closed forms, kernel backends against each other,
Klein-Gordon identities and order studies, and the Fresnel oracle against
the analytic moments
"""

import unittest

import numpy as np

from xprop.classical import (
    FieldTensor,
    cyclotron_reference,
    defect_conservation_report,
    extended_lagrangian,
    homogeneity_defect,
    hyperbolic_reference,
    integrate_classical,
    on_shell_state,
    projected_lagrangian,
)
from xprop.classical.lagrangian import ExtendedState
from xprop.core import (
    PhysicalConstants,
    SpacetimeGrid,
    WaveField,
    constant_potential,
    electric_preset,
    gaussian_packet,
    magnetic_preset,
    on_shell_mass,
    plane_wave,
    random_smooth_field,
    relative_distance,
    wave_preset,
    zero_potential,
)
from xprop.kernel import (
    QUADRATURE,
    SPECTRAL,
    StepConfig,
    critical_grid,
    quadrature_step,
    spectral_step,
)
from xprop.kg_verify import (
    KGOperatorConfig,
    critical_grid_order_study,
    generator_identity_error,
    kg_forms_agreement,
    stationarity_check,
    step_consistency_order,
)
from xprop.oracle import moment_table, normalization_check

NATURAL = PhysicalConstants.natural()
EPS_LIST = [0.2, 0.1, 0.05, 0.025]


def _max_relative_error(trajectory, reference):
    return float(np.max(np.abs(trajectory.final.u - reference.u)) / np.max(np.abs(reference.u)))


class TestHyperbolicMotion(unittest.TestCase):
    def setUp(self):
        self.tensor = FieldTensor(electric_preset(2, 1.0))
        self.initial = ExtendedState(0.0, [0.0, 0.0], [1.0, 0.0])

    def test_matches_closed_form(self):
        """Test rk4 against u = (cosh s, sinh s) at s = 2 with 2000 steps"""
        trajectory = integrate_classical(self.initial, self.tensor, NATURAL, 2.0, 2000)
        reference = hyperbolic_reference(2.0, NATURAL, 1.0)
        self.assertLess(_max_relative_error(trajectory, reference), 1e-8)
        np.testing.assert_allclose(trajectory.final.q, reference.q, atol=1e-8)
        self.assertLess(abs(trajectory.final.constraint_defect(NATURAL)), 1e-9)

    def test_fourth_order_convergence(self):
        """Test that halving the step cuts the velocity error by about 16"""
        reference = hyperbolic_reference(2.0, NATURAL, 1.0)
        errors = [
            _max_relative_error(
                integrate_classical(self.initial, self.tensor, NATURAL, 2.0, steps), reference
            )
            for steps in (20, 40, 80)
        ]
        for coarse, fine in zip(errors, errors[1:]):
            self.assertGreater(coarse / fine, 12.0)
            self.assertLess(coarse / fine, 20.0)

    def test_constraint_drift_is_fifth_order(self):
        """Test that the mass-shell drift shrinks by about 32 per halving"""
        drifts = [
            abs(
                integrate_classical(self.initial, self.tensor, NATURAL, 2.0, steps)
                .final.constraint_defect(NATURAL)
            )
            for steps in (20, 40)
        ]
        ratio = drifts[0] / drifts[1]
        self.assertGreater(ratio, 24.0)
        self.assertLess(ratio, 40.0)


class TestDefectConservation(unittest.TestCase):
    def test_off_shell_defect_is_constant(self):
        """Test that an off-shell start keeps its defect along the flow"""
        potential = electric_preset(2, 1.0)
        initial = ExtendedState(0.0, [0.0, 0.0], [1.2, 0.3])
        trajectory = integrate_classical(initial, FieldTensor(potential), NATURAL, 2.0, 2000)
        defects = defect_conservation_report(trajectory, potential, NATURAL)
        self.assertAlmostEqual(defects[0], 0.175, places=12)
        self.assertLess(float(np.max(np.abs(defects - defects[0]))), 1e-9)

    def test_free_on_shell_defect_stays_zero(self):
        """Test a zero defect along a free on-shell trajectory"""
        potential = zero_potential(2)
        initial = on_shell_state([0.0, 0.0], [0.3], NATURAL)
        trajectory = integrate_classical(initial, FieldTensor(potential), NATURAL, 1.0, 50)
        defects = defect_conservation_report(trajectory, potential, NATURAL)
        self.assertLess(float(np.max(np.abs(defects))), 1e-14)
        np.testing.assert_allclose(trajectory.u, np.tile(initial.u, (51, 1)), atol=1e-15)

    def test_homogeneity_and_projection_along_trajectory(self):
        """Test the defect and L_e = L u^0/c at every state of a charged orbit"""
        constants = PhysicalConstants(mass=1.3, light_speed=1.7, charge=0.6)
        potential = electric_preset(2, 0.8)
        initial = on_shell_state([0.0, 0.5], [0.4], constants)
        trajectory = integrate_classical(initial, FieldTensor(potential), constants, 1.5, 600)
        for state in trajectory.states[::50]:
            extended = extended_lagrangian(state, potential, constants)
            projected = projected_lagrangian(state, potential, constants)
            projected *= state.u[0] / constants.light_speed
            self.assertLess(abs(extended - projected), 1e-8 * max(1.0, abs(extended)))
            self.assertLess(abs(homogeneity_defect(state, potential, constants)), 1e-8)


class TestCyclotronMotion(unittest.TestCase):
    def test_matches_closed_form(self):
        """Test the magnetic orbit against the closed-form rotation"""
        initial = on_shell_state(np.zeros(4), [0.5, 0.3, 0.1], NATURAL)
        trajectory = integrate_classical(
            initial, FieldTensor(magnetic_preset(1.0)), NATURAL, 10.0, 1000
        )
        reference = cyclotron_reference(10.0, NATURAL, 1.0, initial.u)
        np.testing.assert_allclose(trajectory.final.u, reference.u, atol=1e-8)
        np.testing.assert_allclose(trajectory.final.q, reference.q, atol=1e-7)

        transverse = np.hypot(trajectory.u[:, 1], trajectory.u[:, 2])
        self.assertLess(float(np.max(np.abs(transverse - transverse[0]))), 1e-8)
        np.testing.assert_allclose(trajectory.u[:, 0], initial.u[0], atol=1e-14)
        np.testing.assert_allclose(trajectory.u[:, 3], initial.u[3], atol=1e-14)


class TestBackendAgreement(unittest.TestCase):
    def test_quadrature_matches_spectral_on_critical_grid(self):
        """Test that the direct sum equals the spectral step at unit sampling ratio"""
        grid = critical_grid((16, 16), 0.1, NATURAL)
        psi = random_smooth_field(grid, np.random.default_rng(21))
        potential = zero_potential(2)
        spectral = spectral_step(psi, StepConfig(0.1, SPECTRAL, NATURAL, potential))
        quadrature = quadrature_step(psi, StepConfig(0.1, QUADRATURE, NATURAL, potential))
        self.assertLess(relative_distance(quadrature.values, spectral.values, grid), 1e-10)

    def test_quadrature_matches_spectral_for_lattice_potential(self):
        """Test agreement for a constant potential with zeta A L/(hbar c) on the lattice"""
        grid = critical_grid((16, 16), 0.1, NATURAL)
        psi = random_smooth_field(grid, np.random.default_rng(22))
        potential = constant_potential(grid.lattice_wavevector((1, 1)) / NATURAL.coupling)
        spectral = spectral_step(psi, StepConfig(0.1, SPECTRAL, NATURAL, potential))
        quadrature = quadrature_step(psi, StepConfig(0.1, QUADRATURE, NATURAL, potential))
        self.assertLess(relative_distance(quadrature.values, spectral.values, grid), 1e-10)


class TestKleinGordonIdentities(unittest.TestCase):
    def setUp(self):
        self.grid = SpacetimeGrid((16, 16), (6.0, 6.0))
        self.potentials = [
            zero_potential(2),
            constant_potential([0.3, -0.2]),
            electric_preset(2, 0.5),
            wave_preset([0.1, 0.1], self.grid.lattice_wavevector((1, 1))),
        ]

    def test_generator_identity(self):
        """Test G = (i hbar/2m) x residual for random fields and every 2D potential"""
        rng = np.random.default_rng(31)
        constants = PhysicalConstants(mass=1.2, charge=0.7, hbar=0.9, light_speed=1.1)
        for potential in self.potentials:
            cfg = KGOperatorConfig(constants, potential, self.grid)
            for _ in range(20):
                psi = random_smooth_field(self.grid, rng)
                self.assertLess(generator_identity_error(psi, cfg), 1e-10)

    def test_forms_agree(self):
        """Test product and expanded residual forms on random fields"""
        rng = np.random.default_rng(32)
        for potential in self.potentials:
            cfg = KGOperatorConfig(NATURAL, potential, self.grid)
            for _ in range(20):
                psi = random_smooth_field(self.grid, rng)
                self.assertLess(kg_forms_agreement(psi, cfg), 1e-10)

    def test_magnetic_identities(self):
        """Test both identities for the magnetic preset on a 3+1 grid"""
        grid = SpacetimeGrid((8, 8, 8, 8), (8.0, 8.0, 8.0, 8.0))
        cfg = KGOperatorConfig(NATURAL, magnetic_preset(0.5), grid)
        rng = np.random.default_rng(33)
        for _ in range(3):
            psi = random_smooth_field(grid, rng, max_mode=1)
            self.assertLess(generator_identity_error(psi, cfg), 1e-10)
            self.assertLess(kg_forms_agreement(psi, cfg), 1e-10)


class TestOrderStudies(unittest.TestCase):
    def setUp(self):
        self.grid = SpacetimeGrid((64, 64), (20.0, 20.0))
        self.packet = gaussian_packet(self.grid, width=1.5)

    def test_spectral_order(self):
        """Test a local consistency order of 2 for zero and constant potentials"""
        for potential in (zero_potential(2), constant_potential([0.3, -0.2])):
            cfg = KGOperatorConfig(NATURAL, potential, self.grid)
            step_cfg = StepConfig(0.2, SPECTRAL, NATURAL, potential)
            estimate = step_consistency_order(self.packet, cfg, step_cfg, EPS_LIST)
            self.assertGreater(estimate.slope, 1.8)
            self.assertLess(estimate.slope, 2.2)
            self.assertEqual(estimate.eps_list, EPS_LIST)

    def test_order_invariant_under_phase_and_scale(self):
        """Test that a global phase and amplitude leave the slope unchanged"""
        cfg = KGOperatorConfig(NATURAL, zero_potential(2), self.grid)
        step_cfg = StepConfig(0.2, SPECTRAL, NATURAL, zero_potential(2))
        scaled = WaveField(self.grid, 2.5 * np.exp(0.3j) * self.packet.values)
        plain = step_consistency_order(self.packet, cfg, step_cfg, EPS_LIST)
        rescaled = step_consistency_order(scaled, cfg, step_cfg, EPS_LIST)
        self.assertAlmostEqual(plain.slope, rescaled.slope, places=10)

    def test_quadrature_order_with_varying_potential(self):
        """Test the quadrature consistency order on critical grids for a varying potential"""
        base = critical_grid((8, 8), 0.2, NATURAL)
        length = base.extents[1]
        potential = wave_preset([0.0, 0.1], [0.0, 2 * np.pi / length])
        cfg = KGOperatorConfig(NATURAL, potential, base)
        step_cfg = StepConfig(0.2, QUADRATURE, NATURAL, potential)

        def field_factory(grid):
            return random_smooth_field(grid, np.random.default_rng(7), max_mode=1)

        estimate = critical_grid_order_study(field_factory, cfg, step_cfg, EPS_LIST, (8, 8))
        self.assertGreaterEqual(estimate.slope, 1.8)
        self.assertEqual(len(estimate.grids), 4)
        self.assertEqual(estimate.grids[-1]["points"], [64, 64])


class TestStationarity(unittest.TestCase):
    def setUp(self):
        self.grid = SpacetimeGrid((128, 128), (20.0, 20.0))
        k = self.grid.lattice_wavevector((2, 1))
        self.constants = PhysicalConstants(mass=on_shell_mass(k, NATURAL))

    def test_on_shell_plane_wave(self):
        """Test zero deviation over 100 steps for an on-shell plane wave"""
        wave = plane_wave(self.grid, (2, 1))
        cfg = KGOperatorConfig(self.constants, zero_potential(2), self.grid)
        step_cfg = StepConfig(0.1, SPECTRAL, self.constants, zero_potential(2))
        report = stationarity_check(wave, cfg, step_cfg, 100)
        self.assertEqual(len(report.deviations), 100)
        self.assertLess(report.max_deviation, 1e-12)
        self.assertLess(report.kg_residual_norm, 1e-10)

    def test_on_shell_superposition(self):
        """Test stationarity of a superposition of two on-shell modes"""
        values = plane_wave(self.grid, (2, 1)).values + 0.5 * plane_wave(self.grid, (-2, 1)).values
        cfg = KGOperatorConfig(self.constants, zero_potential(2), self.grid)
        step_cfg = StepConfig(0.1, SPECTRAL, self.constants, zero_potential(2))
        report = stationarity_check(WaveField(self.grid, values), cfg, step_cfg, 10)
        self.assertLess(report.max_deviation, 1e-12)

    def test_off_shell_eigenphase(self):
        """Test that an off-shell wave deviates by |exp(-i eps lambda) - 1| every step"""
        wave = plane_wave(self.grid, (1, 2))
        cfg = KGOperatorConfig(NATURAL, zero_potential(2), self.grid)
        step_cfg = StepConfig(0.1, SPECTRAL, NATURAL, zero_potential(2))
        k = self.grid.lattice_wavevector((1, 2))
        energy = 0.5 * (-k[0] ** 2 + k[1] ** 2) + 0.5
        report = stationarity_check(wave, cfg, step_cfg, 5)
        expected = abs(np.exp(-0.1j * energy) - 1)
        np.testing.assert_allclose(report.deviations, expected, atol=1e-12)
        self.assertAlmostEqual(report.deviation_growth, 0.0, places=12)


class TestFresnelOracle(unittest.TestCase):
    def test_normalization(self):
        """Test the oracle zeroth moment against both normalization formulas"""
        for dimension in (1, 2):
            for epsilon in (0.5, 1.0):
                check = normalization_check(dimension, epsilon, NATURAL)
                self.assertLess(check["relative_error"], 1e-6)
                self.assertLess(check["magnitude_error"], 1e-6)

    def test_free_second_moments(self):
        """Test <xi^1 xi^1> = i eps and <xi^0 xi^0> = -i eps in natural units"""
        table = moment_table(1.0, NATURAL, [0.0, 0.0])
        self.assertLess(abs(table.entry(2, (1, 1)).oracle - 1j), 1e-6)
        self.assertLess(abs(table.entry(2, (0, 0)).oracle + 1j), 1e-6)
        self.assertLess(abs(table.entry(2, (0, 1)).oracle), 1e-6)
        self.assertLess(table.max_error, 1e-6)

    def test_moments_with_constant_potential(self):
        """Test every tabulated moment with a constant potential in d = 1 and 2"""
        constants = PhysicalConstants(mass=1.5, charge=0.8)
        for a_const in ([0.3], [0.2, 0.1]):
            table = moment_table(0.5, constants, a_const)
            self.assertEqual(table.dimension, len(a_const))
            self.assertLess(table.max_error, 1e-6)


if __name__ == "__main__":
    unittest.main()
