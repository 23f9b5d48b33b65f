"""
Experiment runner

Drives the library from an ExperimentConfig: each experiment writes its data
files through an OutputManager, records acceptance checks and closes the run
with a manifest. Checks are collected, never fail-fast; a run passes when
every check passes.
"""

import logging
from dataclasses import dataclass, field, replace

import numpy as np

from xprop.classical import (
    ExtendedState,
    FieldTensor,
    cyclotron_reference,
    defect_conservation_report,
    hyperbolic_reference,
    integrate_classical,
    on_shell_state,
    write_trajectory_csv,
)
from xprop.core import (
    ConvergenceError,
    GridGuardError,
    InconclusiveOrderError,
    SpacetimeGrid,
    constant_field,
    constant_potential,
    electric_preset,
    gaussian_packet,
    grid_norm,
    magnetic_preset,
    on_shell_mass,
    plane_wave,
    random_smooth_field,
    wave_preset,
    write_snapshot,
    write_snapshot_npz,
    zero_potential,
)
from xprop.kernel import (
    DIAGNOSTIC_HEADER,
    QUADRATURE,
    SPECTRAL,
    StepConfig,
    StepDiagnostics,
    critical_grid,
    propagate,
    sampling_ratio,
)
from xprop.kg_verify import (
    KGOperatorConfig,
    critical_grid_order_study,
    generator_identity_error,
    kg_forms_agreement,
    kg_residual,
    stationarity_check,
    step_consistency_order,
)
from xprop.oracle import moment_table, normalization_check
from xprop.utils import OutputManager, ProgressReporter, write_csv, write_json

logger = logging.getLogger(__name__)

STATIONARITY_TOLERANCE = 1e-12
RESIDUAL_TOLERANCE = 1e-10
ON_SHELL_MODE = (2, 1)


@dataclass
class Check:
    name: str
    value: float
    threshold: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "name": self.name,
            "value": self.value,
            "threshold": self.threshold,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass
class RunResult:
    experiment: str
    files: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def failures(self):
        return [check for check in self.checks if not check.passed]

    @property
    def passed(self):
        return not self.failures


class ExperimentRunner:
    """Runs one configured experiment into its output directory"""

    def __init__(self, config, quiet=False, show_progress=True):
        self.config = config
        self.quiet = quiet
        self.show_progress = show_progress
        self.output = OutputManager(config.output_dir)

    def progress(self, total, label):
        return ProgressReporter(total, label, quiet=self.quiet, show_progress=self.show_progress)

    def run(self):
        name = self.config.experiment
        logger.info(f"Running experiment {name} into {self.output.root}")
        self.output.ensure_directory(self.output.root)
        try:
            result = _RUNNERS[name](self.config, self)
        finally:
            # files written before a failure still get listed
            self.output.write_manifest()
        for check in result.failures:
            logger.error(f"Check failed: {check.name} = {check.value} (needs {check.threshold})")
        logger.info(
            f"Experiment {name} finished: {len(result.checks)} checks, {len(result.failures)} failed"
        )
        return result

    def write_json(self, name, payload):
        return self.output.register(write_json(self.output.path(name), payload))

    def write_csv(self, name, header, rows):
        return self.output.register(write_csv(self.output.path(name), header, rows))


# classical


def _initial_state(config):
    section = config.classical
    if section.u0 is None:
        return on_shell_state(section.position, section.velocity, config.constants)
    return ExtendedState(0.0, section.position, (section.u0,) + tuple(section.velocity))


def _reference_state(config, potential, initial, s):
    """Closed-form state at s when the configuration has one"""
    constants = config.constants
    if not initial.is_on_shell(constants):
        return None
    kind = config.potential.kind
    if kind in ("zero", "constant"):
        return ExtendedState(s, initial.q + initial.u * s, initial.u)
    if kind == "electric":
        axis = potential.axis
        others = [mu for mu in range(1, initial.dimension) if mu != axis]
        if np.any(initial.u[others] != 0):
            return None
        rapidity = np.arcsinh(initial.u[axis] / constants.light_speed)
        return hyperbolic_reference(
            s,
            constants,
            potential.field_strength,
            q0=initial.q,
            rapidity=rapidity,
            axis=axis,
            dimension=initial.dimension,
        )
    if kind == "magnetic":
        return cyclotron_reference(s, constants, potential.field_strength, initial.u, initial.q)
    return None


def run_classical(config, runner):
    """Trajectory CSV and summary JSON for the classical flow"""
    result = RunResult("classical")
    section = config.classical
    potential = config.potential.build(section.dimension)
    initial = _initial_state(config)

    trajectory = integrate_classical(
        initial,
        FieldTensor(potential),
        config.constants,
        section.s_span,
        section.steps,
        progress=runner.progress(section.steps, "classical"),
    )
    defects = defect_conservation_report(trajectory, potential, config.constants)
    csv_path = write_trajectory_csv(runner.output.path("trajectory.csv"), trajectory, defects)
    result.files.append(runner.output.register(csv_path))

    final = trajectory.final
    summary = {
        "experiment": "classical",
        "potential": potential.describe(),
        "constants": config.constants.as_dict(),
        "steps": section.steps,
        "step_size": trajectory.step,
        "initial_defect": float(defects[0]),
        "final_defect": float(defects[-1]),
        "defect_drift": float(np.max(np.abs(defects - defects[0]))),
        "initial_on_shell": initial.is_on_shell(config.constants),
        "final_constraint": float(final.constraint_defect(config.constants)),
        "final_state": {"s": final.s, "q": final.q.tolist(), "u": final.u.tolist()},
    }

    if _reference_state(config, potential, initial, 0.0) is not None:
        errors = []
        for state in trajectory.states:
            ref = _reference_state(config, potential, initial, state.s)
            errors.append(np.linalg.norm(state.u - ref.u) / np.linalg.norm(ref.u))
        summary["max_u_relative_error"] = float(max(errors))
        summary["reference"] = config.potential.kind
    if config.potential.kind == "magnetic":
        radius = np.hypot(trajectory.u[:, 1], trajectory.u[:, 2])
        if radius[0] > 0:
            summary["transverse_speed_drift"] = float(np.max(np.abs(radius - radius[0])) / radius[0])

    result.summary = summary
    result.files.append(runner.write_json("classical_summary.json", summary))
    logger.info(f"Final defect {defects[-1]:.3e}, drift {summary['defect_drift']:.3e}")
    return result


# propagate


def initial_field(spec, grid, rng):
    if spec.kind == "plane_wave":
        return plane_wave(grid, spec.modes, spec.amplitude)
    if spec.kind == "random":
        field_ = random_smooth_field(grid, rng, spec.max_mode)
        field_.values *= spec.amplitude
        return field_
    if spec.kind == "constant":
        return constant_field(grid, spec.amplitude)
    packet = gaussian_packet(grid, spec.center, spec.width, spec.wavevector)
    packet.values *= spec.amplitude
    return packet


def _snapshot(runner, name, fmt, field_):
    if fmt == "npz":
        path = write_snapshot_npz(runner.output.path(f"{name}.npz"), field_)
    else:
        path = write_snapshot(runner.output.path(f"{name}.xprop"), field_)
    return runner.output.register(path)


def run_propagate(config, runner):
    """Initial/final snapshots and per-step diagnostics of repeated steps"""
    result = RunResult("propagate")
    section = config.propagation
    grid = config.grid
    potential = config.potential.build(grid.dimension)
    step_cfg = StepConfig(section.epsilon, section.backend, config.constants, potential)
    if step_cfg.backend == QUADRATURE and grid.size > step_cfg.max_points:
        raise GridGuardError(f"quadrature grid has {grid.size} points, limit {step_cfg.max_points}")

    rng = np.random.default_rng(config.seed)
    psi = initial_field(section.initial, grid, rng)
    result.files.append(_snapshot(runner, "initial", section.snapshot_format, psi))

    diagnostics = StepDiagnostics(psi, step_cfg)
    final = propagate(
        psi,
        step_cfg,
        section.n_steps,
        progress=runner.progress(section.n_steps, "propagate"),
        observer=diagnostics,
    )
    result.files.append(_snapshot(runner, "final", section.snapshot_format, final))
    result.files.append(runner.write_csv("diagnostics.csv", DIAGNOSTIC_HEADER, diagnostics.rows))

    deviations = [row[4] for row in diagnostics.rows[1:]]
    result.summary = {
        "experiment": "propagate",
        "step": step_cfg.describe(),
        "grid": grid.as_dict(),
        "n_steps": section.n_steps,
        "initial_norm": psi.norm(),
        "final_norm": final.norm(),
        "final_s": final.s_current,
        "sampling_ratio": sampling_ratio(grid, step_cfg),
        "max_spectral_deviation": max(deviations) if deviations else 0.0,
        "norm": "grid L2 sum times cell volume",
    }
    result.files.append(runner.write_json("propagate_summary.json", result.summary))
    return result


# kg-suite


def _suite_potentials(grid, amplitude):
    """Every potential kind the 1+1 suite exercises"""
    fundamental = grid.lattice_wavevector([1, 1])
    return {
        "zero": zero_potential(2),
        "constant": constant_potential([0.3, -0.2]),
        "electric": electric_preset(2, 0.5),
        "wave": wave_preset([amplitude, 2 * amplitude], fundamental),
    }


def _magnetic_case():
    grid = SpacetimeGrid((8, 8, 8, 8), (8.0, 8.0, 8.0, 8.0))
    return grid, magnetic_preset(0.5)


def _at_most(name, value, tolerance, detail=None):
    return Check(name, value, f"<= {tolerance}", bool(value <= tolerance), detail or {})


def _identity_checks(config, rng):
    suite = config.kg_suite
    potentials = _suite_potentials(config.grid, suite.wave_amplitude)
    cases = [(name, config.grid, potential) for name, potential in potentials.items()]
    grid4, magnetic = _magnetic_case()
    cases.append(("magnetic", grid4, magnetic))

    checks = []
    for name, grid, potential in cases:
        cfg = KGOperatorConfig(config.constants, potential, grid)
        max_mode = 1 if grid.dimension == 4 else 2
        forms = []
        identity = []
        for _ in range(suite.random_fields):
            psi = random_smooth_field(grid, rng, max_mode=max_mode)
            forms.append(kg_forms_agreement(psi, cfg))
            identity.append(generator_identity_error(psi, cfg))
        checks.append(_at_most(f"kg_forms_agreement[{name}]", max(forms), suite.forms_tolerance))
        checks.append(
            _at_most(f"generator_identity[{name}]", max(identity), suite.identity_tolerance)
        )
    return checks


def _on_shell_constants(config):
    """Constants whose mass puts the lattice mode ON_SHELL_MODE on shell"""
    k = config.grid.lattice_wavevector(ON_SHELL_MODE)
    return replace(config.constants, mass=on_shell_mass(k, config.constants))


def _residual_checks(config):
    grid = config.grid
    wave = plane_wave(grid, ON_SHELL_MODE)
    cfg = KGOperatorConfig(_on_shell_constants(config), zero_potential(2), grid)
    residual = grid_norm(kg_residual(wave, cfg).values, grid) / wave.norm()

    # box of a constant vanishes, leaving -(mc/hbar)^2 psi
    flat = constant_field(grid)
    flat_cfg = KGOperatorConfig(config.constants, zero_potential(2), grid)
    expected = -config.constants.compton_wavenumber**2 * flat.values
    deviation = grid_norm(kg_residual(flat, flat_cfg).values - expected, grid) / flat.norm()
    return [
        _at_most("kg_residual[on_shell_plane_wave]", residual, RESIDUAL_TOLERANCE),
        _at_most("kg_residual[constant_field]", deviation, RESIDUAL_TOLERANCE),
    ]


def _order_check(name, study, low, high, reports):
    threshold = f"in [{low}, {high}]"
    try:
        estimate = study()
    except (InconclusiveOrderError, ConvergenceError) as e:
        reports.append(
            {
                "test": name,
                "error": str(e),
                "eps_list": getattr(e, "eps_list", None),
                "residuals": getattr(e, "residuals", None),
            }
        )
        return Check(name, float("nan"), threshold, False, {"error": str(e)})
    reports.append(estimate.as_report(name))
    return Check(name, estimate.slope, threshold, bool(low <= estimate.slope <= high))


def _spectral_order_checks(config, reports):
    suite = config.kg_suite
    packet = gaussian_packet(config.grid, width=suite.packet_width)
    low = suite.slope_target - suite.slope_window
    high = suite.slope_target + suite.slope_window
    checks = []
    for name, potential in (
        ("zero", zero_potential(2)),
        ("constant", constant_potential([0.3, -0.2])),
    ):
        cfg = KGOperatorConfig(config.constants, potential, config.grid)
        step_cfg = StepConfig(suite.eps_list[0], SPECTRAL, config.constants, potential)

        def study(cfg=cfg, step_cfg=step_cfg):
            return step_consistency_order(packet, cfg, step_cfg, suite.eps_list)

        checks.append(
            _order_check(f"step_consistency_order[spectral,{name}]", study, low, high, reports)
        )
    return checks


def _quadrature_order_check(config, rng, reports):
    suite = config.kg_suite
    base = (suite.quadrature_points, suite.quadrature_points)
    coarse = critical_grid(base, suite.eps_list[0], config.constants)
    # pure-gauge A_1 on the fundamental mode of the fixed extent
    potential = wave_preset([0.0, suite.wave_amplitude], [0.0, 2 * np.pi / coarse.extents[1]])
    cfg = KGOperatorConfig(config.constants, potential, coarse)
    step_cfg = StepConfig(suite.eps_list[0], QUADRATURE, config.constants, potential)
    seed = int(rng.integers(2**32))

    def field_factory(grid):
        return random_smooth_field(grid, np.random.default_rng(seed), max_mode=1)

    def study():
        return critical_grid_order_study(field_factory, cfg, step_cfg, suite.eps_list, base)

    name = "step_consistency_order[quadrature,wave]"
    return [_order_check(name, study, suite.quadrature_slope_min, float("inf"), reports)]


def _stationarity_checks(config, reports):
    constants = _on_shell_constants(config)
    potential = zero_potential(2)
    cfg = KGOperatorConfig(constants, potential, config.grid)
    step_cfg = StepConfig(config.kg_suite.eps_list[0], SPECTRAL, constants, potential)
    report = stationarity_check(plane_wave(config.grid, ON_SHELL_MODE), cfg, step_cfg, 10)
    name = "stationarity[on_shell_plane_wave]"
    reports.append({"test": name, **report.as_dict()})
    return [_at_most(name, report.max_deviation, STATIONARITY_TOLERANCE)]


def _moment_checks(config, tolerance, reports, epsilons=(1.0,), dimensions=(2,), potential=(0.0, 0.0)):
    checks = []
    for d in dimensions:
        for epsilon in epsilons:
            label = f"d={d},eps={epsilon}"
            try:
                table = moment_table(epsilon, config.constants, potential[:d])
                norm = normalization_check(d, epsilon, config.constants)
            except ConvergenceError as e:
                reports.append({"test": f"moments[{label}]", "error": str(e), "estimates": e.estimates})
                checks.append(
                    Check(f"moments[{label}]", float("nan"), f"<= {tolerance}", False, {"error": str(e)})
                )
                continue
            reports.append({"test": f"moments[{label}]", **table.as_dict()})
            reports.append({"test": f"normalization[{label}]", **norm})
            checks.append(_at_most(f"moments[{label}]", table.max_error, tolerance))
            worst = max(norm["relative_error"], norm["magnitude_error"])
            checks.append(_at_most(f"normalization[{label}]", worst, tolerance))
    return checks


def run_kg_suite(config, runner):
    """Residual spot checks, generator identity, order studies, stationarity and moments"""
    result = RunResult("kg-suite")
    rng = np.random.default_rng(config.seed)
    reports = []
    phases = [
        ("kg residual spot checks", lambda: _residual_checks(config)),
        ("product/expanded forms and generator identity", lambda: _identity_checks(config, rng)),
        ("spectral order studies", lambda: _spectral_order_checks(config, reports)),
        ("quadrature order study", lambda: _quadrature_order_check(config, rng, reports)),
        ("stationarity", lambda: _stationarity_checks(config, reports)),
        ("moment table", lambda: _moment_checks(config, config.kg_suite.moment_tolerance, reports)),
    ]
    progress = runner.progress(len(phases), "kg-suite")
    for label, phase in phases:
        logger.info(f"kg-suite: {label}")
        result.checks.extend(phase())
        progress.update()

    result.summary = {
        "experiment": "kg-suite",
        "grid": config.grid.as_dict(),
        "constants": config.constants.as_dict(),
        "seed": config.seed,
        "passed": result.passed,
        "checks": [check.as_dict() for check in result.checks],
        "reports": reports,
        "norm": "grid L2 sum times cell volume",
    }
    result.files.append(runner.write_json("kg_suite.json", result.summary))
    return result


# moments


def run_moments(config, runner):
    """Moment tables with oracle cross-checks for every configured d and eps"""
    result = RunResult("moments")
    section = config.moments
    reports = []
    result.checks = _moment_checks(
        config,
        section.tolerance,
        reports,
        epsilons=section.epsilons,
        dimensions=section.dimensions,
        potential=section.potential,
    )
    result.summary = {
        "experiment": "moments",
        "constants": config.constants.as_dict(),
        "passed": result.passed,
        "checks": [check.as_dict() for check in result.checks],
        "tables": reports,
    }
    result.files.append(runner.write_json("moments.json", result.summary))
    return result


_RUNNERS = {
    "classical": run_classical,
    "propagate": run_propagate,
    "kg-suite": run_kg_suite,
    "moments": run_moments,
}


def run_experiment(config, quiet=False, show_progress=True):
    return ExperimentRunner(config, quiet=quiet, show_progress=show_progress).run()
