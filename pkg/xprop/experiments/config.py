"""
Experiment configuration

One YAML file with nested sections describes every experiment. The whole
file is validated up front; the first problem is reported as a ConfigError
carrying the dotted path of the offending field.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from xprop.core.errors import ConfigError, XPropError
from xprop.core.potential import (
    constant_potential,
    electric_preset,
    magnetic_preset,
    wave_preset,
    zero_potential,
)
from xprop.core.spacetime import PhysicalConstants, SpacetimeGrid
from xprop.kernel.config import BACKENDS, SPECTRAL

logger = logging.getLogger(__name__)

EXPERIMENTS = ("classical", "propagate", "kg-suite", "moments")
POTENTIAL_KINDS = ("zero", "constant", "electric", "magnetic", "wave")
INITIAL_KINDS = ("plane_wave", "gaussian", "random", "constant")
SNAPSHOT_FORMATS = ("text", "npz")
MAX_SEED = 2**64 - 1


def _section(mapping, key, path):
    value = mapping.get(key)
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise ConfigError(_join(path, key), "expected a mapping")
    return value


def _join(path, key):
    return f"{path}.{key}" if path else str(key)


def _number(mapping, key, path, default=None, positive=False, integer=False, minimum=None):
    value = mapping.get(key, default)
    where = _join(path, key)
    if value is None:
        raise ConfigError(where, "is required")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(where, f"expected a number, got {value!r}")
    if integer:
        if int(value) != value:
            raise ConfigError(where, f"expected an integer, got {value!r}")
        value = int(value)
    else:
        value = float(value)
        if not np.isfinite(value):
            raise ConfigError(where, f"must be finite, got {value!r}")
    if positive and value <= 0:
        raise ConfigError(where, f"must be > 0, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(where, f"must be >= {minimum}, got {value!r}")
    return value


def _vector(mapping, key, path, default=None, length=None, integer=False, positive=False):
    value = mapping.get(key, default)
    where = _join(path, key)
    if value is None:
        raise ConfigError(where, "is required")
    if not isinstance(value, (list, tuple)):
        raise ConfigError(where, f"expected a list, got {value!r}")
    if length is not None and len(value) != length:
        raise ConfigError(where, f"expected {length} entries, got {len(value)}")
    return [_item(item, f"{where}[{i}]", integer, positive) for i, item in enumerate(value)]


def _item(value, where, integer, positive):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(where, f"expected a number, got {value!r}")
    if integer and int(value) != value:
        raise ConfigError(where, f"expected an integer, got {value!r}")
    value = int(value) if integer else float(value)
    if not np.isfinite(value):
        raise ConfigError(where, f"must be finite, got {value!r}")
    if positive and value <= 0:
        raise ConfigError(where, f"must be > 0, got {value!r}")
    return value


def _choice(mapping, key, path, choices, default=None):
    value = mapping.get(key, default)
    if value not in choices:
        raise ConfigError(_join(path, key), f"expected one of {list(choices)}, got {value!r}")
    return value


@dataclass(frozen=True)
class PotentialSpec:
    """Potential block; the dimension is supplied by the experiment using it"""

    kind: str = "zero"
    components: tuple = ()
    field_strength: float = 0.0
    axis: int = 1
    amplitude: tuple = ()
    wavevector: tuple = ()
    phase: float = 0.0

    @classmethod
    def from_mapping(cls, mapping, path="potential"):
        kind = _choice(mapping, "kind", path, POTENTIAL_KINDS, default="zero")
        if kind == "constant":
            return cls(kind, components=tuple(_vector(mapping, "components", path)))
        if kind == "electric":
            return cls(
                kind,
                field_strength=_number(mapping, "field", path),
                axis=_number(mapping, "axis", path, default=1, integer=True, minimum=1),
            )
        if kind == "magnetic":
            return cls(kind, field_strength=_number(mapping, "field", path))
        if kind == "wave":
            amplitude = _vector(mapping, "amplitude", path)
            wavevector = _vector(mapping, "wavevector", path, length=len(amplitude))
            return cls(
                kind,
                amplitude=tuple(amplitude),
                wavevector=tuple(wavevector),
                phase=_number(mapping, "phase", path, default=0.0),
            )
        return cls(kind)

    def check_dimension(self, dimension, path="potential"):
        if self.kind == "constant" and len(self.components) != dimension:
            raise ConfigError(
                _join(path, "components"), f"expected {dimension} entries, got {len(self.components)}"
            )
        if self.kind == "wave" and len(self.amplitude) != dimension:
            raise ConfigError(
                _join(path, "amplitude"), f"expected {dimension} entries, got {len(self.amplitude)}"
            )
        if self.kind == "electric" and self.axis >= dimension:
            raise ConfigError(_join(path, "axis"), f"must be a spatial axis below {dimension}")
        if self.kind == "magnetic" and dimension != 4:
            raise ConfigError(_join(path, "kind"), "the magnetic preset needs dimension 4")

    def build(self, dimension):
        self.check_dimension(dimension)
        if self.kind == "constant":
            return constant_potential(self.components)
        if self.kind == "electric":
            return electric_preset(dimension, self.field_strength, self.axis)
        if self.kind == "magnetic":
            return magnetic_preset(self.field_strength)
        if self.kind == "wave":
            return wave_preset(self.amplitude, self.wavevector, self.phase)
        return zero_potential(dimension)


@dataclass(frozen=True)
class ClassicalSection:
    dimension: int = 2
    s_span: float = 2.0
    steps: int = 2000
    position: tuple = ()
    velocity: tuple = ()
    u0: float = None

    @classmethod
    def from_mapping(cls, mapping, path="classical"):
        dimension = _number(mapping, "dimension", path, default=2, integer=True, minimum=2)
        if dimension > 4:
            raise ConfigError(_join(path, "dimension"), f"must be <= 4, got {dimension}")
        position = _vector(mapping, "position", path, default=[0.0] * dimension, length=dimension)
        velocity = _vector(
            mapping, "velocity", path, default=[0.0] * (dimension - 1), length=dimension - 1
        )
        u0 = mapping.get("u0")
        if u0 is not None:
            u0 = _number(mapping, "u0", path, positive=True)
        return cls(
            dimension=dimension,
            s_span=_number(mapping, "s_span", path, default=2.0, positive=True),
            steps=_number(mapping, "steps", path, default=2000, integer=True, minimum=1),
            position=tuple(position),
            velocity=tuple(velocity),
            u0=u0,
        )


@dataclass(frozen=True)
class InitialFieldSpec:
    kind: str = "gaussian"
    modes: tuple = None
    center: tuple = None
    width: float = 1.5
    wavevector: tuple = None
    max_mode: int = 2
    amplitude: float = 1.0

    @classmethod
    def from_mapping(cls, mapping, dimension, path="propagation.initial"):
        kind = _choice(mapping, "kind", path, INITIAL_KINDS, default="gaussian")
        modes = center = wavevector = None
        if kind == "plane_wave":
            modes = tuple(_vector(mapping, "modes", path, length=dimension, integer=True))
        if kind == "gaussian":
            center = tuple(_vector(mapping, "center", path, default=[0.0] * dimension, length=dimension))
            wavevector = tuple(
                _vector(mapping, "wavevector", path, default=[0.0] * dimension, length=dimension)
            )
        return cls(
            kind=kind,
            modes=modes,
            center=center,
            width=_number(mapping, "width", path, default=1.5, positive=True),
            wavevector=wavevector,
            max_mode=_number(mapping, "max_mode", path, default=2, integer=True, minimum=0),
            amplitude=_number(mapping, "amplitude", path, default=1.0),
        )


@dataclass(frozen=True)
class PropagationSection:
    epsilon: float = 0.1
    backend: str = SPECTRAL
    n_steps: int = 10
    snapshot_format: str = "text"
    initial: InitialFieldSpec = field(default_factory=InitialFieldSpec)

    @classmethod
    def from_mapping(cls, mapping, dimension, path="propagation"):
        return cls(
            epsilon=_number(mapping, "epsilon", path, default=0.1, positive=True),
            backend=_choice(mapping, "backend", path, BACKENDS, default=SPECTRAL),
            n_steps=_number(mapping, "n_steps", path, default=10, integer=True, minimum=0),
            snapshot_format=_choice(mapping, "snapshot_format", path, SNAPSHOT_FORMATS, default="text"),
            initial=InitialFieldSpec.from_mapping(
                _section(mapping, "initial", path), dimension, _join(path, "initial")
            ),
        )


@dataclass(frozen=True)
class KGSuiteSection:
    eps_list: tuple = (0.2, 0.1, 0.05, 0.025)
    packet_width: float = 1.5
    random_fields: int = 5
    wave_amplitude: float = 0.1
    quadrature_points: int = 8
    forms_tolerance: float = 1e-10
    identity_tolerance: float = 1e-10
    slope_target: float = 2.0
    slope_window: float = 0.2
    quadrature_slope_min: float = 1.8
    moment_tolerance: float = 1e-6

    @classmethod
    def from_mapping(cls, mapping, path="kg_suite"):
        eps_list = _vector(mapping, "eps_list", path, default=list(cls.eps_list), positive=True)
        if len(eps_list) < 3:
            raise ConfigError(_join(path, "eps_list"), "needs at least 3 values")
        if any(b >= a for a, b in zip(eps_list, eps_list[1:])):
            raise ConfigError(_join(path, "eps_list"), "values must be decreasing")
        tolerances = _section(mapping, "tolerances", path)
        tpath = _join(path, "tolerances")
        return cls(
            eps_list=tuple(eps_list),
            packet_width=_number(mapping, "packet_width", path, default=1.5, positive=True),
            random_fields=_number(mapping, "random_fields", path, default=5, integer=True, minimum=1),
            wave_amplitude=_number(mapping, "wave_amplitude", path, default=0.1),
            quadrature_points=_number(
                mapping, "quadrature_points", path, default=8, integer=True, minimum=4
            ),
            forms_tolerance=_number(tolerances, "forms", tpath, default=1e-10, positive=True),
            identity_tolerance=_number(tolerances, "identity", tpath, default=1e-10, positive=True),
            slope_target=_number(tolerances, "slope_target", tpath, default=2.0, positive=True),
            slope_window=_number(tolerances, "slope_window", tpath, default=0.2, positive=True),
            quadrature_slope_min=_number(
                tolerances, "quadrature_slope_min", tpath, default=1.8, positive=True
            ),
            moment_tolerance=_number(tolerances, "moments", tpath, default=1e-6, positive=True),
        )


@dataclass(frozen=True)
class MomentsSection:
    epsilons: tuple = (0.5, 1.0)
    dimensions: tuple = (1, 2)
    potential: tuple = ()
    tolerance: float = 1e-6

    @classmethod
    def from_mapping(cls, mapping, path="moments"):
        epsilons = _vector(mapping, "epsilon", path, default=list(cls.epsilons), positive=True)
        dimensions = _vector(mapping, "dimensions", path, default=list(cls.dimensions), integer=True)
        for i, d in enumerate(dimensions):
            if d not in (1, 2):
                raise ConfigError(f"{_join(path, 'dimensions')}[{i}]", f"must be 1 or 2, got {d}")
        potential = mapping.get("potential")
        if potential is not None:
            potential = _vector(mapping, "potential", path, length=2)
        return cls(
            epsilons=tuple(epsilons),
            dimensions=tuple(dimensions),
            potential=tuple(potential or (0.0, 0.0)),
            tolerance=_number(mapping, "tolerance", path, default=1e-6, positive=True),
        )


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    seed: int
    constants: PhysicalConstants
    grid: SpacetimeGrid
    potential: PotentialSpec
    classical: ClassicalSection
    propagation: PropagationSection
    kg_suite: KGSuiteSection
    moments: MomentsSection
    output_dir: Path
    source: Path = None

    @classmethod
    def from_file(cls, path, experiment=None):
        path = Path(path)
        try:
            with open(path, "r", encoding="utf-8") as handle:
                mapping = yaml.safe_load(handle)
        except FileNotFoundError:
            raise ConfigError("", f"configuration file {path} not found")
        except yaml.YAMLError as e:
            raise ConfigError("", f"{path} is not valid YAML: {e}")
        config = cls.from_mapping(mapping or {}, experiment)
        logger.info(f"Loaded configuration {path} (experiment {config.experiment})")
        return cls(**{**config.__dict__, "source": path})

    @classmethod
    def from_mapping(cls, mapping, experiment=None):
        """Build and validate a configuration.

        `experiment` replaces the file's own `experiment` key; the cross-section
        checks run for whichever experiment is selected.
        """
        if not isinstance(mapping, dict):
            raise ConfigError("", "top level must be a mapping")
        experiment = experiment or _choice(
            mapping, "experiment", "", EXPERIMENTS, default="kg-suite"
        )
        if experiment not in EXPERIMENTS:
            raise ConfigError("experiment", f"unknown experiment {experiment!r}")
        seed = _number(mapping, "seed", "", default=0, integer=True, minimum=0)
        if seed > MAX_SEED:
            raise ConfigError("seed", f"must fit in 64 bits, got {seed}")

        try:
            constants = _constants(_section(mapping, "constants", ""))
            grid = _grid(_section(mapping, "grid", ""))
            potential = PotentialSpec.from_mapping(_section(mapping, "potential", ""))
            classical = ClassicalSection.from_mapping(_section(mapping, "classical", ""))
            propagation = PropagationSection.from_mapping(
                _section(mapping, "propagation", ""), grid.dimension
            )
            kg_suite = KGSuiteSection.from_mapping(_section(mapping, "kg_suite", ""))
            moments = MomentsSection.from_mapping(_section(mapping, "moments", ""))
        except ConfigError:
            raise
        except XPropError as e:
            raise ConfigError("", str(e))

        output = _section(mapping, "output", "")
        output_dir = output.get("dir", "results")
        if not isinstance(output_dir, str) or not output_dir:
            raise ConfigError("output.dir", f"expected a directory name, got {output_dir!r}")

        config = cls(
            experiment=experiment,
            seed=seed,
            constants=constants,
            grid=grid,
            potential=potential,
            classical=classical,
            propagation=propagation,
            kg_suite=kg_suite,
            moments=moments,
            output_dir=Path(output_dir),
        )
        config.check_experiment(experiment)
        return config

    def check_experiment(self, experiment):
        """Cross-section checks for the blocks `experiment` uses"""
        if experiment == "classical":
            if self.potential.kind == "wave":
                raise ConfigError("potential.kind", "classical runs need a zero, constant or field preset")
            self.potential.check_dimension(self.classical.dimension)
        elif experiment == "propagate":
            self.potential.check_dimension(self.grid.dimension)
            if self.propagation.backend == SPECTRAL and self.potential.kind not in ("zero", "constant"):
                raise ConfigError(
                    "propagation.backend",
                    f"the spectral backend needs a zero or constant potential, got {self.potential.kind}",
                )
            initial = self.propagation.initial
            if initial.kind == "random" and 2 * initial.max_mode >= min(self.grid.points):
                raise ConfigError("propagation.initial.max_mode", "is not resolved by the grid")
        elif experiment == "kg-suite":
            if len(self.grid.points) != 2:
                raise ConfigError("grid.points", "the kg-suite runs on a 1+1 grid")

    def with_overrides(self, output_dir=None, seed=None):
        values = dict(self.__dict__)
        if output_dir is not None:
            values["output_dir"] = Path(output_dir)
        if seed is not None:
            if not 0 <= int(seed) <= MAX_SEED:
                raise ConfigError("seed", f"must be an unsigned 64-bit integer, got {seed}")
            values["seed"] = int(seed)
        return ExperimentConfig(**values)

    def describe(self):
        return {
            "experiment": self.experiment,
            "seed": self.seed,
            "constants": self.constants.as_dict(),
            "grid": self.grid.as_dict(),
            "potential": {"kind": self.potential.kind},
        }


def _constants(mapping, path="constants"):
    return PhysicalConstants(
        mass=_number(mapping, "mass", path, default=1.0, positive=True),
        light_speed=_number(mapping, "light_speed", path, default=1.0, positive=True),
        charge=_number(mapping, "charge", path, default=1.0),
        hbar=_number(mapping, "hbar", path, default=1.0, positive=True),
    )


def _grid(mapping, path="grid"):
    points = _vector(mapping, "points", path, default=[64, 64], integer=True)
    if not 2 <= len(points) <= 4:
        raise ConfigError(_join(path, "points"), f"expected 2 to 4 axes, got {len(points)}")
    for i, n in enumerate(points):
        if n < 2:
            raise ConfigError(f"{path}.points[{i}]", f"must be >= 2, got {n}")
    extents = _vector(
        mapping, "extents", path, default=[20.0] * len(points), length=len(points), positive=True
    )
    return SpacetimeGrid(tuple(points), tuple(extents))
