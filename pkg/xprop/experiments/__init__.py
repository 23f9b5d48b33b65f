from .config import (
    EXPERIMENTS,
    ClassicalSection,
    ExperimentConfig,
    InitialFieldSpec,
    KGSuiteSection,
    MomentsSection,
    PotentialSpec,
    PropagationSection,
)
from .runner import (
    Check,
    ExperimentRunner,
    RunResult,
    initial_field,
    run_classical,
    run_experiment,
    run_kg_suite,
    run_moments,
    run_propagate,
)

__all__ = [
    "Check",
    "ClassicalSection",
    "EXPERIMENTS",
    "ExperimentConfig",
    "ExperimentRunner",
    "InitialFieldSpec",
    "KGSuiteSection",
    "MomentsSection",
    "PotentialSpec",
    "PropagationSection",
    "RunResult",
    "initial_field",
    "run_classical",
    "run_experiment",
    "run_kg_suite",
    "run_moments",
    "run_propagate",
]
