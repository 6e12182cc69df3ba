"""Trust inference and calibration over candidate agent task models.

The toolkit computes a supervisor's probability that an agent meets a task
contract from a weighted ensemble of candidate task models, evolves that
belief from behavior, explanations, and outcomes, derives accept/reject
reliance decisions, quantifies over- and under-trust, and replays the
positive/negative belief-update study on simulated cohorts.
"""

from .belief import (
    BehaviorObservation,
    ExplanationObservation,
    Observation,
    OutcomeObservation,
    RationalityParams,
    observation_likelihood,
    posterior_update,
)
from .engine import (
    Contract,
    LikelihoodKernel,
    ModelEnsemble,
    TrustAssessment,
    TrustMeasureConfig,
    boltzmann,
    contract_probability,
    derive_contract,
    hard_threshold,
    kernel_probability,
    soft_threshold,
    trust_measure,
    uniform_ensemble,
)
from .errors import (
    ContractDerivationError,
    ContradictionError,
    DegenerateTestError,
    ResourceExhaustedError,
    TrustkitError,
    UnknownSessionError,
    ValidationError,
)
from .planning import (
    Action,
    PlanningModel,
    PlanResult,
    TraceEvaluation,
    evaluate_trace,
    make_action,
    make_model,
    optimal_plan,
)
from .reliance import (
    CalibrationReport,
    RelianceDecision,
    UtilityProfile,
    calibration_report,
    ground_truth_probability,
    reliance_decision,
    select_explanation,
)
from .scenario import Scenario, load_fixture, load_scenario, load_scenario_file, resolve_scenario
from .simhuman import CohortConfig, SimulatedHuman, TrustReport, report_trust, sample_cohort, step
from .stats import TestResult, paired_t, student_t_cdf, welch_t
from .study import StudyConfig, StudySummary, SubjectRecord, default_messages, run_study

__version__ = "0.1.0"

__all__ = [
    "Action",
    "BehaviorObservation",
    "CalibrationReport",
    "CohortConfig",
    "Contract",
    "ContractDerivationError",
    "ContradictionError",
    "DegenerateTestError",
    "ExplanationObservation",
    "LikelihoodKernel",
    "ModelEnsemble",
    "Observation",
    "OutcomeObservation",
    "PlanResult",
    "PlanningModel",
    "RationalityParams",
    "RelianceDecision",
    "ResourceExhaustedError",
    "Scenario",
    "SimulatedHuman",
    "StudyConfig",
    "StudySummary",
    "SubjectRecord",
    "TestResult",
    "TraceEvaluation",
    "TrustAssessment",
    "TrustMeasureConfig",
    "TrustReport",
    "TrustkitError",
    "UnknownSessionError",
    "UtilityProfile",
    "ValidationError",
    "boltzmann",
    "calibration_report",
    "contract_probability",
    "default_messages",
    "derive_contract",
    "evaluate_trace",
    "ground_truth_probability",
    "hard_threshold",
    "kernel_probability",
    "load_fixture",
    "load_scenario",
    "load_scenario_file",
    "make_action",
    "make_model",
    "observation_likelihood",
    "optimal_plan",
    "paired_t",
    "posterior_update",
    "reliance_decision",
    "report_trust",
    "resolve_scenario",
    "run_study",
    "sample_cohort",
    "select_explanation",
    "soft_threshold",
    "step",
    "student_t_cdf",
    "trust_measure",
    "uniform_ensemble",
    "welch_t",
]
